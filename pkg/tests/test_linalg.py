import numpy as np
from hypothesis import given, strategies as st

from lcd_agc import linalg
from lcd_agc.gf import create_field
from lcd_agc.linalg import Matrix

FIELDS = [create_field(2, 1), create_field(2, 4), create_field(3, 2, (2, 2, 1)), create_field(5, 1)]


@st.composite
def matrices(draw, max_r=6, max_c=8):
    F = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(1, max_r))
    c = draw(st.integers(1, max_c))
    data = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
    return Matrix(F, np.array(data, dtype=np.int64).reshape(r, c))


@given(matrices())
def test_rank_nullity(M):
    K = linalg.kernel_basis(M)
    assert K.nrows + linalg.rank(M) == M.ncols
    if K.nrows:
        assert not np.any(linalg.matmul(M, linalg.transpose(K)).data)


@given(matrices())
def test_rref_preserves_row_space(M):
    R, rk, piv = linalg.rref(M)
    assert linalg.row_space_equal(Matrix(M.field, R.data[:rk]), M)
    assert len(piv) == rk


@given(matrices())
def test_parity_check_roundtrip(M):
    H = linalg.kernel_basis(M)
    back = linalg.kernel_basis(H) if H.nrows else linalg.identity(M.field, M.ncols)
    assert linalg.row_space_equal(back, M)


@given(matrices(max_r=4, max_c=4))
def test_det_matches_rank(M):
    if M.nrows != M.ncols:
        return
    assert (linalg.det(M) != 0) == (linalg.rank(M) == M.nrows)


@given(matrices())
def test_text_and_json_roundtrip(M):
    assert Matrix.from_text(M.field, M.to_text()) == M
    assert Matrix.from_json(M.to_json()) == M


def test_gram_det_self_orthogonal_row():
    F2 = create_field(2, 1)
    assert linalg.gram_det(Matrix(F2, np.array([[1, 1]]))) == 0
    assert linalg.gram_det(Matrix(F2, np.array([[1, 0]]))) == 1


def test_gram_det_oracle():
    # explicit 2x2 Gram determinant over GF(5)
    F = create_field(5, 1)
    G = Matrix(F, np.array([[1, 2, 3], [0, 1, 4]]))
    a, b, d = (1 + 4 + 9) % 5, (0 + 2 + 12) % 5, (0 + 1 + 16) % 5
    assert linalg.gram_det(G) == (a * d - b * b) % 5
