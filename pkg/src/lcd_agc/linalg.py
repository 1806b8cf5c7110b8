"""Dense exact linear algebra over GF(q).

Matrices are numpy int64 arrays of encodings paired with their field.  Row
operations go through the field's lookup tables, so everything here is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gf import GF, NUMPY_TABLE_LIMIT, parse_field_spec


@dataclass(frozen=True, eq=False)
class Matrix:
    field: GF
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError("matrix entries out of range for the field")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def shape(self):
        return self.data.shape

    @property
    def nrows(self):
        return self.data.shape[0]

    @property
    def ncols(self):
        return self.data.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data.shape == other.data.shape and bool(np.all(self.data == other.data)))

    def __repr__(self):
        return f"Matrix({self.field.spec_string()}, {self.nrows}x{self.ncols})"

    def tolist(self):
        return self.data.tolist()

    def to_text(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.data.tolist())

    def to_json(self) -> str:
        return json.dumps({"field": self.field.spec_string(), "matrix": self.tolist()})

    @classmethod
    def from_text(cls, field: GF, text: str) -> "Matrix":
        rows = [[int(v) for v in line.split(",")] for line in text.strip().splitlines() if line.strip()]
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def from_json(cls, text: str) -> "Matrix":
        obj = json.loads(text)
        field = parse_field_spec(obj["field"])
        rows = obj["matrix"]
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), -1 if rows else 0)
        return cls(field, arr)


def _ops(F: GF):
    if F.q > NUMPY_TABLE_LIMIT:
        raise ValueError(f"dense linear algebra is limited to q <= {NUMPY_TABLE_LIMIT}")
    return F.tables()


def identity(F: GF, n: int) -> Matrix:
    return Matrix(F, np.eye(n, dtype=np.int64))


def zeros(F: GF, r: int, c: int) -> Matrix:
    return Matrix(F, np.zeros((r, c), dtype=np.int64))


def _rref_array(F: GF, a: np.ndarray):
    add, mul, neg, inv = _ops(F)
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            # row_i <- row_i - a[i,c] * row_r
            scaled = mul[col[others][:, None], a[r][None, :]]
            a[others] = add[a[others], neg[scaled]]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rref(M: Matrix):
    """(reduced row echelon form, rank, pivot columns)."""
    if M.data.size == 0:
        return M, 0, []
    a, rank, pivots = _rref_array(M.field, M.data)
    return Matrix(M.field, a), rank, pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def kernel_basis(M: Matrix) -> Matrix:
    """Rows spanning the right null space {v : M v^T = 0}."""
    F = M.field
    cols = M.ncols
    if M.nrows == 0:
        return identity(F, cols)
    R, rk, pivots = rref(M)
    _, _, neg, _ = _ops(F)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = neg[R.data[r, fc]]
    return Matrix(F, basis)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.field != B.field:
        raise ValueError("mixed fields")
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    return Matrix(A.field, _matmul_array(A.field, A.data, B.data))


def _matmul_array(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    add, mul, _, _ = _ops(F)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        term = mul[a[:, k][:, None], b[k][None, :]]
        out = np.bitwise_xor(out, term) if F.p == 2 else add[out, term]
    return out


def transpose(A: Matrix) -> Matrix:
    return Matrix(A.field, A.data.T.copy())


def scale_columns(A: Matrix, scalars) -> Matrix:
    _, mul, _, _ = _ops(A.field)
    s = np.asarray(scalars, dtype=np.int64)
    return Matrix(A.field, mul[A.data, s[None, :]])


def vstack(A: Matrix, B: Matrix) -> Matrix:
    return Matrix(A.field, np.vstack([A.data, B.data]))


def det(M: Matrix) -> int:
    """Determinant of a square matrix, by elimination."""
    F = M.field
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    add, mul, neg, inv = _ops(F)
    a = np.array(M.data, dtype=np.int64, copy=True)
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = F.neg(d)
        pv = int(a[c, c])
        d = F.mul(d, pv)
        ip = inv[pv]
        below = np.arange(c + 1, n)
        factors = mul[a[below, c], ip]
        nzr = below[factors != 0]
        if nzr.size:
            f = factors[factors != 0]
            a[nzr] = add[a[nzr], neg[mul[f[:, None], a[c][None, :]]]]
    return d


def gram_det(G: Matrix) -> int:
    """det(G G^T); G must have full row rank."""
    if rank(G) != G.nrows:
        raise ValueError("gram_det needs a generator of full row rank")
    return det(matmul(G, transpose(G)))


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    if A.field != B.field or A.ncols != B.ncols:
        raise ValueError("row spaces over different fields or lengths")
    Ra, ra, _ = rref(A)
    Rb, rb, _ = rref(B)
    return ra == rb and bool(np.all(Ra.data[:ra] == Rb.data[:rb]))


def solve_row(M: Matrix, v):
    """Some x with x M = v, or None."""
    F = M.field
    aug = np.vstack([M.data, np.asarray(v, dtype=np.int64)[None, :]])
    K = kernel_basis(Matrix(F, aug.T.copy()))
    for row in K.data:
        if row[-1] != 0:
            _, mul, neg, inv = _ops(F)
            scale_ = neg[inv[row[-1]]]
            return mul[scale_, row[:-1]]
    return None
