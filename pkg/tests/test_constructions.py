import pytest
from hypothesis import given, settings, strategies as st

from lcd_agc import agcode, constructions as cons, curve as cv
from lcd_agc.function_field import (
    CurveFunction,
    Differential,
    Divisor,
    divisor_of,
    gcd_divisor,
    product_differential,
    residue,
    xq_differential,
)
from lcd_agc.gf import create_field
from lcd_agc.riemann_roch import rr_dim
from strategies import CURVES

O = cv.INFINITY
E16 = CURVES["elliptic"]
REST = [a for a in E16.x_support() if a != 2]


def assert_pair_sound(rep):
    assert rep.emitted
    assert all(ok for _, ok in rep.claims), rep.claims
    n = rep.code.n
    assert rep.code.k + rep.dual.k == n
    assert agcode.orthogonality_defect(rep.code.generator, rep.dual.generator) == 0
    assert agcode.is_lcd(rep.code) and agcode.is_lcd(rep.dual)


# -- elliptic recipes with explicit divisors--------------------------------------------------------

def test_thm3_on_gf16_fibres():
    D = cons.fiber_places(E16, REST)
    P = E16.point(2, 0)
    rep = cons.thm3_elliptic(E16, D, Divisor.of(E16, (4, O), (4, P)), product_differential(E16, REST))
    assert_pair_sound(rep)
    assert (rep.code.k, rep.dual.k) == (8, 14)


def test_thm3_principal_gcd_fails_clause_3():
    D = cons.fiber_places(E16, REST)
    P = E16.point(2, 0)
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.thm3_elliptic(E16, D, Divisor.of(E16, (5, O), (5, P)), product_differential(E16, REST))
    assert exc.value.clause == "gcd(G,H) not principal"


def _cor1_evaluation_set():
    pts = E16.affine_points()
    for i, A in enumerate(pts):
        for B in pts[i + 1:]:
            D = [P for P in pts if P not in (A, B)]
            Dbar = cv.INFINITY
            for P in D:
                Dbar = cv.elliptic_add(E16, Dbar, P)
            if not Dbar.is_infinity and Dbar not in D:
                return D
    raise AssertionError("no admissible evaluation set")


def test_cor1_builds_with_constructed_differential():
    D = _cor1_evaluation_set()
    rep = cons.cor1_build(E16, D, 2)
    assert_pair_sound(rep)
    assert (rep.code.k, rep.dual.k) == (3, len(D) - 3)
    assert ("(f) = (n-1)O + Dbar - D", True) in rep.claims


def test_cor1_rejects_collision_and_range():
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.cor1_build(E16, E16.affine_points(), 2)     # Dbar = O for the whole group
    assert exc.value.clause in ("O, Dbar not in Supp D", "Dbar∉E[r-1]")
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.cor1_build(E16, _cor1_evaluation_set(), 1)
    assert exc.value.clause == "2 <= r <= (n+1)/2"


def test_cor1_torsion_gate():
    D = _cor1_evaluation_set()
    Dbar = cv.INFINITY
    for P in D:
        Dbar = cv.elliptic_add(E16, Dbar, P)
    # every point of the order-25 group has order 5 or 25; r-1 = 5 kills order-5 points
    if cv.torsion_test(E16, Dbar, 5):
        with pytest.raises(cons.HypothesisFailed) as exc:
            cons.cor1_build(E16, D, 6)
        assert exc.value.clause == "Dbar∉E[r-1]"
    else:
        assert cons.cor1_build(E16, D, 6).emitted


def test_cor2_full_fibres():
    D = cons.fiber_places(E16, REST)
    Q = E16.point(2, 0)
    rep = cons.cor2_build(E16, D, Q, 3)
    assert_pair_sound(rep)
    assert (rep.code.k, rep.dual.k) == (6, 16)
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.cor2_build(E16, D, Q, 5)
    assert exc.value.clause == "rQ != O"


def test_cor2_needs_principal_d():
    D = cons.fiber_places(E16, REST)[:-1]
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.cor2_build(E16, D, E16.point(2, 0), 3)
    assert exc.value.clause == "D principal"


# -- elliptic recipes from fibres----------------------------------------------------------------------

def test_thm4_gf16_r4():
    rep = cons.thm4_build(E16, 2, REST, 4)
    assert_pair_sound(rep)
    assert rep.H == Divisor.of(E16, (18, O), (-4, E16.point(2, 0)))
    assert (rep.code.design_distance, rep.dual.design_distance) == (14, 8)


def test_thm4_edge_r_equals_s_minus_1():
    # (2,0) has order 5, so s = 6 would trip the torsion gate
    s = 7
    rep = cons.thm4_build(E16, 2, REST[:s], s - 1)
    assert (rep.code.k, rep.dual.k) == (2 * s - 2, 2)


def test_thm4_rejects_collision():
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.thm4_build(E16, 2, [2] + REST[:4], 2)
    assert exc.value.clause == "alphas distinct"


@given(st.sets(st.sampled_from(REST), min_size=2, max_size=11))
@settings(max_examples=100)
def test_half_power_scalars_square_to_residues(alphas):
    alphas = sorted(alphas)
    F = E16.field
    w = product_differential(E16, alphas)
    b = cons.half_power_scalars(F, alphas, range(len(alphas)), range(len(alphas)))
    for bj, a in zip(b, alphas):
        for P in E16.plus_minus(a):
            assert F.mul(bj, bj) == residue(w, P)


def test_thm5_gf16_r3():
    rep = cons.thm5_build(E16, [2] + REST, 3)
    assert_pair_sound(rep)
    assert (rep.code.n, rep.code.k, rep.dual.k) == (23, 7, 16)
    assert rep.H == Divisor.of(E16, (20, O), (-4, E16.point(2, 0)))


def test_thm6_gf16_r0():
    rep = cons.thm6_build(E16, 2, REST, 0)
    assert_pair_sound(rep)
    Pp, Pm = E16.plus_minus(2)
    assert rep.G == Divisor.of(E16, (3, O), (1, Pp))
    assert rep.H == Divisor.of(E16, (21, O), (-2, Pp), (-1, Pm))
    assert (rep.code.k, rep.dual.k) == (4, 18)


def test_thm6_range_gate():
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.thm6_build(E16, 2, REST, 5)
    assert exc.value.clause == "0 <= r < (s-2)/2"


def test_gcd_shortcut_for_torsion_gate():
    P = E16.point(2, 0)
    h = cons.cor34_gate(E16, P, 4)
    assert h.passed and h.clause == "gcd(r,N) = 1"
    h = cons.cor34_gate(E16, P, 5)
    assert h.clause == "P∉E[r] (explicit)" and not h.passed
    assert cons.thm4_build(E16, 2, REST, 4, use_gcd_gate=True).emitted


@given(st.sampled_from(E16.x_support()), st.integers(-1, 13))
@settings(max_examples=100)
def test_thm4_gate_soundness(alpha0, r):
    rest = [a for a in E16.x_support() if a != alpha0]
    s = len(rest)
    P0 = E16.plus_minus(alpha0)[0]
    in_range = 0 < r < s
    torsion_ok = in_range and not (cv.elliptic_mul(E16, P0, r) == O)
    try:
        rep = cons.thm4_build(E16, alpha0, rest, r)
    except cons.HypothesisFailed as exc:
        assert not (in_range and torsion_ok)
        assert exc.clause == ("0 < r < s" if not in_range else "P∉E[r]")
        assert exc.report.code is None
        return
    assert in_range and torsion_ok
    assert_pair_sound(rep)


@given(st.integers(-1, 12))
@settings(max_examples=30)
def test_thm5_gate_soundness(r):
    s = 12
    P1 = E16.point(2, 0)
    expected = 0 <= r < s - 1 and cv.elliptic_mul(E16, P1, r + 1) != O
    try:
        rep = cons.thm5_build(E16, [2] + REST, r)
    except cons.HypothesisFailed as exc:
        assert not expected
        assert exc.clause in ("0 <= r < s-1", "P∉E[r+1]")
        return
    assert expected
    assert_pair_sound(rep)


# -- hyperelliptic ---------------------------------------------------------------------------

def test_hyperelliptic_rp_example(hyper4):
    rep = cons.hyper_build_rP(hyper4, hyper4.point(0, 0), 7)
    assert_pair_sound(rep)
    assert (rep.code.n, rep.code.k, rep.dual.k) == (31, 15, 16)
    assert rep.H == Divisor.of(hyper4, (25, O), (-8, hyper4.point(0, 0)))


def test_hyperelliptic_rp_range(hyper4):
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.hyper_build_rP(hyper4, hyper4.point(0, 0), 0)
    assert exc.value.clause == "q/4 <= r <= q^2 - q/4 - 1"


@given(st.integers(1, 14), st.sampled_from(range(16)))
@settings(max_examples=100)
def test_hyperelliptic_rp_gate_matches_riemann_roch(r, alpha):
    C = CURVES["hyper"]
    P = C.points_above_x(alpha)[0]
    gate = rr_dim(C, Divisor.of(C, (r + 2, O), (-(r + 1), P))) == 0
    try:
        rep = cons.hyper_build_rP(C, P, r)
    except cons.HypothesisFailed as exc:
        assert exc.clause == "(r+q/2)O-(r+1)P non-special" and not gate
        return
    assert gate
    assert (rep.code.k, rep.dual.k) == (2 * r + 1, 2 * (16 - r - 1))
    assert_pair_sound(rep)


def test_hyperelliptic_reduced_minimal(hyper4):
    rep = cons.hyper_build_reduced(hyper4, [0], [2], [0])
    assert_pair_sound(rep)
    q = 4
    assert (rep.code.k, rep.dual.k) == (2 + q, 2 * q * q - 4 - q)


def test_hyperelliptic_reduced_constraints(hyper4):
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.hyper_build_reduced(hyper4, [0], [1], [0])
    assert exc.value.clause == "sum n_i = g, n_i > 0"
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.hyper_build_reduced(hyper4, [0], [2], [9])
    assert exc.value.clause.startswith("sum r_i <=")


def test_hyperelliptic_q8_example():
    F = create_field(2, 6)
    C = cv.make_curve(cv.HYPERELLIPTIC_AS, F, q=8)
    rep = cons.hyper_build_reduced(C, [0], [4], [5])
    assert_pair_sound(rep)
    Pp, Pm = C.plus_minus(0)
    assert rep.G == Divisor.of(C, (19, O), (9, Pp), (5, Pm))
    # formula coefficient n_1 = 4 at P-; a "+P-" there would break (w) = G + H - D
    assert rep.H == Divisor.of(C, (115, O), (-10, Pp), (-6, Pm))
    assert (rep.code.n, rep.code.k, rep.dual.k) == (126, 30, 96)


# -- Hermitian, projective line, general recipes------------------------------------------

def test_hermitian_example(herm3):
    P = cons.hermitian_degree3_place(herm3)
    rep = cons.hermitian_build(herm3, P, 2)
    assert_pair_sound(rep)
    assert (rep.code.n, rep.code.k) == (27, 12)
    assert rr_dim(herm3, Divisor.of(herm3, (8, O), (-2, P))) == 0


def test_hermitian_r0_rejected(herm3):
    P = cons.hermitian_degree3_place(herm3)
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.hermitian_build(herm3, P, 0)
    assert exc.value.clause == "gcd(G,H) non-special"


def test_speciality_gate_is_necessary_and_sufficient(herm3):
    P, r = cons.special_hermitian_instance(herm3)
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.hermitian_build(herm3, P, r)
    assert exc.value.clause == "gcd(G,H) non-special"
    witness = exc.value.report.witness
    g = Divisor.of(herm3, (r * P.degree + 2, O), (-r, P))
    assert (divisor_of(witness) + g).is_effective()
    rep = cons.hermitian_build(herm3, P, r, enforce=False)
    assert not agcode.is_lcd(rep.code)
    good = cons.hermitian_build(herm3, cons.hermitian_degree3_place(herm3), 2)
    assert agcode.is_lcd(good.code)


def test_general_and_classical_gates_agree_on_hermitian(herm3):
    P = cons.hermitian_degree3_place(herm3)
    D = herm3.affine_points()
    G = Divisor.of(herm3, (8, O), (2, P))
    w = xq_differential(herm3)
    a = cons.thm7_general(herm3, D, G, w)
    b = cons.thm8_classical(herm3, D, G, w)
    assert a.emitted and b.emitted
    Ps, r = cons.special_hermitian_instance(herm3)
    Gs = Divisor.of(herm3, (r * Ps.degree + 2, O), (r, Ps))
    for build in (cons.thm7_general, cons.thm8_classical):
        with pytest.raises(cons.HypothesisFailed):
            build(herm3, D, Gs, w)


def test_general_recipe_on_genus1_gf4_code(E4):
    from test_agcode import genus1_gf4_code

    code, D = genus1_gf4_code(E4)
    rep = cons.thm7_general(E4, D, code.G, xq_differential(E4))
    assert_pair_sound(rep)
    assert (rep.code.n, rep.code.k) == (7, 3)
    assert agcode.min_distance(rep.code, "enumerate").lower == 4


def test_general_recipe_degree_gate(E4):
    from test_agcode import genus1_gf4_code

    code, D = genus1_gf4_code(E4)
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.thm7_general(E4, D, Divisor.of(E4, (3, O)), xq_differential(E4))
    assert exc.value.clause == "deg gcd(G,H) = g-1"


def test_square_residue_gate_in_odd_characteristic(F9):
    L = cv.make_curve(cv.PROJECTIVE_LINE, F9)
    c = F9.primitive
    assert F9.sqrt(c) is None
    D = [L.point(F9.pow(c, j)) for j in range(8)]
    G = Divisor.of(L, (2, O), (2, L.point(0)))
    w = xq_differential(L)
    assert cons.thm7_general(L, D, G, w).emitted
    with pytest.raises(cons.HypothesisFailed) as exc:
        cons.thm7_general(L, D, G, Differential(w.f * CurveFunction.constant(L, c)))
    assert exc.value.clause == "Res_{P_i}(w) = a_i^2"


def test_projective_line_mds():
    F = create_field(2, 4)
    rep = cons.projline_build(F, 2)
    assert all(ok for _, ok in rep.claims)
    res = agcode.min_distance(rep.code, "enumerate")
    assert (rep.code.n, rep.code.k, res.lower) == (15, 5, 11)
    rec = agcode.parameter_record(rep.code, res)
    assert rec.flags["mds"] and rec.lcd


def test_projective_line_range():
    F = create_field(2, 3)
    edge = cons.projline_build(F, 3)
    assert edge.code.k == edge.code.n == 7
    with pytest.raises(cons.HypothesisFailed):
        cons.projline_build(F, 4)
    with pytest.raises(cons.HypothesisFailed):
        cons.projline_build(F, 0)


def test_report_json(E16):
    rep = cons.thm6_build(E16, 2, REST, 0)
    cons.attach_distances(rep, "auto")
    doc = rep.to_json()
    assert doc["recipe"] == "thm6"
    assert doc["code"]["params"]["d_exact"] == 18
    assert all(h["passed"] for h in doc["hypotheses"])
