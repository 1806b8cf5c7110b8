"""Acceptance criteria 1-10, one PASS/FAIL line each.

Tolerances are pinned here: distances are exact integers unless a bracket is
stated, runtimes are wall-clock ceilings on a single core.
"""
import contextlib
import math
import time

import numpy as np
import pytest

from lcd_agc import agcode, cli, constructions as cons, curve as cv, linalg
from lcd_agc.function_field import Divisor, xq_differential
from lcd_agc.gf import create_field
from lcd_agc.linalg import Matrix
from lcd_agc.riemann_roch import rr_dim

import test_agcode
import test_constructions
import test_function_field
import test_riemann_roch
from strategies import FAMILY_KEYS

O = cv.INFINITY


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        checks = []
        t0 = time.perf_counter()
        err = None
        try:
            yield checks
        except Exception as exc:        # reported, then re-raised
            err = exc
        elapsed = time.perf_counter() - t0
        failed = [name for name, ok in checks if not ok]
        ok = err is None and not failed
        detail = f"{len(checks)} checks, {elapsed:.1f}s"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        if err is not None:
            detail += f"; error: {type(err).__name__}: {err}"
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
        if err is not None:
            raise err
        assert not failed, failed

    return run


@pytest.fixture(scope="module", autouse=True)
def compiled_kernels():
    """Compile the numba kernels once so that runtime ceilings measure the work, not the JIT."""
    for q, m in ((2, 2), (3, 1)):
        F = create_field(q, m)
        M = Matrix(F, np.array([[1, 1, 0], [0, 1, 1]]))
        agcode.min_distance(M, "enumerate")
        agcode.min_distance(M, "column_search")


def _example(key):
    ex = next(e for e in cli.EXAMPLES if e.key == key)
    return ex, cli.build_example(ex)


def _exact(res, d):
    return res.exact and res.lower == d


def test_criterion_1_genus1_gf4_code(criterion, E4):
    with criterion(1, "[7,3,4] over GF(4) reproduced exactly") as c:
        t0 = time.perf_counter()
        ex, rep = _example("gf4-734")
        code = rep.code
        expected = Matrix(E4.field, np.array([[1] * 7, [0, 2, 2, 3, 3, 1, 1], [0, 2, 1, 1, 3, 3, 2]]))
        c.append(("row space equals known matrix", linalg.row_space_equal(code.generator, expected)))
        res = agcode.min_distance(code, "enumerate")
        c.append(("exhaustive d = 4 over 64 words", _exact(res, 4) and res.work == 64))
        c.append(("LCD", agcode.is_lcd(code)))
        c.append(("Griesmer g4(3,4) = 6 <= 7", agcode.griesmer(4, 3, 4) == 6))
        rec = agcode.parameter_record(code, res)
        c.append(("MDS false, AMDS true", rec.flags["mds"] is False and rec.flags["almost_mds"] is True))
        c.append(("optimality recorded as cited", "optimal" in ex.cited))
        c.append(("runtime < 1 s", time.perf_counter() - t0 < 1.0))


def test_criterion_2_thm4_pair(criterion):
    with criterion(2, "thm4 pair [22,8,14] / [22,14,8]") as c:
        _, rep = _example("gf16-thm4")
        code, dual = rep.code, rep.dual
        c.append(("dims", (code.n, code.k, dual.k) == (22, 8, 14)))
        c.append(("LCD both", agcode.is_lcd(code) and agcode.is_lcd(dual)))
        c.append(("design distances", (code.design_distance, dual.design_distance) == (14, 8)))
        t0 = time.perf_counter()
        rd = agcode.min_distance(dual, "column_search", budget=10 ** 6)
        c.append(("column_search proves d = 8", _exact(rd, 8)))
        c.append(("column_search < 60 s", time.perf_counter() - t0 < 60))
        rc = agcode.min_distance(code, "auto", budget=10 ** 6)
        c.append(("bracket [14,14] from design bound and a weight-14 word", _exact(rc, 14)))
        if rc.witness is not None:
            c.append(("witness weight 14", int(np.count_nonzero(rc.witness)) == 14))


@pytest.mark.slow
def test_criterion_2_slow_enumeration(criterion):
    with criterion(2, "thm4 code: exact d = 14 by enumerating 16^8 words (slow)") as c:
        _, rep = _example("gf16-thm4")
        res = agcode.min_distance(rep.code, "enumerate", budget=16 ** 8)
        c.append(("enumeration d = 14", _exact(res, 14) and res.method == "enumerate"))


def test_criterion_3_thm5_pair(criterion):
    with criterion(3, "thm5 code [23,7,16] exact by enumeration") as c:
        _, rep = _example("gf16-thm5")
        t0 = time.perf_counter()
        res = agcode.min_distance(rep.code, "enumerate", budget=16 ** 7)
        c.append(("enumeration d = 16", _exact(res, 16) and res.method == "enumerate"))
        c.append(("enumeration < 60 s", time.perf_counter() - t0 < 60))
        c.append(("dims", (rep.code.n, rep.code.k, rep.dual.k) == (23, 7, 16)))
        c.append(("LCD both", agcode.is_lcd(rep.code) and agcode.is_lcd(rep.dual)))


def test_criterion_4_thm6_pair(criterion):
    with criterion(4, "thm6 pair [22,4,18] / [22,18,4]") as c:
        _, rep = _example("gf16-thm6")
        res = agcode.min_distance(rep.code, "enumerate")
        c.append(("enumeration d = 18 over 65536 words", _exact(res, 18) and res.work == 16 ** 4))
        rd = agcode.min_distance(rep.dual, "column_search")
        c.append(("column_search dual d = 4", _exact(rd, 4)))
        c.append(("C(22,4) = 7315", math.comb(22, 4) == 7315))
        c.append(("Griesmer g16(4,18) = 22", agcode.griesmer(16, 4, 18) == 22))
        c.append(("LCD both", agcode.is_lcd(rep.code) and agcode.is_lcd(rep.dual)))


def test_criterion_5_hyperelliptic(criterion):
    with criterion(5, "hyperelliptic [31,15]/[31,16] and [126,30]/[126,96]") as c:
        t0 = time.perf_counter()
        _, r4 = _example("hyper-q4")
        c.append(("q=4 dims", (r4.code.n, r4.code.k, r4.dual.k) == (31, 15, 16)))
        c.append(("q=4 LCD both", agcode.is_lcd(r4.code) and agcode.is_lcd(r4.dual)))
        # formula design distances; they exceed the looser [9,.] / [12,.] brackets
        a = agcode.min_distance(r4.code, "column_search", budget=10 ** 5)
        b = agcode.min_distance(r4.dual, "column_search", budget=10 ** 5)
        c.append(("q=4 code d >= 15 (>= 9)", a.lower >= 15))
        c.append(("q=4 dual d >= 14 (>= 12)", b.lower >= 14))
        _, r8 = _example("hyper-q8")
        C8 = r8.code.curve
        c.append(("q=8 dims", (r8.code.n, r8.code.k, r8.dual.k) == (126, 30, 96)))
        c.append(("q=8 LCD both", agcode.is_lcd(r8.code) and agcode.is_lcd(r8.dual)))
        Pp, Pm = C8.plus_minus(0)
        c.append(("q=8 H from formula", r8.H == Divisor.of(C8, (115, O), (-10, Pp), (-6, Pm))))
        c.append(("q=8 orthogonality 0",
                  agcode.orthogonality_defect(r8.code.generator, r8.dual.generator) == 0))
        c.append(("runtime < 30 s", time.perf_counter() - t0 < 30))


def test_criterion_6_hermitian(criterion, herm3):
    with criterion(6, "Hermitian q=3, degree-3 place, r=2 gives LCD [27,12]") as c:
        t0 = time.perf_counter()
        _, rep = _example("hermitian-q3")
        P = cons.hermitian_degree3_place(rep.code.curve)
        c.append(("degree-3 place", P.degree == 3))
        c.append(("[27,12]", (rep.code.n, rep.code.k) == (27, 12)))
        c.append(("LCD", agcode.is_lcd(rep.code)))
        c.append(("l(8O-2P) = 0", rr_dim(rep.code.curve, Divisor.of(rep.code.curve, (8, O), (-2, P))) == 0))
        c.append(("runtime < 10 s", time.perf_counter() - t0 < 10))


def test_criterion_7_projective_line(criterion):
    with criterion(7, "projective-line codes MDS and LCD for q in {8,16}, r <= 3") as c:
        for q in (8, 16):
            F = create_field(2, q.bit_length() - 1)
            for r in range(1, min(3, (q - 2) // 2) + 1):
                rep = cons.projline_build(F, r)
                code = rep.code
                n, k = code.n, code.k
                if q ** k <= 10 ** 7:
                    res = agcode.min_distance(code, "enumerate")
                else:
                    res = agcode.min_distance(code, "column_search", lower=1)
                tag = f"q={q} r={r}"
                c.append((f"{tag} MDS d={n - k + 1}", _exact(res, n - k + 1)))
                c.append((f"{tag} LCD", agcode.is_lcd(code)))
                c.append((f"{tag} rho-power pattern",
                          ("generator equals the rho-power pattern", True) in rep.claims))


def test_criterion_8_point_counts(criterion):
    with criterion(8, "tabulated closed forms match enumeration for m <= 10") as c:
        t0 = time.perf_counter()
        for row in cv.COUNT_TABLE:
            for m in range(1, 11):
                got = cv.tabulated_count_check(row, m)
                if got is None:
                    continue
                closed, counted = got
                c.append((f"{row.label} m={m}", closed == counted))
                c.append((f"{row.label} m={m} Hasse-Weil", cv.hasse_weil_ok(counted, 2 ** m, 1)))
        c.append(("runtime < 30 s", time.perf_counter() - t0 < 30))


def test_criterion_9_property_suites(criterion):
    suites = []
    for key in FAMILY_KEYS:
        suites.append((f"RR law on {key}", lambda k=key: test_riemann_roch.test_riemann_roch_law_above_2g_minus_2(k)))
        suites.append((f"membership on {key}", lambda k=key: test_riemann_roch.test_basis_elements_satisfy_membership(k)))
    suites += [
        ("residue closed form vs series", test_function_field.test_residue_closed_form_matches_series),
        ("gcd + lmd identity", test_function_field.test_gcd_lmd_identity),
        ("pair orthogonality and dim sum (thm4)", test_constructions.test_thm4_gate_soundness),
        ("pair orthogonality and dim sum (hyperelliptic)",
         test_constructions.test_hyperelliptic_rp_gate_matches_riemann_roch),
        ("scaling keeps LCD and weights", test_agcode.test_column_scaling_keeps_lcd_and_weights),
    ]
    with criterion(9, "property suites, 100 random instances each") as c:
        for name, fn in suites:
            try:
                fn()
                c.append((name, True))
            except AssertionError:
                c.append((name, False))


def test_criterion_10_negative_controls(criterion, herm3, F9, E16):
    def rejects(build, clause):
        try:
            build()
        except cons.HypothesisFailed as exc:
            return exc.clause == clause
        return False

    rest = test_constructions.REST
    with criterion(10, "every gate rejects a violating input; speciality gate both ways") as c:
        c.append(("torsion", rejects(lambda: cons.thm4_build(E16, 2, rest, 5), "P∉E[r]")))
        D = cons.fiber_places(E16, rest)
        P = E16.point(2, 0)
        from lcd_agc.function_field import product_differential
        c.append(("principality", rejects(
            lambda: cons.thm3_elliptic(E16, D, Divisor.of(E16, (5, O), (5, P)), product_differential(E16, rest)),
            "gcd(G,H) not principal")))
        Ps, r = cons.special_hermitian_instance(herm3)
        c.append(("non-speciality", rejects(lambda: cons.hermitian_build(herm3, Ps, r), "gcd(G,H) non-special")))
        try:
            test_constructions.test_square_residue_gate_in_odd_characteristic(F9)
            c.append(("square residue", True))
        except AssertionError:
            c.append(("square residue", False))
        special = cons.hermitian_build(herm3, Ps, r, enforce=False)
        c.append(("special gcd gives a non-LCD code", not agcode.is_lcd(special.code)))
        good = cons.hermitian_build(herm3, cons.hermitian_degree3_place(herm3), 2)
        c.append(("non-special gcd gives an LCD code", agcode.is_lcd(good.code)))
