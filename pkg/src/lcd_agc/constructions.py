"""Constructors for LCD code pairs, one per construction recipe.

Each constructor re-verifies its hypotheses computationally, builds the
divisors G and H, the differential and the scaling vector, and returns a
ConstructionReport holding both codes.  A failed hypothesis raises
HypothesisFailed naming the clause; the report built so far rides along.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import agcode, poly
from .agcode import GeneralizedAGCode, ParameterRecord
from .curve import (
    ELLIPTIC_AS,
    HERMITIAN,
    HYPERELLIPTIC_AS,
    INFINITY,
    PROJECTIVE_LINE,
    CurveModel,
    Place,
    make_curve,
    torsion_test,
)
from .function_field import (
    CurveFunction,
    Differential,
    Divisor,
    class_point,
    divisor_of,
    function_with_divisor,
    gcd_divisor,
    is_principal,
    product_differential,
    xq_differential,
)
from .gf import GF
from .riemann_roch import rr_basis

O = INFINITY


@dataclass
class Hypothesis:
    clause: str
    passed: bool
    detail: str = ""


@dataclass
class ConstructionReport:
    recipe: str
    params: dict
    hypotheses: list = field(default_factory=list)
    code: GeneralizedAGCode | None = None
    dual: GeneralizedAGCode | None = None
    G: Divisor | None = None
    H: Divisor | None = None
    residues: tuple = ()
    records: dict = field(default_factory=dict)
    claims: list = field(default_factory=list)
    witness: object = None

    @property
    def emitted(self) -> bool:
        return self.code is not None

    def check(self, clause: str, passed: bool, detail: str = ""):
        self.hypotheses.append(Hypothesis(clause, bool(passed), detail))
        if not passed:
            raise HypothesisFailed(clause, self, detail)

    def claim(self, what: str, ok: bool):
        self.claims.append((what, bool(ok)))

    def to_json(self) -> dict:
        out = {
            "recipe": self.recipe,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "hypotheses": [{"clause": h.clause, "passed": h.passed, "detail": h.detail} for h in self.hypotheses],
            "G": self.G.to_text() if self.G is not None else None,
            "H": self.H.to_text() if self.H is not None else None,
            "claims": [{"claim": c, "ok": ok} for c, ok in self.claims],
        }
        if self.code is not None:
            out["code"] = agcode.code_to_json(self.code, self.H, self.records.get("code"))
        if self.dual is not None:
            out["dual"] = agcode.code_to_json(self.dual, self.G, self.records.get("dual"))
        return out


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return repr(v)


class HypothesisFailed(Exception):
    def __init__(self, clause: str, report: ConstructionReport | None = None, detail: str = ""):
        super().__init__(f"hypothesis failed: {clause}" + (f" ({detail})" if detail else ""))
        self.clause = clause
        self.report = report
        self.detail = detail


# -- shared assembly ------------------------------------------------------------------

def _finish(rep: ConstructionReport, C: CurveModel, D, G: Divisor, w: Differential, a, expected_H=None,
            dims=None):
    """Build GC(D,G,a) and its dual (a^{-1} e) C(D,H); record LCD and orthogonality."""
    H, e = agcode.dual_divisor(C, D, G, w)
    if expected_H is not None and H != expected_H:
        raise AssertionError(f"H = D - G + (w) is {H.to_text()}, expected {expected_H.to_text()}")
    F = C.field
    a = tuple(a)
    code = agcode.build_code(C, D, G, a)
    dual = agcode.build_code(C, D, H, agcode.dual_scaling(F, a, e))
    rep.code, rep.dual, rep.G, rep.H, rep.residues = code, dual, G, H, e
    n = len(D)
    rep.claim("dim C + dim C_dual = n", code.k + dual.k == n)
    rep.claim("orthogonality G diag(1) H^T = 0", agcode.orthogonality_defect(code.generator, dual.generator) == 0)
    lcd_c, lcd_d = agcode.is_lcd(code), agcode.is_lcd(dual)
    rep.claim("C is LCD", lcd_c)
    rep.claim("dual is LCD", lcd_d)
    if dims is not None:
        rep.claim(f"dims {dims}", (code.k, dual.k) == tuple(dims))
    rep.records["code"] = ParameterRecord(n, code.k, design_distance=code.design_distance, lcd=lcd_c)
    rep.records["dual"] = ParameterRecord(n, dual.k, design_distance=dual.design_distance, lcd=lcd_d)
    return rep


def attach_distances(rep: ConstructionReport, method: str = "auto", budget: int = 10 ** 9, which=("code", "dual")):
    """Run min_distance on the emitted codes and refresh their parameter records."""
    for name in which:
        code = getattr(rep, name)
        if code is None:
            continue
        res = agcode.min_distance(code, method, budget)
        rec = agcode.parameter_record(code, res, lcd=rep.records[name].lcd)
        rep.records[name] = rec
    return rep


def _sqrt_residues(rep: ConstructionReport, F: GF, e) -> tuple:
    roots = [F.sqrt(v) for v in e]
    bad = [i for i, r in enumerate(roots) if r is None]
    rep.check("Res_{P_i}(w) = a_i^2", not bad, f"non-square residue at positions {bad}" if bad else "")
    return tuple(roots)


def _require(C: CurveModel, family: str):
    if C.family != family:
        raise ValueError(f"recipe needs a {family} curve, got {C.family}")


# -- generic recipes ------------------------------------------------------------------------

def thm3_elliptic(C: CurveModel, D, G: Divisor, w: Differential) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    rep = ConstructionReport("thm3", {"G": G.to_text(), "n": len(D)})
    n = len(D)
    rep.check("0 < deg G < n", 0 < G.degree < n)
    H, e = agcode.dual_divisor(C, D, G, w)
    supp = set(D)
    rep.check("Supp G, Supp H disjoint from Supp D",
              not (supp & set(G.support)) and not (supp & set(H.support)))
    a = _sqrt_residues(rep, C.field, e)
    g = gcd_divisor(G, H)
    rep.check("deg gcd(G,H) = 0", g.degree == 0, g.to_text())
    rep.check("gcd(G,H) not principal", not is_principal(g), g.to_text())
    return _finish(rep, C, D, G, w, a, dims=(G.degree, n - G.degree))


def thm7_general(C: CurveModel, D, G: Divisor, w: Differential) -> ConstructionReport:
    rep = ConstructionReport("thm7", {"G": G.to_text(), "n": len(D)})
    n, gen = len(D), C.genus
    rep.check("2g-2 < deg G < n", 2 * gen - 2 < G.degree < n)
    H, e = agcode.dual_divisor(C, D, G, w)
    supp = set(D)
    rep.check("Supp G, Supp H disjoint from Supp D",
              not (supp & set(G.support)) and not (supp & set(H.support)))
    a = _sqrt_residues(rep, C.field, e)
    g = gcd_divisor(G, H)
    rep.check("deg gcd(G,H) = g-1", g.degree == gen - 1, g.to_text())
    basis = rr_basis(C, g)
    if basis.dimension:
        rep.witness = basis.functions[0]
    rep.check("gcd(G,H) non-special", basis.dimension == 0, f"l = {basis.dimension}")
    return _finish(rep, C, D, G, w, a, dims=(G.degree + 1 - gen, n - G.degree - 1 + gen))


def thm8_classical(C: CurveModel, D, G: Divisor, w: Differential, enforce: bool = True,
                   recipe: str = "thm8") -> ConstructionReport:
    """Constant residues: C(D,G) is LCD iff gcd(G,H) (degree g-1) is non-special.

    With enforce=False the code is built even for a special gcd, so that the
    converse direction can be observed.
    """
    rep = ConstructionReport(recipe, {"G": G.to_text(), "n": len(D)})
    n, gen = len(D), C.genus
    H, e = agcode.dual_divisor(C, D, G, w)
    rep.check("constant residues", len(set(e)) == 1)
    g = gcd_divisor(G, H)
    rep.check("deg gcd(G,H) = g-1", g.degree == gen - 1, g.to_text())
    basis = rr_basis(C, g)
    special = basis.dimension > 0
    if special:
        rep.witness = basis.functions[0]
    rep.params["gcd_special"] = special
    if enforce:
        rep.check("gcd(G,H) non-special", not special, f"l = {basis.dimension}")
    else:
        rep.hypotheses.append(Hypothesis("gcd(G,H) non-special", not special, f"l = {basis.dimension}"))
    rep.check("2g-2 < deg G < n", 2 * gen - 2 < G.degree < n)
    return _finish(rep, C, D, G, w, (1,) * n, dims=(G.degree + 1 - gen, n - G.degree - 1 + gen))


# -- elliptic recipes -----------------------------------------------------------------------

def _nonzero_torsion_gate(rep: ConstructionReport, C: CurveModel, P: Place, r: int, label: str,
                          use_gcd: bool = False):
    N = len(C.enumerate_points())
    if use_gcd and math.gcd(r, N) == 1:
        rep.check(label, True, f"gcd({r},{N}) = 1")
        return
    rep.check(label, not torsion_test(C, P, r), f"{r}*{P!r} = O" if torsion_test(C, P, r) else "")


def cor34_gate(C: CurveModel, P: Place, r: int) -> Hypothesis:
    """gcd(r, N) = 1 implies r P != O; otherwise fall back to the explicit test."""
    N = len(C.enumerate_points())
    if math.gcd(r, N) == 1:
        return Hypothesis("gcd(r,N) = 1", True, f"N = {N}")
    ok = not torsion_test(C, P, r)
    return Hypothesis("P∉E[r] (explicit)", ok, f"gcd({r},{N}) = {math.gcd(r, N)}")


def cor1_build(C: CurveModel, D, r: int) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    D = list(D)
    n = len(D)
    rep = ConstructionReport("cor1", {"r": r, "n": n})
    rep.check("2 <= r <= (n+1)/2", 2 <= r and 2 * r <= n + 1)
    Dsum = Divisor.sum_of(C, D)
    Dbar = class_point(Dsum)
    rep.params["Dbar"] = repr(Dbar)
    rep.check("O, Dbar not in Supp D", Dbar not in set(D))
    rep.check("Dbar∉E[r-1]", Dbar.is_infinity is False and not torsion_test(C, Dbar, r - 1))
    delta = Divisor.of(C, (n - 1, O), (1, Dbar)) - Dsum
    f = function_with_divisor(delta)
    rep.claim("(f) = (n-1)O + Dbar - D", divisor_of(f) == delta)
    w = Differential(f)
    G = Divisor.of(C, (r - 1, O), (r, Dbar))
    H_expected = Divisor.of(C, (n - r, O), (-(r - 1), Dbar))
    e = tuple(agcode.dual_divisor(C, D, G, w)[1])
    a = _sqrt_residues(rep, C.field, e)
    return _finish(rep, C, D, G, w, a, H_expected, dims=(2 * r - 1, n - 2 * r + 1))


def cor2_build(C: CurveModel, D, Q: Place, r: int) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    D = list(D)
    n = len(D)
    rep = ConstructionReport("cor2", {"r": r, "n": n, "Q": repr(Q)})
    rep.check("Q degree one", Q.degree == 1 and not Q.is_infinity)
    dq = Q.degree
    rep.check("0 < 2r deg Q < n", 0 < 2 * r * dq < n)
    rep.check("Q not in Supp D", Q not in set(D))
    Dsum = Divisor.sum_of(C, D)
    rep.check("D principal", is_principal(Dsum - Divisor.of(C, (n, O))), "D - nO must be principal")
    rep.check("rQ != O", not torsion_test(C, Q, r))
    f = function_with_divisor(Divisor.of(C, (n, O)) - Dsum)
    w = Differential(f)
    G = Divisor.of(C, (r * dq, O), (r, Q))
    H_expected = Divisor.of(C, (n - r * dq, O), (-r, Q))
    e = agcode.dual_divisor(C, D, G, w)[1]
    a = _sqrt_residues(rep, C.field, e)
    return _finish(rep, C, D, G, w, a, H_expected, dims=(2 * r * dq, n - 2 * r * dq))


def _check_alphas(rep: ConstructionReport, C: CurveModel, alphas):
    S = set(C.x_support())
    rep.check("alphas distinct", len(set(alphas)) == len(alphas))
    rep.check("alphas in S", all(a in S for a in alphas), f"S has {len(S)} elements")


def half_power_scalars(F: GF, alphas, indices, pool) -> list:
    """b_j = 1 / prod_{i in pool, i != j} (alpha_j^(q/2) + alpha_i^(q/2)) for j in indices."""
    e = F.q // 2
    out = []
    for j in indices:
        acc = 1
        aj = F.pow(alphas[j], e)
        for i in pool:
            if i != j:
                acc = F.mul(acc, F.add(aj, F.pow(alphas[i], e)))
        out.append(F.inv(acc))
    return out


def fiber_places(C: CurveModel, alphas) -> list:
    out = []
    for a in alphas:
        out.extend(C.plus_minus(a))
    return out


def thm4_build(C: CurveModel, alpha0: int, alphas, r: int, use_gcd_gate: bool = False) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    alphas = list(alphas)
    s = len(alphas)
    rep = ConstructionReport("thm4", {"alpha0": alpha0, "alphas": alphas, "r": r, "s": s})
    _check_alphas(rep, C, [alpha0] + alphas)
    rep.check("0 < r < s", 0 < r < s)
    P0 = C.plus_minus(alpha0)[0]
    _nonzero_torsion_gate(rep, C, P0, r, "P∉E[r]", use_gcd_gate)
    F = C.field
    D = fiber_places(C, alphas)
    G = Divisor.of(C, (r, O), (r, P0))
    H_expected = Divisor.of(C, (2 * s - r, O), (-r, P0))
    w = product_differential(C, alphas)
    b = half_power_scalars(F, alphas, range(s), range(s))
    a = [v for v in b for _ in range(2)]
    rep = _finish(rep, C, D, G, w, a, H_expected, dims=(2 * r, 2 * (s - r)))
    rep.claim("b_j^2 = Res", all(F.mul(x, x) == e for x, e in zip(a, rep.residues)))
    return rep


def thm5_build(C: CurveModel, alphas, r: int, use_gcd_gate: bool = False) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    alphas = list(alphas)
    s = len(alphas)
    rep = ConstructionReport("thm5", {"alphas": alphas, "r": r, "s": s})
    _check_alphas(rep, C, alphas)
    rep.check("0 <= r < s-1", 0 <= r < s - 1)
    P1p, P1m = C.plus_minus(alphas[0])
    _nonzero_torsion_gate(rep, C, P1p, r + 1, "P∉E[r+1]", use_gcd_gate)
    F = C.field
    D = [P1m] + fiber_places(C, alphas[1:])
    G = Divisor.of(C, (r + 1, O), (r, P1p))
    H_expected = Divisor.of(C, (2 * s - r - 1, O), (-(r + 1), P1p))
    w = product_differential(C, alphas)
    b = half_power_scalars(F, alphas, range(s), range(s))
    a = [b[0]] + [v for v in b[1:] for _ in range(2)]
    rep = _finish(rep, C, D, G, w, a, H_expected, dims=(2 * r + 1, 2 * (s - r - 1)))
    rep.claim("b_j^2 = Res", all(F.mul(x, x) == e for x, e in zip(a, rep.residues)))
    return rep


def thm6_build(C: CurveModel, alpha0: int, alphas, r: int) -> ConstructionReport:
    _require(C, ELLIPTIC_AS)
    alphas = list(alphas)
    s = len(alphas)
    rep = ConstructionReport("thm6", {"alpha0": alpha0, "alphas": alphas, "r": r, "s": s})
    _check_alphas(rep, C, [alpha0] + alphas)
    rep.check("0 <= r < (s-2)/2", 0 <= r and 2 * r < s - 2)
    Pp, Pm = C.plus_minus(alpha0)
    F = C.field
    D = fiber_places(C, alphas)
    G = Divisor.of(C, (2 * r + 3, O), (r + 1, Pp), (r, Pm))
    H_expected = Divisor.of(C, (2 * s - 2 * r - 1, O), (-(r + 2), Pp), (-(r + 1), Pm))
    g = gcd_divisor(G, H_expected)
    rep.check("deg gcd(G,H) = 0", g.degree == 0, g.to_text())
    rep.check("gcd(G,H) not principal", not is_principal(g), f"class point {class_point(g)!r}")
    w = product_differential(C, [alpha0] + alphas)
    pool = [alpha0] + alphas
    b = half_power_scalars(F, pool, range(1, s + 1), range(s + 1))
    a = [v for v in b for _ in range(2)]
    rep = _finish(rep, C, D, G, w, a, H_expected, dims=(4 * (r + 1), 2 * s - 4 * (r + 1)))
    rep.claim("b_j^2 = Res", all(F.mul(x, x) == e for x, e in zip(a, rep.residues)))
    return rep


# -- hyperelliptic recipes ------------------------------------------------------------------

def hyper_build_rP(C: CurveModel, P: Place, r: int) -> ConstructionReport:
    _require(C, HYPERELLIPTIC_AS)
    q = C.q
    rep = ConstructionReport("hyper-rp", {"q": q, "P": repr(P), "r": r})
    rep.check("q >= 4", q >= 4)
    rep.check("q/4 <= r <= q^2 - q/4 - 1", 4 * r >= q and 4 * r <= 4 * q * q - q - 4)
    rep.check("P affine of degree one", P.degree == 1 and not P.is_infinity)
    h = q // 2
    g = Divisor.of(C, (r + h, O), (-(r + 1), P))
    l = rr_basis(C, g).dimension
    rep.check("(r+q/2)O-(r+1)P non-special", l == 0, f"l = {l}")
    D = [Q for Q in C.affine_points() if Q != P]
    G = Divisor.of(C, (r + h, O), (r, P))
    H_expected = Divisor.of(C, (2 * q * q + h - r - 2, O), (-(r + 1), P))
    w = xq_differential(C)
    return _finish(rep, C, D, G, w, (1,) * len(D), H_expected, dims=(2 * r + 1, 2 * (q * q - r - 1)))


def hyper_build_reduced(C: CurveModel, alphas, ns, rs) -> ConstructionReport:
    _require(C, HYPERELLIPTIC_AS)
    alphas, ns, rs = list(alphas), list(ns), list(rs)
    q, t = C.q, len(alphas)
    rep = ConstructionReport("hyper-reduced", {"q": q, "alphas": alphas, "n": ns, "r": rs})
    rep.check("q >= 4", q >= 4)
    rep.check("matching parameter lengths", len(ns) == t == len(rs) and t > 0)
    rep.check("sum n_i = g, n_i > 0", sum(ns) == C.genus and all(v > 0 for v in ns))
    R = sum(rs)
    rep.check("sum r_i <= (2q^2 - 3q/2 - 4t - 4)/4", all(v >= 0 for v in rs) and 8 * R <= 4 * q * q - 3 * q - 8 * t - 8)
    rep.check("alphas distinct", len(set(alphas)) == t)
    pm = [C.plus_minus(a) for a in alphas]
    excluded = {P for pair in pm for P in pair}
    D = [P for P in C.affine_points() if P not in excluded]
    G = Divisor.of(C, (2 * (t + R) + q - 1, O))
    H_expected = Divisor.of(C, (2 * q * q - 2 * (t + R) - 1, O))
    for (Pp, Pm), ni, ri in zip(pm, ns, rs):
        G = G + Divisor.of(C, (ri + ni, Pp), (ri, Pm))
        H_expected = H_expected + Divisor.of(C, (-(ri + ni + 1), Pp), (-(ri + 1), Pm))
    g = gcd_divisor(G, H_expected)
    l = rr_basis(C, g).dimension
    rep.check("gcd(G,H) non-special", g.degree == C.genus - 1 and l == 0, f"{g.to_text()}, l = {l}")
    w = xq_differential(C)
    dims = (4 * R + 2 * t + q, 2 * q * q - 4 * R - 4 * t - q)
    return _finish(rep, C, D, G, w, (1,) * len(D), H_expected, dims=dims)


# -- Hermitian and projective line --------------------------------------------------------------

def hermitian_build(C: CurveModel, P: Place, r: int, enforce: bool = True) -> ConstructionReport:
    _require(C, HERMITIAN)
    g = C.genus
    D = C.affine_points()
    n = len(D)
    dP = P.degree
    G = Divisor.of(C, (r * dP + g - 1, O), (r, P))
    pre = ConstructionReport("hermitian", {"q": C.q, "P": repr(P), "r": r})
    pre.check("deg P > 1", dP > 1)
    pre.check("r deg P <= n/2", 2 * r * dP <= n)
    rep = thm8_classical(C, D, G, xq_differential(C), enforce=enforce, recipe="hermitian")
    rep.params.update(pre.params)
    rep.hypotheses = pre.hypotheses + rep.hypotheses
    H_expected = Divisor.of(C, (n - r * dP + g - 1, O), (-r, P))
    rep.claim("H = (n - r deg P + g - 1)O - rP", rep.H == H_expected)
    return rep


def projline_build(F: GF, r: int) -> ConstructionReport:
    C = make_curve(PROJECTIVE_LINE, F)
    q = F.q
    rep = ConstructionReport("projline", {"q": q, "r": r})
    rep.check("0 < r <= (q-2)/2", 0 < r and 2 * r <= q - 2)
    rho = F.primitive
    P0 = C.point(0)
    D = [C.point(F.pow(rho, j)) for j in range(q - 1)]
    G = Divisor.of(C, (r, O), (r, P0))
    H = Divisor.of(C, (q - r - 2, O), (-(r + 1), P0))
    g = gcd_divisor(G, H)
    l = rr_basis(C, g).dimension
    rep.check("rO-(r+1)P non-special", l == 0, f"l = {l}")
    basis = [CurveFunction.constant(C, 1)]
    for i in range(1, r + 1):
        basis.append(CurveFunction.x_poly(C, [0] * i + [1]))
        basis.append(CurveFunction.x_poly(C, [1], [0] * i + [1]))
    w = xq_differential(C)
    H2, e = agcode.dual_divisor(C, D, G, w)
    if H2 != H:
        raise AssertionError("dual divisor mismatch on the projective line")
    code = agcode.build_code(C, D, G, basis=basis)
    dual = agcode.build_code(C, D, H, agcode.dual_scaling(F, (1,) * len(D), e))
    rep.code, rep.dual, rep.G, rep.H, rep.residues = code, dual, G, H, e
    n = len(D)
    pattern = [[F.pow(rho, s * i * j) for j in range(q - 1)] for i in range(r + 1) for s in ((1,) if i == 0 else (1, -1))]
    rep.claim("generator equals the rho-power pattern", code.generator.tolist() == pattern)
    rep.claim("dim C + dim C_dual = n", code.k + dual.k == n)
    rep.claim("orthogonality", agcode.orthogonality_defect(code.generator, dual.generator) == 0)
    lcd_c, lcd_d = agcode.is_lcd(code), agcode.is_lcd(dual)
    rep.claim("C is LCD", lcd_c)
    rep.claim("dual is LCD", lcd_d)
    rep.records["code"] = ParameterRecord(n, code.k, design_distance=code.design_distance, lcd=lcd_c)
    rep.records["dual"] = ParameterRecord(n, dual.k, design_distance=dual.design_distance, lcd=lcd_d)
    return rep


# -- helpers for the worked examples -----------------------------------------------------------

def hermitian_degree3_place(C: CurveModel) -> Place:
    """Degree-3 place over beta^3 + rho beta^2 - beta + rho^2 = 0 on y^3 + y = x^4 over GF(9).

    The point (beta, rho^2 beta^2 + beta - 1) lies on y^3 + y = -x^4, so the
    place is taken at y = -(rho^2 beta^2 + beta - 1).
    """
    from .gf import embedding

    F = C.field
    rho = F.gen
    r2 = F.mul(rho, rho)
    pi = [r2, F.neg(1), rho, 1]
    L = F.extension(3)
    emb = embedding(F, L)
    beta = poly.roots_in_extension(F, pi, L)[0]
    y = L.add(L.add(L.mul(emb[r2], L.mul(beta, beta)), beta), L.neg(1))
    return C.place_at(beta, L.neg(y), L)


def special_hermitian_instance(C: CurveModel, max_degree: int = 2):
    """Search small places P, r for a special gcd (the converse of the speciality gate); first hit."""
    F = C.field
    from itertools import product as iproduct

    for d in range(2, max_degree + 1):
        for coeffs in iproduct(range(F.q), repeat=d):
            pi = list(coeffs) + [1]
            if not poly.is_irreducible(F, pi):
                continue
            for P in C.places_over(pi):
                if P.degree < 2:
                    continue
                for r in range(1, 3):
                    g = Divisor.of(C, (r * P.degree + C.genus - 1, O), (-r, P))
                    if 2 * r * P.degree <= len(C.affine_points()) and rr_basis(C, g).dimension > 0:
                        return P, r
    return None
