"""Generalized AG codes: construction, duals, the LCD test and minimum distance."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels, linalg
from .curve import CurveModel
from .function_field import (
    Differential,
    Divisor,
    differential_divisor,
    evaluate,
    residue,
)
from .gf import GF
from .linalg import Matrix
from .riemann_roch import rr_basis


class CodeError(ValueError):
    pass


@dataclass
class ParameterRecord:
    n: int
    k: int
    design_distance: int | None = None
    d_exact: int | None = None
    d_lower: int | None = None
    d_upper: int | None = None
    lcd: bool | None = None
    griesmer: int | None = None
    flags: dict = field(default_factory=dict)

    def to_dict(self):
        out = asdict(self)
        out["d_bracket"] = [self.d_lower, self.d_upper]
        return out


@dataclass(frozen=True, eq=False)
class GeneralizedAGCode:
    curve: CurveModel
    D: tuple
    G: Divisor
    a: tuple
    generator: Matrix
    basis: tuple = ()

    @property
    def field(self) -> GF:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def design_distance(self) -> int:
        return self.n - self.G.degree

    def __repr__(self):
        return f"GeneralizedAGCode([{self.n},{self.k}] over {self.field.spec_string()}, G={self.G.to_text()})"


def _check_eval_places(C: CurveModel, D, G: Divisor):
    seen = set()
    for P in D:
        if P.is_infinity or P.degree != 1:
            raise CodeError(f"evaluation place {P!r} is not a degree-one affine place")
        if P in seen:
            raise CodeError(f"evaluation place {P!r} repeated")
        seen.add(P)
        if G[P] != 0:
            raise CodeError(f"evaluation place {P!r} lies in the support of G")


def evaluation_matrix(C: CurveModel, functions, D, a=None) -> np.ndarray:
    F = C.field
    n = len(D)
    a = a or (1,) * n
    out = np.zeros((len(functions), n), dtype=np.int64)
    for i, f in enumerate(functions):
        for j, P in enumerate(D):
            out[i, j] = F.mul(a[j], evaluate(f, P))
    return out


def build_code(C: CurveModel, D, G: Divisor, a=None, basis=None, check_range=True) -> GeneralizedAGCode:
    """GC(D, G, a): rows a_j f_i(P_j) over a basis f_i of L(G)."""
    D = tuple(D)
    n = len(D)
    _check_eval_places(C, D, G)
    a = tuple(int(v) for v in (a if a is not None else (1,) * n))
    if len(a) != n:
        raise CodeError(f"scaling vector has length {len(a)}, expected {n}")
    if any(v == 0 for v in a):
        raise CodeError("scaling vector has a zero entry")
    g = C.genus
    degG = G.degree
    if check_range and not (2 * g - 2 < degG < n):
        raise CodeError(f"deg G = {degG} outside ({2 * g - 2}, {n})")
    if basis is None:
        basis = rr_basis(C, G).functions
    M = Matrix(C.field, evaluation_matrix(C, basis, D, a))
    rk = linalg.rank(M) if len(basis) else 0
    if rk != len(basis):
        raise CodeError(f"evaluation map has rank {rk} < {len(basis)}")
    if check_range and rk != degG + 1 - g:
        raise AssertionError(f"dimension {rk} differs from deg G + 1 - g = {degG + 1 - g}")
    return GeneralizedAGCode(C, D, G, a, M, tuple(basis))


def dual_divisor(C: CurveModel, D, G: Divisor, w: Differential):
    """H = D - G + (w) and residues e_i = Res_{P_i}(w)."""
    Dsum = Divisor.sum_of(C, D)
    K = differential_divisor(w)
    for P in D:
        if K[P] != -1:
            raise CodeError(f"differential has order {K[P]} at {P!r}, expected -1")
    H = Dsum - G + K
    e = tuple(residue(w, P) for P in D)
    if any(v == 0 for v in e):
        raise CodeError("zero residue at an evaluation place")
    return H, e


def dual_scaling(F: GF, a, e):
    """a^{-1} * e, the scaling of the dual code."""
    return tuple(F.div(ei, ai) for ai, ei in zip(a, e))


def orthogonality_defect(M1: Matrix, M2: Matrix, weights=None) -> int:
    """Number of nonzero entries of M1 diag(weights) M2^T."""
    A = M1 if weights is None else linalg.scale_columns(M1, weights)
    prod = linalg.matmul(A, linalg.transpose(M2))
    return int(np.count_nonzero(prod.data))


def _generator(obj) -> Matrix:
    return obj.generator if isinstance(obj, GeneralizedAGCode) else obj


def is_lcd(code) -> bool:
    """Massey: C is LCD iff det(G G^T) != 0."""
    return linalg.gram_det(_generator(code)) != 0


def lcd_by_intersection(code) -> bool:
    """C and its dual meet trivially iff [G; H] has rank n."""
    M = _generator(code)
    Hm = linalg.kernel_basis(M)
    return linalg.rank(linalg.vstack(M, Hm)) == M.ncols


def parity_check(code) -> Matrix:
    return linalg.kernel_basis(_generator(code))


# -- bounds -----------------------------------------------------------------------

def griesmer(q: int, k: int, d: int) -> int:
    if k < 1 or d < 1:
        raise ValueError("griesmer needs k >= 1 and d >= 1")
    return sum(-(-d // q ** i) for i in range(k))


def bounds(q: int, n: int, k: int, d: int, deg_G: int | None = None, genus: int | None = None) -> dict:
    flags = {
        "mds": n == k + d - 1,
        "almost_mds": n == k + d,
        "griesmer_optimal": n == griesmer(q, k, d),
    }
    if deg_G is not None and genus == 1:
        flags["elliptic_optimal_cited"] = bool(
            n >= q + 3 and (2 <= deg_G <= n - q - 1 or q + 1 <= deg_G <= n - 2))
    return flags


# -- minimum distance ---------------------------------------------------------------

@dataclass
class DistanceResult:
    lower: int
    upper: int | None
    exact: bool
    method: str
    work: int = 0
    seconds: float = 0.0
    witness: list | None = None
    histogram: list | None = None

    @property
    def value(self):
        return self.lower if self.exact else None

    def to_dict(self):
        return asdict(self)


def _row_multiples(M: Matrix) -> np.ndarray:
    F = M.field
    _, mul, _, _ = F.tables()
    return mul[np.arange(F.q)[None, :, None], M.data[:, None, :]]


def weight_distribution(code) -> np.ndarray:
    """Histogram of codeword weights (index = weight) by full Gray-code enumeration."""
    M = _generator(code)
    F = M.field
    k, n = M.shape
    if k == 0:
        out = np.zeros(n + 1, dtype=np.int64)
        out[0] = 1
        return out
    _kernels.configure_threads()
    mults = _row_multiples(M)
    if F.p == 2 and F.m <= 8:
        packed = np.stack([_kernels.pack_rows(mults[i], F.m) for i in range(k)])
        return _kernels.enumerate_packed(packed, _kernels.slot_mask(n, F.m), F.m, F.q, k, n)
    add, _, neg, _ = F.tables()
    return _kernels.enumerate_generic(mults, add, neg, F.q, k, n)


def _dist_enumerate(M: Matrix) -> DistanceResult:
    t0 = time.perf_counter()
    hist = weight_distribution(M)
    nz = [w for w in range(1, len(hist)) if hist[w]]
    d = nz[0] if nz else 0
    return DistanceResult(d, d, True, "enumerate", int(hist.sum()), time.perf_counter() - t0,
                          histogram=hist.tolist())


def _dist_columns(M: Matrix, budget: int, lower: int = 1, upper: int | None = None) -> DistanceResult:
    t0 = time.perf_counter()
    F = M.field
    n = M.ncols
    Hm = linalg.kernel_basis(M)
    if Hm.nrows == 0:
        # the full space: d = 1
        return DistanceResult(1, 1, True, "column_search", 0, time.perf_counter() - t0, [0])
    add, mul, neg, inv = F.tables()
    cols = np.ascontiguousarray(Hm.data.T)
    work = 0
    w = max(1, lower)
    cap = upper if upper is not None else Hm.nrows + 1
    while w <= cap:
        status, wit = _kernels.dependent_columns(cols, w, add, mul, neg, inv, max(1, budget - work))
        work += math.comb(n, w - 1) if w > 1 else n
        if status == 1:
            cw = _codeword_on(M, Hm, [int(c) for c in wit])
            return DistanceResult(w, w, True, "column_search", work, time.perf_counter() - t0, cw)
        if status == -1:
            exact = upper is not None and w >= upper
            return DistanceResult(w, upper, exact, "column_search", work, time.perf_counter() - t0)
        w += 1
    return DistanceResult(cap, cap, upper is not None, "column_search", work, time.perf_counter() - t0)


def _codeword_on(M: Matrix, Hm: Matrix, support) -> list:
    """A codeword supported on the dependent columns `support` of the parity check."""
    F = M.field
    sub = Matrix(F, Hm.data[:, support])
    K = linalg.kernel_basis(sub)
    cw = [0] * M.ncols
    for c, v in zip(support, K.data[0]):
        cw[c] = int(v)
    return cw


def random_low_weight(code, trials: int = 200, seed: int = 1) -> tuple:
    """Upper bound on d from systematic rows and pairs over random information sets."""
    M = _generator(code)
    F = M.field
    k, n = M.shape
    rng = np.random.default_rng(seed)
    add, mul, _, _ = F.tables()
    best_w, best = n + 1, None
    for _ in range(trials):
        perm = rng.permutation(n)
        R, rk, piv = linalg.rref(Matrix(F, M.data[:, perm]))
        rows = R.data[:rk]
        inv_perm = np.argsort(perm)
        cand = [rows]
        if rk >= 2 and rk * rk * F.q * n < 2_000_000:
            for i in range(rk):
                for j in range(i + 1, rk):
                    combos = add[rows[i][None, :], mul[np.arange(1, F.q)[:, None], rows[j][None, :]]]
                    cand.append(combos)
        for block in cand:
            wts = np.count_nonzero(block, axis=1)
            idx = int(np.argmin(wts))
            if 0 < wts[idx] < best_w:
                best_w, best = int(wts[idx]), block[idx][inv_perm].tolist()
    return best_w, best


def min_distance(code, method: str = "auto", budget: int = 10 ** 9, lower: int | None = None,
                 seed: int = 1) -> DistanceResult:
    """Exact d when the chosen method fits the budget, else a bracket."""
    M = _generator(code)
    F = M.field
    k, n = M.shape
    if lower is None:
        lower = max(1, code.design_distance) if isinstance(code, GeneralizedAGCode) else 1
    if k == 0:
        raise CodeError("zero code has no minimum distance")
    enum_cost = F.q ** k
    if method == "enumerate":
        if enum_cost > budget:
            return _bracket(M, lower, seed, "enumerate")
        return _dist_enumerate(M)
    if method == "column_search":
        up, wit = random_low_weight(M, seed=seed)
        res = _dist_columns(M, budget, lower, up if up <= n else None)
        if not res.exact and res.upper is not None:
            res.witness = wit
        return res
    if method != "auto":
        raise CodeError(f"unknown method {method!r}")
    up, wit = random_low_weight(M, seed=seed)
    if up == lower:
        return DistanceResult(lower, up, True, "bound+witness", 0, 0.0, wit)
    col_cost = sum(math.comb(n, w) for w in range(lower, min(up, n) + 1))
    if enum_cost <= budget and enum_cost <= col_cost:
        return _dist_enumerate(M)
    if col_cost <= budget:
        return _dist_columns(M, budget, lower, up)
    return DistanceResult(lower, up, False, "bracket", 0, 0.0, wit)


def _bracket(M: Matrix, lower: int, seed: int, method: str) -> DistanceResult:
    up, wit = random_low_weight(M, seed=seed)
    exact = up == lower
    return DistanceResult(lower, up, exact, method + "(bracket)", 0, 0.0, wit)


def parameter_record(code: GeneralizedAGCode, dist: DistanceResult | None = None,
                     lcd: bool | None = None) -> ParameterRecord:
    F = code.field
    n, k = code.n, code.k
    rec = ParameterRecord(n, k, design_distance=code.design_distance)
    rec.lcd = is_lcd(code) if lcd is None else lcd
    if dist is not None:
        rec.d_lower, rec.d_upper = dist.lower, dist.upper
        rec.d_exact = dist.lower if dist.exact else None
    d = rec.d_exact
    if d is not None and k >= 1:
        rec.griesmer = griesmer(F.q, k, d)
        rec.flags = bounds(F.q, n, k, d, code.G.degree, code.curve.genus)
    return rec


def code_to_json(code: GeneralizedAGCode, H: Divisor | None = None, params: ParameterRecord | None = None) -> dict:
    return {
        "field": code.field.spec_string(),
        "curve": code.curve.spec_string(),
        "D_size": code.n,
        "G": code.G.to_text(),
        "H": H.to_text() if H is not None else None,
        "a": list(code.a),
        "matrix": code.generator.tolist(),
        "params": params.to_dict() if params is not None else None,
    }


def matrix_from_code_json(obj) -> tuple:
    """(generator Matrix, design distance or None) from a code JSON document."""
    from .gf import parse_field_spec

    if isinstance(obj, str):
        obj = json.loads(obj)
    F = parse_field_spec(obj["field"])
    M = Matrix(F, np.array(obj["matrix"], dtype=np.int64))
    design = None
    params = obj.get("params") or {}
    if params.get("design_distance") is not None:
        design = int(params["design_distance"])
    return M, design
