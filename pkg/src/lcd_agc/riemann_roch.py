"""Bases of Riemann-Roch spaces L(G) on the Artin-Schreier models.

Every f in L(G) is h/d with d(x) clearing the positive affine part of G and h
in the monomial space L(s O), s = m_O + w_x deg d.  Membership then reduces to
vanishing orders of h at finitely many affine places, which are linear
conditions on the series coefficients of h.  Conditions at a place of degree
e > 1 live in an extension L; each one is turned into e base-field rows via
the trace pairing z -> Tr(gamma^i z), which is nondegenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, poly
from .curve import INFINITY, PROJECTIVE_LINE, CurveError, CurveModel, Place, local_expansion
from .function_field import CurveFunction, Divisor, _series_mul, _xpoly_series, divisor_of
from .gf import GF, restriction


@dataclass(frozen=True)
class RRBasis:
    divisor: Divisor
    functions: tuple
    denominator: tuple = (1,)
    monomials: tuple = ()
    coefficients: np.ndarray | None = None   # kernel rows, one per basis function

    @property
    def dimension(self) -> int:
        return len(self.functions)

    def __len__(self):
        return len(self.functions)


def monomial_exponents(C: CurveModel, s: int):
    """(i, j) with j < deg_y and w_x i + w_y j <= s, ordered by weight."""
    if s < 0:
        return []
    wx, wy = C.weights
    if C.family == PROJECTIVE_LINE:
        return [(i, 0) for i in range(s // wx + 1)]
    out = []
    for j in range(C.deg_y):
        rest = s - wy * j
        if rest < 0:
            break
        out.extend((i, j) for i in range((rest // wx) + 1))
    return sorted(out, key=lambda ij: (wx * ij[0] + wy * ij[1], ij[1]))


def _clearing(C: CurveModel, G: Divisor):
    """Fibres of the affine support: minpoly -> max positive coefficient (0 if none)."""
    fibres = {}
    for P, m in G.items():
        if P.is_infinity:
            continue
        if not P.minpoly:
            raise CurveError(f"place {P!r} lacks a minimal polynomial")
        key = tuple(P.minpoly)
        fibres[key] = max(fibres.get(key, 0), m)
    return fibres


def _conditions(C: CurveModel, G: Divisor, fibres):
    """List of (place, required order of vanishing of h)."""
    out = []
    for pi, e in fibres.items():
        for P in C.places_over(list(pi)):
            need = e - G[P]
            if need > 0:
                out.append((P, need))
    return out


def _monomial_series(C: CurveModel, P: Place, exps, N: int):
    """Series (length N) of each monomial x^i y^j at P."""
    exp = local_expansion(C, P, N)
    L = exp.field
    imax = max(i for i, _ in exps)
    jmax = max(j for _, j in exps)
    xser = [exp.x0, 1] + [0] * max(0, N - 2)
    xser = xser[:N] if N >= 2 else [exp.x0]
    xp = [[1] + [0] * (N - 1)]
    for _ in range(imax):
        xp.append(_series_mul(L, xp[-1], xser, N))
    yp = [[1] + [0] * (N - 1)]
    ys = list(exp.coeffs)
    for _ in range(jmax):
        yp.append(_series_mul(L, yp[-1], ys, N))
    return L, [_series_mul(L, xp[i], yp[j], N) for i, j in exps]


def _descend_rows(K: GF, L: GF, rows):
    """Map K-linear rows with entries in L to base-field rows via the trace form."""
    if L == K:
        return rows
    d = L.m // K.m
    back = restriction(K, L)
    gamma = L.gen
    Q = K.q

    def trace(z):
        acc, w = 0, z
        for _ in range(d):
            acc = L.add(acc, w)
            w = L.pow(w, Q)
        return back[acc]

    out = []
    for row in rows:
        g = 1
        for _ in range(d):
            out.append([trace(L.mul(g, v)) for v in row])
            g = L.mul(g, gamma)
    return out


def constraint_matrix(C: CurveModel, G: Divisor):
    """(matrix over the base field, monomial exponents, denominator d)."""
    F = C.field
    fibres = _clearing(C, G)
    d = [1]
    for pi, e in fibres.items():
        if e > 0:
            d = poly.mul(F, d, poly.power(F, list(pi), e))
    s = G[INFINITY] + C.weights[0] * (len(d) - 1)
    exps = monomial_exponents(C, s)
    rows = []
    if exps:
        for P, need in _conditions(C, G, fibres):
            L, sers = _monomial_series(C, P, exps, need)
            block = [[sers[c][k] for c in range(len(exps))] for k in range(need)]
            rows.extend(_descend_rows(F, L, block))
    return rows, exps, d


def rr_basis(C: CurveModel, G: Divisor) -> RRBasis:
    if G.curve != C:
        raise CurveError("divisor belongs to another curve")
    F = C.field
    rows, exps, d = constraint_matrix(C, G)
    if not exps:
        return RRBasis(G, (), tuple(d), (), np.zeros((0, 0), dtype=np.int64))
    if rows:
        K = linalg.kernel_basis(linalg.Matrix(F, np.array(rows, dtype=np.int64)))
        coeffs = K.data
    else:
        coeffs = np.eye(len(exps), dtype=np.int64)
    funcs = []
    for vec in coeffs:
        funcs.append(_combine(C, exps, vec, d))
    return RRBasis(G, tuple(funcs), tuple(d), tuple(exps), coeffs)


def _combine(C: CurveModel, exps, vec, d) -> CurveFunction:
    F = C.field
    parts = [[] for _ in range(C.deg_y)]
    for (i, j), c in zip(exps, vec):
        c = int(c)
        if c:
            a = parts[j]
            if len(a) <= i:
                a.extend([0] * (i + 1 - len(a)))
            a[i] = F.add(a[i], c)
    return CurveFunction.make(C, parts, d)


def rr_dim(C: CurveModel, G: Divisor) -> int:
    return rr_basis(C, G).dimension


def speciality_index(C: CurveModel, G: Divisor) -> int:
    return rr_dim(C, G) - G.degree - 1 + C.genus


def is_non_special(C: CurveModel, G: Divisor) -> bool:
    return speciality_index(C, G) == 0


def in_space(f: CurveFunction, G: Divisor) -> bool:
    """Membership through valuations: (f) + G >= 0."""
    if f.is_zero():
        return True
    return (divisor_of(f) + G).is_effective()
