"""Curve models, places, local expansions and the elliptic group law.

All non-rational curves here are Artin-Schreier covers of the x-line,

    y^e + y = f(x),      e = deg_y (a power of the characteristic),

with a single place O at infinity where x and y have pole orders w_x and
w_y.  The cover is unramified at every affine place, so t = x - alpha is a
uniformizer there and y expands as a power series in t.

Places of degree d are stored through a canonical representative point
with coordinates in ``field.extension(d)``: the Frobenius-orbit member with
the smallest (x, y) encodings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import poly
from .gf import GF, FieldError, embedding, restriction

PROJECTIVE_LINE = "projective-line"
ELLIPTIC_AS = "elliptic-as"
HYPERELLIPTIC_AS = "hyperelliptic-as"
HERMITIAN = "hermitian"
FAMILIES = (PROJECTIVE_LINE, ELLIPTIC_AS, HYPERELLIPTIC_AS, HERMITIAN)


class CurveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Place:
    """A place of the curve.  ``x is None`` marks the place O at infinity."""

    degree: int
    x: int | None
    y: int | None = None
    minpoly: tuple = ()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self):
        if self.x is None:
            return "O"
        if self.degree == 1:
            return f"({self.x})" if self.y is None else f"({self.x},{self.y})"
        return f"deg{self.degree}[{poly.to_string(list(self.minpoly))};{self.x},{self.y}]"


INFINITY = Place(1, None)


@dataclass(frozen=True)
class LocalExpansion:
    """y = sum c_k t^k around an affine place, t = x - x0, coefficients in `field`."""

    place: Place
    field: GF
    x0: int
    order: int
    coeffs: tuple


@dataclass(frozen=True)
class CurveModel:
    family: str
    field: GF
    b: int = 0
    c: int = 0
    q: int = 0

    def __post_init__(self):
        F = self.field
        if self.family not in FAMILIES:
            raise CurveError(f"unknown curve family {self.family!r}")
        if self.family == ELLIPTIC_AS:
            if F.p != 2:
                raise CurveError("elliptic-as curves need characteristic 2")
            if not (0 <= self.b < F.q and 0 <= self.c < F.q):
                raise CurveError("coefficients out of range")
        elif self.family in (HYPERELLIPTIC_AS, HERMITIAN):
            q = self.q
            if q < 2 or q * q != F.q:
                raise CurveError(f"{self.family} with q={q} needs a field of order q^2, got {F.q}")
            if self.family == HYPERELLIPTIC_AS and (F.p != 2 or q % 2):
                raise CurveError("hyperelliptic-as needs q a power of 2")

    def __repr__(self):
        return f"CurveModel({self.spec_string()} over {self.field.spec_string()})"

    def spec_string(self) -> str:
        if self.family == ELLIPTIC_AS:
            return f"elliptic-as:b={self.b},c={self.c}"
        if self.family in (HYPERELLIPTIC_AS, HERMITIAN):
            return f"{self.family}:q={self.q}"
        return PROJECTIVE_LINE

    # invariants ---------------------------------------------------------
    @property
    def deg_y(self) -> int:
        return {PROJECTIVE_LINE: 1, ELLIPTIC_AS: 2, HYPERELLIPTIC_AS: 2}.get(self.family, self.q)

    @property
    def genus(self) -> int:
        if self.family == PROJECTIVE_LINE:
            return 0
        if self.family == ELLIPTIC_AS:
            return 1
        if self.family == HYPERELLIPTIC_AS:
            return self.q // 2
        return self.q * (self.q - 1) // 2

    @property
    def weights(self):
        """Pole orders (w_x, w_y) of x and y at O."""
        if self.family == PROJECTIVE_LINE:
            return (1, None)
        if self.family == ELLIPTIC_AS:
            return (2, 3)
        if self.family == HYPERELLIPTIC_AS:
            return (2, self.q + 1)
        return (self.q, self.q + 1)

    @cached_property
    def f_poly(self) -> list:
        """Right-hand side f(x) of y^e + y = f(x)."""
        if self.family == PROJECTIVE_LINE:
            return []
        if self.family == ELLIPTIC_AS:
            return poly.trim([self.c, self.b, 0, 1])
        return [0] * (self.q + 1) + [1]

    def fiber_value(self, x: int, L: GF | None = None) -> int:
        L = L or self.field
        return poly.evaluate(L, poly.embed(self.field, self.f_poly, L), x)

    def as_map(self, y: int, L: GF | None = None) -> int:
        """y^e + y."""
        L = L or self.field
        return L.add(L.pow(y, self.deg_y), y)

    def on_curve(self, x: int, y: int, L: GF | None = None) -> bool:
        if self.family == PROJECTIVE_LINE:
            return True
        L = L or self.field
        return self.as_map(y, L) == self.fiber_value(x, L)

    # rational points ----------------------------------------------------
    @cached_property
    def _preimages(self) -> dict:
        table = {}
        for y in range(self.field.q):
            table.setdefault(self.as_map(y), []).append(y)
        return table

    def points_above_x(self, alpha: int) -> list:
        """Rational places over x = alpha, sorted by y."""
        F = self.field
        if self.family == PROJECTIVE_LINE:
            return [Place(1, alpha, None, (F.neg(alpha), 1))]
        ys = self._preimages.get(self.fiber_value(alpha), [])
        mp = (F.neg(alpha), 1)
        return [Place(1, alpha, y, mp) for y in ys]

    def x_support(self) -> list:
        """The set S of x-coordinates of affine rational points."""
        return [a for a in range(self.field.q) if self.points_above_x(a)]

    @cached_property
    def _points(self) -> tuple:
        pts = [INFINITY]
        for a in range(self.field.q):
            pts.extend(self.points_above_x(a))
        n = len(pts)
        if not hasse_weil_ok(n, self.field.q, self.genus):
            raise CurveError(f"{n} points violate the Hasse-Weil bound")
        return tuple(pts)

    def enumerate_points(self) -> list:
        return list(self._points)

    def affine_points(self) -> list:
        return list(self._points[1:])

    def point(self, x: int, y: int | None = None) -> Place:
        """The rational place (x, y), validated."""
        if self.family == PROJECTIVE_LINE:
            return Place(1, x, None, (self.field.neg(x), 1))
        if not self.on_curve(x, y):
            raise CurveError(f"({x},{y}) is not on {self}")
        return Place(1, x, y, (self.field.neg(x), 1))

    def plus_minus(self, alpha: int):
        """(P_alpha^+, P_alpha^-): smaller y encoding is '+'."""
        pts = self.points_above_x(alpha)
        if len(pts) != 2:
            raise CurveError(f"x={alpha} does not carry exactly two rational points")
        return pts[0], pts[1]

    # places of any degree ------------------------------------------------
    def places_over(self, pi) -> list:
        """All places above the irreducible monic x-polynomial pi."""
        return list(_places_over(self, tuple(pi)))

    def place_at(self, x: int, y: int | None, L: GF) -> Place:
        """Canonical place of the geometric point (x, y) with coordinates in L."""
        return _canonical_place(self, x, y, L)

    def residue_field(self, P: Place) -> GF:
        return self.field.extension(P.degree)


def hasse_weil_ok(n: int, q: int, g: int) -> bool:
    diff = n - (q + 1)
    return diff * diff <= 4 * g * g * q


def make_curve(family: str, field: GF, **params) -> CurveModel:
    family = family.replace("_", "-").lower()
    if family == ELLIPTIC_AS:
        return CurveModel(family, field, b=int(params.get("b", 0)), c=int(params.get("c", 0)))
    if family in (HYPERELLIPTIC_AS, HERMITIAN):
        return CurveModel(family, field, q=int(params["q"]))
    if family == PROJECTIVE_LINE:
        return CurveModel(family, field)
    raise CurveError(f"unknown curve family {family!r}")


def parse_curve_spec(text: str, field: GF) -> CurveModel:
    """'elliptic-as:b=0,c=8', 'hyperelliptic-as:q=4', 'hermitian:q=3', 'projective-line'."""
    mt = re.fullmatch(r"\s*([a-z_-]+)\s*(?::(.*))?", text)
    if not mt:
        raise CurveError(f"malformed curve spec {text!r}")
    params = {}
    if mt.group(2):
        for item in mt.group(2).split(","):
            if "=" not in item:
                raise CurveError(f"malformed curve parameter {item!r}")
            k, v = item.split("=", 1)
            params[k.strip()] = int(v)
    try:
        return make_curve(mt.group(1), field, **params)
    except KeyError as exc:
        raise CurveError(f"missing curve parameter {exc}") from None


# -- higher-degree places -----------------------------------------------------------

def _solve_as(C: CurveModel, c: int, L: GF) -> list:
    """All y in L with y^e + y = c, ascending."""
    if L.q <= 4096:
        return list(_as_table(C, L).get(c, ()))
    return _solve_additive(L, lambda y: C.as_map(y, L), c)


@lru_cache(maxsize=None)
def _as_table(C: CurveModel, L: GF) -> dict:
    table = {}
    for y in range(L.q):
        table.setdefault(C.as_map(y, L), []).append(y)
    return {k: tuple(v) for k, v in table.items()}


def _solve_additive(L: GF, fn, c: int) -> list:
    """Solutions of fn(y) = c for a GF(p)-linear fn on L (Gaussian elimination mod p)."""
    p, M = L.p, L.m
    cols = [L.coeffs(fn(p ** i)) for i in range(M)]
    target = L.coeffs(c)
    # augmented system A x = target, A[r][i] = cols[i][r]
    rows = [[cols[i][r] for i in range(M)] + [target[r]] for r in range(M)]
    piv_cols = []
    r = 0
    for col in range(M):
        pr = next((k for k in range(r, M) if rows[k][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for k in range(M):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(rows[k][M] for k in range(r, M)):
        return []
    free = [i for i in range(M) if i not in piv_cols]
    part = [0] * M
    for k, col in enumerate(piv_cols):
        part[col] = rows[k][M]
    kernel = []
    for fc in free:
        v = [0] * M
        v[fc] = 1
        for k, col in enumerate(piv_cols):
            v[col] = (-rows[k][fc]) % p
        kernel.append(v)
    sols = []

    def rec(i, acc):
        if i == len(kernel):
            sols.append(L.from_coeffs(acc))
            return
        for t in range(p):
            rec(i + 1, [(a + t * b) % p for a, b in zip(acc, kernel[i])])

    rec(0, part)
    return sorted(sols)


def _orbit(L: GF, q: int, x: int, y: int | None):
    pts = []
    cx, cy = x, y
    while True:
        pts.append((cx, cy))
        cx = L.pow(cx, q)
        cy = None if cy is None else L.pow(cy, q)
        if (cx, cy) == (x, y):
            return pts


def _minpoly_from_orbit(C: CurveModel, L: GF, xs) -> tuple:
    F = C.field
    conj = sorted(set(xs))
    pol = poly.from_roots(L, conj)
    back = restriction(F, L)
    try:
        return tuple(back[c] for c in pol)
    except KeyError:
        raise CurveError("minimal polynomial does not descend to the base field") from None


def _canonical_place(C: CurveModel, x: int, y, L: GF) -> Place:
    F = C.field
    if L.m % F.m:
        raise FieldError(f"{L} is not an extension of {F}")
    if y is not None and not C.on_curve(x, y, L):
        raise CurveError("point is not on the curve")
    if C.family == PROJECTIVE_LINE:
        y = None
    orbit = _orbit(L, F.q, x, y)
    d = len(orbit)
    mp = _minpoly_from_orbit(C, L, [pt[0] for pt in orbit])
    Ld = F.extension(d)
    if Ld != L:
        back = restriction(Ld, L)
        orbit = [(back[a], None if b is None else back[b]) for a, b in orbit]
    if d == 1:
        bx, by = orbit[0]
        return Place(1, bx, by, mp)
    bx, by = min(orbit, key=lambda pt: (pt[0], -1 if pt[1] is None else pt[1]))
    return Place(d, bx, by, mp)


@lru_cache(maxsize=None)
def _places_over(C: CurveModel, pi: tuple) -> tuple:
    F = C.field
    pi = list(pi)
    dx = len(pi) - 1
    if dx < 1 or pi[-1] != 1:
        raise CurveError("places_over needs a monic polynomial of positive degree")
    if dx == 1:
        alpha = F.neg(pi[0])
        pts = C.points_above_x(alpha)
        if pts or C.family == PROJECTIVE_LINE:
            return tuple(pts)
    if not poly.is_irreducible(F, pi):
        raise CurveError("polynomial is not irreducible over the base field")
    L = F.extension(dx)
    rts = poly.roots_in_extension(F, pi, L)
    theta = rts[0]
    if C.family == PROJECTIVE_LINE:
        return (_canonical_place(C, theta, None, L),)
    sols = _solve_as(C, C.fiber_value(theta, L), L)
    if not sols:
        L2 = F.extension(dx * F.p)
        theta = embedding(L, L2)[theta]
        L = L2
        sols = _solve_as(C, C.fiber_value(theta, L), L)
        if not sols:
            raise CurveError("fiber has no points in the expected extension")
    places = {_canonical_place(C, theta, y, L) for y in sols}
    return tuple(sorted(places))


def make_higher_degree_place(C: CurveModel, minpoly, branch: int = 0) -> Place:
    """Place above the smallest root of `minpoly` picking the branch-th fiber point."""
    F = C.field
    pi = poly.monic(F, poly.trim(list(minpoly)))
    if not poly.is_irreducible(F, pi):
        raise CurveError("minimal polynomial is reducible")
    d = len(pi) - 1
    L = F.extension(d)
    theta = poly.roots_in_extension(F, pi, L)[0]
    if C.family == PROJECTIVE_LINE:
        return _canonical_place(C, theta, None, L)
    sols = _solve_as(C, C.fiber_value(theta, L), L)
    if not 0 <= branch < len(sols):
        raise CurveError(f"branch {branch} out of range ({len(sols)} fiber points of degree {d})")
    return _canonical_place(C, theta, sols[branch], L)


def representative_points(C: CurveModel, P: Place):
    """All geometric points (x, y) of the place, in its residue field."""
    L = C.residue_field(P)
    return _orbit(L, C.field.q, P.x, P.y)


# -- local expansions ----------------------------------------------------------------

def local_expansion(C: CurveModel, P: Place, order: int, point=None) -> LocalExpansion:
    """Series of y in t = x - x0 at an affine place, `order` coefficients.

    `point` optionally selects another conjugate representative (x0, y0).
    """
    if P.is_infinity:
        raise CurveError("no local expansion at O; it is handled through pole weights")
    L = C.residue_field(P)
    x0, y0 = point if point is not None else (P.x, P.y)
    if C.family == PROJECTIVE_LINE:
        return LocalExpansion(P, L, x0, order, ())
    coeffs = _y_series(C, L, x0, y0, order)
    return LocalExpansion(P, L, x0, order, tuple(coeffs))


def _y_series(C: CurveModel, L: GF, x0: int, y0: int, order: int) -> list:
    fk = poly.taylor(L, poly.embed(C.field, C.f_poly, L), x0)
    e = C.deg_y
    cs = [y0]
    for k in range(1, order):
        v = fk[k] if k < len(fk) else 0
        if k % e == 0:
            v = L.sub(v, L.pow(cs[k // e], e))
        cs.append(v)
    return cs[:order]


# -- elliptic group law -----------------------------------------------------------------

def _check_elliptic(C: CurveModel):
    if C.family != ELLIPTIC_AS:
        raise CurveError("group law needs an elliptic-as curve")


def _check_point(C: CurveModel, P: Place):
    if P.is_infinity:
        return
    if P.degree != 1 or not C.on_curve(P.x, P.y):
        raise CurveError(f"{P} is not a rational point of {C}")


def elliptic_neg(C: CurveModel, P: Place) -> Place:
    _check_elliptic(C)
    if P.is_infinity:
        return P
    return Place(1, P.x, P.y ^ 1, P.minpoly)


def _ec_add(C: CurveModel, L: GF, p1, p2):
    """Chord-tangent law on affine coordinates over L; None stands for O."""
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    emb = embedding(C.field, L)
    b = emb[C.b]
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if y1 != y2:
            return None
        # tangent: 2y + a1 x + a3 = 1 never vanishes
        lam = L.add(L.mul(x1, x1), b)
        nu = L.add(L.add(L.mul(L.mul(x1, x1), x1), L.mul(b, x1)), y1)
    else:
        den = L.inv(L.add(x1, x2))
        lam = L.mul(L.add(y1, y2), den)
        nu = L.mul(L.add(L.mul(y1, x2), L.mul(y2, x1)), den)
    x3 = L.add(L.add(L.mul(lam, lam), x1), x2)
    y3 = L.add(L.add(L.mul(lam, x3), nu), 1)
    return x3, y3


def elliptic_add(C: CurveModel, P: Place, Q: Place) -> Place:
    """Chord-tangent law on y^2 + y = x^3 + b x + c (a1 = a2 = 0, a3 = 1)."""
    _check_elliptic(C)
    _check_point(C, P)
    _check_point(C, Q)
    F = C.field
    r = _ec_add(C, F, None if P.is_infinity else (P.x, P.y), None if Q.is_infinity else (Q.x, Q.y))
    if r is None:
        return INFINITY
    return Place(1, r[0], r[1], (F.neg(r[0]), 1))


def place_point_sum(C: CurveModel, P: Place) -> Place:
    """Rational point equal to the group-law sum of the conjugate points of P."""
    _check_elliptic(C)
    if P.is_infinity or P.degree == 1:
        return P
    L = C.residue_field(P)
    acc = None
    for pt in representative_points(C, P):
        acc = _ec_add(C, L, acc, pt)
    if acc is None:
        return INFINITY
    back = restriction(C.field, L)
    x, y = back[acc[0]], back[acc[1]]
    return Place(1, x, y, (C.field.neg(x), 1))


def elliptic_mul(C: CurveModel, P: Place, k: int) -> Place:
    if k < 0:
        return elliptic_mul(C, elliptic_neg(C, P), -k)
    acc = INFINITY
    base = P
    while k:
        if k & 1:
            acc = elliptic_add(C, acc, base)
        base = elliptic_add(C, base, base)
        k >>= 1
    return acc


def torsion_test(C: CurveModel, P: Place, r: int) -> bool:
    """True iff r * P = O (rational P only)."""
    if r < 0:
        raise CurveError("torsion order must be non-negative")
    return elliptic_mul(C, P, r).is_infinity


def group_order(C: CurveModel) -> int:
    return len(C.enumerate_points())


# -- tabulated point counts of y^2 + y = x^3 + b x + c over GF(2^m) ---------------------------

@dataclass(frozen=True)
class CountRow:
    """One family of char-2 elliptic curves with a closed-form point count.

    `coeffs(F)` returns (b, c); `count(m)` returns #E(GF(2^m)) or None when m
    is outside the row's range.
    """
    label: str
    coeffs: object
    count: object


def _trace_one(F: GF) -> int:
    return next(a for a in range(F.q) if F.trace(a) == 1)


def _isqrt_exact(v: int) -> int:
    r = int(v ** 0.5 + 0.5)
    assert r * r == v
    return r


def _count_x3(m):
    q = 2 ** m
    if m % 2:
        return q + 1
    s = _isqrt_exact(q)
    return q + 1 - 2 * s if m % 4 == 0 else q + 1 + 2 * s


def _count_x3_x(sign17):
    def count(m):
        if m % 2 == 0:
            return None
        q = 2 ** m
        s = _isqrt_exact(2 * q)
        return q + 1 + (sign17 if m % 8 in (1, 7) else -sign17) * s
    return count


def _count_delta(m):
    return 2 ** m + 1 if m % 2 == 0 else None


def _count_omega(m):
    if m % 2:
        return None
    q = 2 ** m
    s = _isqrt_exact(q)
    return q + 1 + 2 * s if m % 4 == 0 else q + 1 - 2 * s


COUNT_TABLE = (
    CountRow("y^2+y=x^3", lambda F: (0, 0), _count_x3),
    CountRow("y^2+y=x^3+x", lambda F: (1, 0), _count_x3_x(+1)),
    CountRow("y^2+y=x^3+x+1", lambda F: (1, 1), _count_x3_x(-1)),
    CountRow("y^2+y=x^3+delta*x, Tr(delta)=1", lambda F: (_trace_one(F), 0), _count_delta),
    CountRow("y^2+y=x^3+omega, Tr(omega)=1", lambda F: (0, _trace_one(F)), _count_omega),
)


def tabulated_count_check(row: CountRow, m: int):
    """(closed form, enumerated count) for one row at GF(2^m); None if m is out of range."""
    expected = row.count(m)
    if expected is None:
        return None
    from .gf import create_field

    F = create_field(2, m)
    b, c = row.coeffs(F)
    C = make_curve(ELLIPTIC_AS, F, b=b, c=c)
    return expected, len(C.enumerate_points())
