"""Divisors, functions h(x, y)/d(x) on a curve, valuations and differentials f dx.

A function is stored as a numerator sum_j a_j(x) y^j with j < deg_y, reduced
through y^e = f(x) - y, over a monic denominator in x alone.  Common x-factors
are cancelled, so the representation is unique.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import poly
from .curve import (
    ELLIPTIC_AS,
    INFINITY,
    PROJECTIVE_LINE,
    CurveError,
    CurveModel,
    Place,
    elliptic_add,
    elliptic_mul,
    local_expansion,
    place_point_sum,
)
from .gf import GF


class DivisorError(ValueError):
    pass


# -- divisors ----------------------------------------------------------------------------

class Divisor:
    """Finite formal sum of places with integer coefficients (zero entries dropped)."""

    __slots__ = ("curve", "_c")

    def __init__(self, curve: CurveModel, coeffs=None):
        self.curve = curve
        c = {}
        for P, v in (coeffs or {}).items():
            if v:
                c[P] = c.get(P, 0) + int(v)
        self._c = {P: v for P, v in c.items() if v}

    @classmethod
    def zero(cls, curve):
        return cls(curve)

    @classmethod
    def of(cls, curve, *terms):
        """Divisor.of(C, (3, O), (2, P)) == 3O + 2P."""
        out = {}
        for v, P in terms:
            out[P] = out.get(P, 0) + v
        return cls(curve, out)

    @classmethod
    def sum_of(cls, curve, places, coeff=1):
        return cls.of(curve, *((coeff, P) for P in places))

    def _check(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        if other.curve != self.curve:
            raise DivisorError("divisors on different curves")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._c)
        for P, v in other._c.items():
            out[P] = out.get(P, 0) + v
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {P: -v for P, v in self._c.items()})

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __mul__(self, k: int):
        return Divisor(self.curve, {P: k * v for P, v in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.curve == other.curve and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __getitem__(self, P: Place) -> int:
        return self._c.get(P, 0)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        return sorted(self._c.items(), key=lambda kv: _place_key(kv[0]))

    @property
    def support(self):
        return [P for P, _ in self.items()]

    @property
    def degree(self) -> int:
        return sum(v * P.degree for P, v in self._c.items())

    def is_effective(self) -> bool:
        """All coefficients >= 0 (the zero divisor counts)."""
        return all(v > 0 for v in self._c.values())

    def is_zero(self) -> bool:
        return not self._c

    def positive_part(self):
        return Divisor(self.curve, {P: v for P, v in self._c.items() if v > 0})

    def to_text(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{v}*{P!r}" for P, v in self.items()).replace("+ -", "- ")

    def __repr__(self):
        return f"Divisor({self.to_text()})"


def _place_key(P: Place):
    if P.is_infinity:
        return (0, 0, 0, 0)
    return (1, P.degree, P.x, -1 if P.y is None else P.y)


def degree(A: Divisor) -> int:
    return A.degree


def gcd_divisor(A: Divisor, B: Divisor) -> Divisor:
    A._check(B)
    keys = set(A._c) | set(B._c)
    return Divisor(A.curve, {P: min(A[P], B[P]) for P in keys})


def lmd_divisor(A: Divisor, B: Divisor) -> Divisor:
    A._check(B)
    keys = set(A._c) | set(B._c)
    return Divisor(A.curve, {P: max(A[P], B[P]) for P in keys})


_PLACE_RE = re.compile(r"O|\((\d+)(?:,(\d+))?\)|deg(\d+)\[([^;\]]+);(\d+),(\d+)\]")


def parse_divisor(C: CurveModel, text: str) -> Divisor:
    """Inverse of Divisor.to_text; accepts '4*O + 4*(2,0)' and 'deg3[...;x,y]' places."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Divisor(C)
    term = r"([+-]?)(\d*)\*?(O|\(\d+(?:,\d+)?\)|deg\d+\[[^\]]*\])"
    if not re.fullmatch(f"(?:{term})+", s):
        raise DivisorError(f"malformed divisor {text!r}")
    terms = re.findall(term, s)
    out = {}
    for sign, coef, ptxt in terms:
        v = int(coef) if coef else 1
        if sign == "-":
            v = -v
        P = parse_place(C, ptxt)
        out[P] = out.get(P, 0) + v
    return Divisor(C, out)


def parse_place(C: CurveModel, text: str) -> Place:
    mt = _PLACE_RE.fullmatch(text.replace(" ", ""))
    if not mt:
        raise DivisorError(f"malformed place {text!r}")
    if text.strip() == "O":
        return INFINITY
    if mt.group(1) is not None:
        x = int(mt.group(1))
        y = None if mt.group(2) is None else int(mt.group(2))
        return C.point(x, y)
    d = int(mt.group(3))
    L = C.field.extension(d)
    P = C.place_at(int(mt.group(5)), int(mt.group(6)), L)
    if P.degree != d:
        raise DivisorError(f"point does not define a degree-{d} place")
    return P


# -- functions -------------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveFunction:
    curve: CurveModel
    num: tuple          # tuple of x-polys (tuples), index = power of y
    den: tuple = (1,)

    @classmethod
    def make(cls, C: CurveModel, num, den=(1,)):
        """Reduce and normalise numerator parts / denominator."""
        F = C.field
        parts = [poly.trim(list(a)) for a in num]
        parts = _reduce_y(C, parts)
        den = poly.trim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not any(parts):
            return cls(C, (), (1,))
        # cancel common x-factors between all numerator parts and the denominator
        g = den
        for a in parts:
            if a:
                g = poly.gcd(F, g, a)
                if len(g) == 1:
                    break
        if len(g) > 1:
            parts = [poly.divmod_(F, a, g)[0] if a else [] for a in parts]
            den = poly.divmod_(F, den, g)[0]
        lc = den[-1]
        if lc != 1:
            inv = F.inv(lc)
            den = poly.scale(F, den, inv)
            parts = [poly.scale(F, a, inv) for a in parts]
        while parts and not parts[-1]:
            parts.pop()
        return cls(C, tuple(tuple(a) for a in parts), tuple(den))

    @classmethod
    def constant(cls, C, c: int):
        return cls.make(C, [[c]])

    @classmethod
    def x_poly(cls, C, a, den=(1,)):
        return cls.make(C, [list(a)], den)

    @classmethod
    def x(cls, C):
        return cls.make(C, [[0, 1]])

    @classmethod
    def y(cls, C):
        if C.family == PROJECTIVE_LINE:
            raise CurveError("the projective line has no y coordinate")
        return cls.make(C, [[], [1]])

    @classmethod
    def monomial(cls, C, i: int, j: int, c: int = 1):
        parts = [[] for _ in range(j)] + [[0] * i + [c]]
        return cls.make(C, parts)

    # arithmetic
    @property
    def field(self) -> GF:
        return self.curve.field

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = _coerce(self, other)
        F = self.field
        n = max(len(self.num), len(other.num))
        a = [list(self.num[j]) if j < len(self.num) else [] for j in range(n)]
        b = [list(other.num[j]) if j < len(other.num) else [] for j in range(n)]
        if self.den == other.den:
            return CurveFunction.make(self.curve, [poly.add(F, u, v) for u, v in zip(a, b)], self.den)
        parts = [poly.add(F, poly.mul(F, u, list(other.den)), poly.mul(F, v, list(self.den))) for u, v in zip(a, b)]
        return CurveFunction.make(self.curve, parts, poly.mul(F, list(self.den), list(other.den)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return CurveFunction(self.curve, tuple(tuple(poly.neg(F, list(a))) for a in self.num), self.den)

    def __sub__(self, other):
        return self + (-_coerce(self, other))

    def __rsub__(self, other):
        return _coerce(self, other) - self

    def __mul__(self, other):
        other = _coerce(self, other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return CurveFunction(self.curve, (), (1,))
        prod = [[] for _ in range(len(self.num) + len(other.num) - 1)]
        for i, u in enumerate(self.num):
            if u:
                for j, v in enumerate(other.num):
                    if v:
                        prod[i + j] = poly.add(F, prod[i + j], poly.mul(F, list(u), list(v)))
        return CurveFunction.make(self.curve, prod, poly.mul(F, list(self.den), list(other.den)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CurveFunction.constant(self.curve, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        return self * _coerce(self, other).inverse()

    def inverse(self):
        """1/h = (product of the other conjugates of h) / Norm(h)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        C = self.curve
        h = CurveFunction(C, self.num, (1,))
        others = CurveFunction.constant(C, 1)
        for eps in _as_kernel(C)[1:]:
            others = others * _shift_y(h, eps)
        nrm = (h * others)
        if len(nrm.num) > 1:
            raise AssertionError("norm did not descend to F[x]")
        N = list(nrm.num[0])
        return CurveFunction.make(C, [poly.mul(self.field, list(a), list(self.den)) for a in others.num] or [[]], N)

    def numerator_function(self):
        return CurveFunction(self.curve, self.num, (1,))

    def weight(self) -> int:
        """Pole order at O of the numerator."""
        return numerator_weight(self.curve, self.num)

    def leading_coefficient(self) -> int:
        C = self.curve
        wx, wy = C.weights
        best, coef = None, 0
        for j, a in enumerate(self.num):
            if a:
                w = wx * (len(a) - 1) + (wy or 0) * j
                if best is None or w > best:
                    best, coef = w, a[-1]
        return coef

    def normalized(self):
        lc = self.leading_coefficient()
        if lc in (0, 1):
            return self
        return self * CurveFunction.constant(self.curve, self.field.inv(lc))

    def to_text(self) -> str:
        terms = []
        for j, a in enumerate(self.num):
            if not a:
                continue
            xs = poly.to_string(list(a))
            if j == 0:
                terms.append(xs)
            else:
                ypow = "y" if j == 1 else f"y^{j}"
                terms.append(ypow if xs == "1" else f"({xs})*{ypow}")
        numtxt = " + ".join(terms) or "0"
        if self.den == (1,):
            return numtxt
        return f"({numtxt})/({poly.to_string(list(self.den))})"

    def __repr__(self):
        return f"CurveFunction({self.to_text()})"


def _coerce(f: CurveFunction, other) -> CurveFunction:
    if isinstance(other, CurveFunction):
        if other.curve != f.curve:
            raise CurveError("functions on different curves")
        return other
    if isinstance(other, int):
        return CurveFunction.constant(f.curve, other)
    return NotImplemented


def _reduce_y(C: CurveModel, parts):
    """Rewrite y^e = f(x) - y until the y-degree is below deg_y."""
    e = C.deg_y
    if len(parts) <= e:
        return parts
    F = C.field
    parts = [list(a) for a in parts]
    fx = C.f_poly
    for j in range(len(parts) - 1, e - 1, -1):
        a = parts[j]
        if not a:
            continue
        parts[j] = []
        parts[j - e] = poly.add(F, parts[j - e], poly.mul(F, a, fx))
        parts[j - e + 1] = poly.sub(F, parts[j - e + 1], a)
    return parts[:e]


@lru_cache(maxsize=None)
def _as_kernel(C: CurveModel) -> tuple:
    """Roots of Y^e + Y in the base field (0 first)."""
    if C.family == PROJECTIVE_LINE:
        return (0,)
    return tuple(sorted(C._preimages.get(0, [])))


def _shift_y(h: CurveFunction, eps: int) -> CurveFunction:
    """h(x, y + eps)."""
    C = h.curve
    ye = CurveFunction.y(C) + eps
    out = CurveFunction(C, (), (1,))
    power = CurveFunction.constant(C, 1)
    for a in h.num:
        if a:
            out = out + CurveFunction.x_poly(C, a) * power
        power = power * ye
    return out


def numerator_weight(C: CurveModel, parts) -> int:
    wx, wy = C.weights
    best = None
    for j, a in enumerate(parts):
        if a:
            w = wx * (len(a) - 1) + (wy or 0) * j
            best = w if best is None else max(best, w)
    if best is None:
        raise ValueError("weight of the zero polynomial")
    return best


def norm_x(h: CurveFunction):
    """Norm of the numerator down to F[x]: product over y -> y + eps."""
    C = h.curve
    g = CurveFunction(C, h.num, (1,))
    acc = g
    for eps in _as_kernel(C)[1:]:
        acc = acc * _shift_y(g, eps)
    if len(acc.num) > 1:
        raise AssertionError("norm did not descend to F[x]")
    return list(acc.num[0]) if acc.num else []


# -- series at affine places ------------------------------------------------------------

def _series_mul(L: GF, a, b, N: int):
    out = [0] * N
    for i, ai in enumerate(a[:N]):
        if ai:
            for j in range(min(len(b), N - i)):
                bj = b[j]
                if bj:
                    out[i + j] = L.add(out[i + j], L.mul(ai, bj))
    return out


def _series_inv(L: GF, a, N: int):
    if not a or a[0] == 0:
        raise ZeroDivisionError("series with zero constant term")
    inv0 = L.inv(a[0])
    out = [inv0] + [0] * (N - 1)
    for k in range(1, N):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i] and out[k - i]:
                acc = L.add(acc, L.mul(a[i], out[k - i]))
        out[k] = L.neg(L.mul(acc, inv0))
    return out


def _xpoly_series(C: CurveModel, a, L: GF, x0: int, N: int):
    s = poly.taylor(L, poly.embed(C.field, list(a), L), x0)
    return (s + [0] * N)[:N]


def numerator_series(C: CurveModel, parts, P: Place, N: int, point=None):
    """First N coefficients of sum_j a_j(x) y^j in t = x - x0 at P."""
    exp = local_expansion(C, P, N, point)
    L = exp.field
    ys = list(exp.coeffs)
    out = [0] * N
    ypow = [1] + [0] * (N - 1)
    for j, a in enumerate(parts):
        if j:
            ypow = _series_mul(L, ypow, ys, N)
        if a:
            term = _series_mul(L, _xpoly_series(C, a, L, exp.x0, N), ypow, N)
            out = [L.add(u, v) for u, v in zip(out, term)]
    return out


def laurent_series(f: CurveFunction, P: Place, N: int, point=None):
    """(k, coeffs): f = sum_i coeffs[i] t^(i-k), coefficients up to t^(N-1)."""
    C = f.curve
    if P.is_infinity:
        raise CurveError("series at O are not supported")
    F = C.field
    pi = list(P.minpoly)
    den = list(f.den)
    k = poly.multiplicity(F, den, pi)
    u = den
    for _ in range(k):
        u = poly.divmod_(F, u, pi)[0]
    L = C.residue_field(P)
    x0 = point[0] if point is not None else P.x
    # pi(x0 + t) = t * unit(t); strip that unit too
    pser = _xpoly_series(C, pi, L, x0, N + k + 1)
    assert pser[0] == 0
    punit = pser[1:]
    total = N + k
    hs = numerator_series(C, f.num, P, total, point) if f.num else [0] * total
    useries = _xpoly_series(C, u, L, x0, total)
    denser = [1] + [0] * (total - 1)
    for _ in range(k):
        denser = _series_mul(L, denser, punit, total)
    denser = _series_mul(L, denser, useries, total)
    return k, _series_mul(L, hs, _series_inv(L, denser, total), total)


def valuation(f: CurveFunction, P: Place) -> int:
    C = f.curve
    if f.is_zero():
        raise ValueError("valuation of the zero function")
    if P.is_infinity:
        return -numerator_weight(C, f.num) + C.weights[0] * (len(f.den) - 1)
    F = C.field
    vden = poly.multiplicity(F, list(f.den), list(P.minpoly))
    return _numerator_valuation(C, f.num, P) - vden


def _numerator_valuation(C: CurveModel, parts, P: Place) -> int:
    bound = numerator_weight(C, parts) // P.degree + 1
    ser = numerator_series(C, parts, P, bound)
    for i, c in enumerate(ser):
        if c:
            return i
    raise AssertionError("series vanished beyond the degree bound")


def _x_poly_divisor(C: CurveModel, a) -> Divisor:
    """(a(x)) for a polynomial in x."""
    F = C.field
    out = {INFINITY: -C.weights[0] * (len(a) - 1)}
    for pi, e in poly.factor(F, a):
        for P in C.places_over(pi):
            out[P] = out.get(P, 0) + e
    return Divisor(C, out)


def divisor_of(f: CurveFunction) -> Divisor:
    if f.is_zero():
        raise ValueError("divisor of the zero function")
    C = f.curve
    F = C.field
    h = CurveFunction(C, f.num, (1,))
    if len(f.num) == 1:
        div_num = _x_poly_divisor(C, list(f.num[0]))
    else:
        zeros = {INFINITY: -numerator_weight(C, f.num)}
        for pi, _ in poly.factor(F, norm_x(h)):
            for P in C.places_over(pi):
                v = _numerator_valuation(C, f.num, P)
                if v:
                    zeros[P] = v
        div_num = Divisor(C, zeros)
    out = div_num - _x_poly_divisor(C, list(f.den))
    if out.degree != 0:
        raise AssertionError(f"principal divisor of degree {out.degree}")
    return out


def evaluate(f: CurveFunction, P: Place, point=None) -> int:
    """f(P) in the residue field of P; raises if P is a pole."""
    C = f.curve
    if P.is_infinity:
        v = valuation(f, P) if not f.is_zero() else 1
        if v < 0:
            raise ZeroDivisionError("pole at O")
        if v > 0:
            return 0
        # value at O of a degree-0 ratio: leading coefficients
        return C.field.div(f.leading_coefficient(), f.den[-1])
    if f.is_zero():
        return 0
    L = C.residue_field(P)
    x0, y0 = point if point is not None else (P.x, P.y)
    dval = poly.evaluate(L, poly.embed(C.field, list(f.den), L), x0)
    if dval:
        acc = 0
        ypow = 1
        for a in f.num:
            if a:
                av = poly.evaluate(L, poly.embed(C.field, list(a), L), x0)
                acc = L.add(acc, L.mul(av, ypow))
            if y0 is not None:
                ypow = L.mul(ypow, y0)
        return L.div(acc, dval)
    k, ser = laurent_series(f, P, 1, point)
    if any(ser[:k]):
        raise ZeroDivisionError(f"{P!r} is a pole")
    return ser[k]


# -- elliptic principality ----------------------------------------------------------------

def class_point(A: Divisor) -> Place:
    """Group-law sum of A's places, weighted by coefficients.

    A place of degree d contributes the sum of its d conjugate points, which
    is rational.
    """
    C = A.curve
    if C.family != ELLIPTIC_AS:
        raise CurveError("class_point needs an elliptic curve")
    acc = INFINITY
    for P, v in A.items():
        if P.is_infinity:
            continue
        acc = elliptic_add(C, acc, elliptic_mul(C, place_point_sum(C, P), v))
    return acc


def is_principal(A: Divisor) -> bool:
    return A.degree == 0 and class_point(A).is_infinity


def function_with_divisor(delta: Divisor) -> CurveFunction:
    """The f (leading monomial coefficient 1) with (f) = delta."""
    from .riemann_roch import rr_basis

    C = delta.curve
    if C.family == ELLIPTIC_AS and not is_principal(delta):
        raise DivisorError("divisor is not principal")
    if delta.degree != 0:
        raise DivisorError("divisor is not principal")
    B = rr_basis(C, -delta)
    if B.dimension != 1:
        raise DivisorError("divisor is not principal")
    return B.functions[0].normalized()


# -- differentials ----------------------------------------------------------------------

@dataclass(frozen=True)
class Differential:
    """omega = f dx."""

    f: CurveFunction

    def __post_init__(self):
        if self.f.is_zero():
            raise ValueError("zero differential")

    @property
    def curve(self):
        return self.f.curve


def dx_divisor(C: CurveModel) -> Divisor:
    if C.family == PROJECTIVE_LINE:
        return Divisor.of(C, (-2, INFINITY))
    if C.family == ELLIPTIC_AS:
        return Divisor(C)
    return Divisor.of(C, (2 * C.genus - 2, INFINITY))


def differential_divisor(w: Differential) -> Divisor:
    C = w.curve
    out = divisor_of(w.f) + dx_divisor(C)
    if out.degree != 2 * C.genus - 2:
        raise AssertionError("canonical divisor has the wrong degree")
    return out


def residue(w: Differential, P: Place) -> int:
    """Coefficient of t^-1 in f at a degree-one affine place (t = x - alpha, dx = dt)."""
    if P.is_infinity or P.degree != 1:
        raise CurveError("residues are computed at degree-one affine places only")
    k, ser = laurent_series(w.f, P, 1)
    return ser[k - 1] if k >= 1 else 0


def residue_simple_poles(F: GF, roots, alpha: int) -> int:
    """Residue of dx / prod(x - r) at x = alpha, a root: 1/prod_{r != alpha}(alpha - r)."""
    acc = 1
    for r in roots:
        if r != alpha:
            acc = F.mul(acc, F.sub(alpha, r))
    return F.inv(acc)


def product_differential(C: CurveModel, roots) -> Differential:
    """dx / prod(x - r)."""
    return Differential(CurveFunction.x_poly(C, [1], poly.from_roots(C.field, roots)))


def xq_differential(C: CurveModel) -> Differential:
    """dx / (x^Q - x), Q the base field order."""
    F = C.field
    den = [0, F.neg(1)] + [0] * (F.q - 2) + [1]
    return Differential(CurveFunction.x_poly(C, [1], den))
