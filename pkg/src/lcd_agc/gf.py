"""Exact arithmetic in GF(p^m) with an explicit polynomial-basis modulus.

Elements are handled internally as their canonical integer encoding: the
coefficient vector (constant term first) read as a base-p integer.  The
``GF`` object owns the arithmetic; ``FieldElement`` is a thin operator
wrapper for interactive and test use.

Small fields (q <= 2**16) use log/antilog tables.  Larger fields, which only
appear as residue fields of higher-degree places, fall back to polynomial
multiplication on the encodings.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 1 << 16
NUMPY_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over the prime field, used before a GF object exists -------

def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        if c:
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
        _pp_trim(a)
    return _pp_trim(a)


def _pp_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_mod(out, mod, p)


def _pp_powx(e, mod, p):
    """x**e mod `mod` over GF(p)."""
    result = [1]
    base = _pp_mod([0, 1], mod, p)
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, mod, p)
        base = _pp_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _pp_gcd(a, b, p):
    a, b = _pp_trim(list(a)), _pp_trim(list(b))
    while b:
        a, b = b, _pp_mod(a, b, p)
    return a


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_from_code(code, p):
    out = []
    while code:
        out.append(code % p)
        code //= p
    return out


def is_irreducible_prime(poly, p) -> bool:
    """Irreducibility over GF(p) of a monic coefficient list (constant first).

    Trial division by every monic polynomial of degree <= m/2 when that is
    cheap, Rabin's test otherwise.
    """
    poly = _pp_trim(list(poly))
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if poly[0] == 0:
        return False
    half = m // 2
    if p ** half <= 4096:
        for d in range(1, half + 1):
            for code in range(p ** d, 2 * p ** d):
                div = _poly_from_code(code, p)
                if not _pp_mod(poly, div, p):
                    return False
        return True
    if _pp_powx(p ** m, poly, p) != [0, 1]:
        return False
    for r in _prime_factors(m):
        h = _pp_powx(p ** (m // r), poly, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_pp_gcd(poly, _pp_trim(h), p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> tuple:
    """Monic irreducible of degree m over GF(p) with the smallest encoding."""
    for code in range(p ** m, 2 * p ** m):
        poly = _poly_from_code(code, p)
        if is_irreducible_prime(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


# -- the field ----------------------------------------------------------------

class GF:
    """The field GF(p)[x]/(modulus).  Build instances through create_field."""

    def __init__(self, p: int, m: int, modulus):
        modulus = tuple(int(c) % p for c in modulus)
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m
        self._key = (p, m, modulus)
        if p == 2:
            self._modmask = sum(c << i for i, c in enumerate(modulus))
        self._digits_cache = None
        self._build_tables()

    # identity ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GF({self.spec_string()})"

    def spec_string(self) -> str:
        return f"{self.p}^{self.m}:{format_poly_prime(self.modulus)}"

    @property
    def is_prime_field(self):
        return self.m == 1

    # encodings --------------------------------------------------------
    def coeffs(self, a: int) -> list:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, cs) -> int:
        cs = [int(c) % self.p for c in cs]
        # reduce if longer than m
        if len(cs) > self.m:
            cs = _pp_mod(cs, list(self.modulus), self.p) if self.m >= 1 else []
        v = 0
        for c in reversed(cs):
            v = v * self.p + c
        return v

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        return FieldElement(self, self.from_int(value))

    def from_int(self, value: int) -> int:
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is not a valid encoding in {self}")
        return value

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def gen(self) -> int:
        """Encoding of the residue class of x (the element rho)."""
        if self.m == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def elements(self):
        """All encodings in ascending canonical order."""
        return range(self.q)

    # arithmetic on encodings -----------------------------------------
    def _build_tables(self):
        self._add_tab = None
        self._log = self._exp = None
        p, q = self.p, self.q
        if p != 2 and q <= 4096:
            digits = [self._slow_coeffs(a) for a in range(q)]
            self._digits_cache = digits
            enc = self._slow_from_digits
            self._add_tab = [[enc([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
            self._neg_tab = [enc([(-x) % p for x in da]) for da in digits]
        if q <= TABLE_LIMIT:
            g = self._find_primitive_slow()
            exp = [0] * (2 * (q - 1))
            log = [0] * q
            a = 1
            for i in range(q - 1):
                exp[i] = a
                log[a] = i
                a = self._slow_mul(a, g)
            for i in range(q - 1, 2 * (q - 1)):
                exp[i] = exp[i - (q - 1)]
            self._exp, self._log = exp, log
            self.primitive = g
        else:
            self.primitive = None
        self._np = None

    def _slow_coeffs(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _slow_from_digits(self, ds):
        v = 0
        for c in reversed(ds):
            v = v * self.p + c
        return v

    def _slow_mul(self, a, b):
        if self.p == 2:
            m, mask = self.m, self._modmask
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> m) & 1:
                    a ^= mask
            return r
        if self.m == 1:
            return a * b % self.p
        prod = _pp_mulmod(self._slow_coeffs(a), self._slow_coeffs(b), list(self.modulus), self.p)
        return self._slow_from_digits(prod)

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_primitive_slow(self):
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for g in range(1, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise FieldError("modulus does not define a field")

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_tab is not None:
            return self._add_tab[a][b]
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        return self._slow_from_digits([(x + y) % p for x, y in zip(self._slow_coeffs(a), self._slow_coeffs(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self._add_tab is not None:
            return self._neg_tab[a]
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        return self._slow_from_digits([(-x) % p for x in self._slow_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._slow_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._slow_pow(a, e % (self.q - 1))

    def log(self, a: int) -> int:
        """Discrete log to the base `primitive` (table fields only)."""
        return self._log[a]

    def from_prime(self, c: int) -> int:
        """Encoding of the prime-field element c (c taken mod p)."""
        return c % self.p

    # derived maps -------------------------------------------------------
    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** k)

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.m):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        if t >= self.p:
            raise FieldError("trace did not land in the prime field")
        return t

    def sqrt(self, a: int):
        """A square root of a, or None when a is a non-square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        best = None
        for b in range(1, self.q):
            if self.mul(b, b) == a:
                best = b
                break
        return best

    def is_square(self, a: int) -> bool:
        return self.sqrt(a) is not None

    # numpy tables for vectorised kernels -----------------------------
    def tables(self):
        """(add, mul, neg, inv) numpy tables; only for q <= 1024."""
        if self._np is None:
            if self.q > NUMPY_TABLE_LIMIT:
                raise FieldError(f"{self} is too large for dense tables")
            q = self.q
            r = np.arange(q)
            if self.p == 2:
                add = (r[:, None] ^ r[None, :]).astype(np.int64)
            else:
                add = np.array(self._add_tab if self._add_tab is not None else
                               [[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            log = np.array(self._log, dtype=np.int64)
            exp = np.array(self._exp, dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            mul[1:, 1:] = exp[log[1:, None] + log[None, 1:]]
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
            inv = np.array([0] + [self.inv(a) for a in range(1, q)], dtype=np.int64)
            self._np = (add, mul, neg, inv)
        return self._np

    # extensions ---------------------------------------------------------
    def extension(self, d: int) -> "GF":
        """The degree-d extension GF(q^d), canonical per (field, d)."""
        return _extension(self, d)

    def embed(self, a: int, target: "GF") -> int:
        return embedding(self, target)[a]


@lru_cache(maxsize=None)
def _extension(base: GF, d: int) -> GF:
    if d == 1:
        return base
    ext = create_field(base.p, base.m * d, smallest_irreducible(base.p, base.m * d))
    if base.m > 1:
        _anchors.setdefault(ext, base)
    return ext


# Extension fields are absolute, so one object may extend several bases.  The
# first non-prime base an extension was requested from is its anchor, and
# embeddings between two extensions of the same anchor fix the anchor.
_anchors: dict = {}


@lru_cache(maxsize=None)
def create_field(p: int, m: int, modulus=None) -> GF:
    """Validated GF(p^m); modulus given constant-term first, monic."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be positive")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != m + 1:
        raise FieldError(f"modulus must have degree {m}")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    if not is_irreducible_prime(list(modulus), p):
        raise FieldError(f"modulus {format_poly_prime(modulus)} is reducible over GF({p})")
    return GF(p, m, modulus)


@lru_cache(maxsize=None)
def embedding(src: GF, dst: GF) -> tuple:
    """Image of every element of src in dst (a ring homomorphism).

    rho is sent to the root of src's modulus in dst with the smallest
    encoding.
    """
    from . import poly

    if src == dst:
        return tuple(range(src.q))
    if src.p != dst.p or dst.m % src.m:
        raise FieldError(f"{dst} is not an extension of {src}")
    if src.m == 1:
        return tuple(range(src.q))
    mod = [dst.from_prime(c) for c in src.modulus]
    roots = sorted(poly.roots(dst, mod))
    if not roots:
        raise FieldError("no root of the source modulus in the target")
    theta = roots[0]
    anchor = _anchors.get(src)
    if anchor is not None and dst.m % anchor.m == 0:
        # pick the root under which the anchor's generator lands where it should
        want = embedding(anchor, dst)[anchor.gen]
        src_gen = embedding(anchor, src)[anchor.gen]
        theta = next(t for t in roots if _image(src, dst, t, src_gen) == want)
    powers = [1]
    for _ in range(src.m - 1):
        powers.append(dst.mul(powers[-1], theta))
    out = []
    for a in range(src.q):
        v = 0
        for c, pw in zip(src.coeffs(a), powers):
            if c:
                v = dst.add(v, dst.mul(dst.from_prime(c), pw))
        out.append(v)
    return tuple(out)


def _image(src: GF, dst: GF, theta: int, a: int) -> int:
    v, pw = 0, 1
    for c in src.coeffs(a):
        if c:
            v = dst.add(v, dst.mul(dst.from_prime(c), pw))
        pw = dst.mul(pw, theta)
    return v


def restriction(src: GF, dst: GF) -> dict:
    """Inverse of the embedding src -> dst, as a dict on the image."""
    return {v: a for a, v in enumerate(embedding(src, dst))}


# -- element wrapper ------------------------------------------------------------

class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("mixed-field operands")
            return other.value
        if isinstance(other, int):
            return self.field.from_prime(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def sqrt(self):
        r = self.field.sqrt(self.value)
        return None if r is None else FieldElement(self.field, r)

    def trace(self) -> int:
        return self.field.trace(self.value)

    def embed(self, target: GF) -> "FieldElement":
        return FieldElement(target, self.field.embed(self.value, target))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_prime(other) and 0 <= other < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


# -- text formats -------------------------------------------------------------

def format_poly_prime(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


_TERM = re.compile(r"^([+-]?)(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly_terms(text: str):
    """Parse 'c1*x^e1 + c2*x^e2 ...' into {exponent: coefficient int}.

    Coefficients are plain integers; a leading '-' negates.
    """
    s = text.replace(" ", "")
    if not s:
        raise FieldError("empty polynomial")
    parts = re.findall(r"[+-]?[^+-]+", s)
    out = {}
    for part in parts:
        mt = _TERM.match(part)
        if not mt or (not mt.group(2) and not mt.group(3)):
            raise FieldError(f"cannot parse term {part!r}")
        sign = -1 if mt.group(1) == "-" else 1
        coef = int(mt.group(2)) if mt.group(2) else 1
        if mt.group(3):
            e = int(mt.group(4)) if mt.group(4) else 1
        else:
            e = 0
        out[e] = out.get(e, 0) + sign * coef
    return out


def parse_field_spec(text: str) -> GF:
    """'p^m:poly', e.g. '2^4:x^4+x+1'.  A bare 'p^m' picks the smallest modulus."""
    mt = re.fullmatch(r"\s*(\d+)\^(\d+)\s*(?::(.+))?", text)
    if not mt:
        raise FieldError(f"malformed field spec {text!r}")
    p, m = int(mt.group(1)), int(mt.group(2))
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if mt.group(3) is None:
        return create_field(p, m)
    terms = parse_poly_terms(mt.group(3))
    deg = max(terms)
    coeffs = [0] * (deg + 1)
    for e, c in terms.items():
        coeffs[e] = c % p
    if deg != m:
        raise FieldError(f"modulus degree {deg} does not match m={m}")
    return create_field(p, m, tuple(coeffs))
