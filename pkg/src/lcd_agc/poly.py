"""Univariate polynomials over a GF, as lists of encodings (constant first).

Lists are kept trimmed: the zero polynomial is [] and the last entry of a
nonzero polynomial is nonzero.
"""

from __future__ import annotations

import random

from .gf import GF


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(F: GF, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F: GF, a):
    return [F.neg(c) for c in a]


def sub(F: GF, a, b):
    return add(F, a, neg(F, b))


def scale(F: GF, a, c):
    if c == 0:
        return []
    return trim([F.mul(x, c) for x in a])


def shift_up(a, k: int):
    return [0] * k + list(a) if a else []


def mul(F: GF, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    fadd, fmul = F.add, F.mul
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = fadd(out[i + j], fmul(ai, bj))
    return trim(out)


def divmod_(F: GF, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = F.mul(a[k + db], inv_lead)
        quot[k] = c
        if c:
            for i, bi in enumerate(b):
                if bi:
                    a[k + i] = F.sub(a[k + i], F.mul(c, bi))
    return trim(quot), trim(a[:db])


def mod(F: GF, a, b):
    return divmod_(F, a, b)[1]


def monic(F: GF, a):
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F: GF, a, b):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F: GF, base, e: int, modulus):
    result = [1]
    base = mod(F, base, modulus)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), modulus)
        base = mod(F, mul(F, base, base), modulus)
        e >>= 1
    return result


def power(F: GF, a, e: int):
    result = [1]
    while e:
        if e & 1:
            result = mul(F, result, a)
        a = mul(F, a, a)
        e >>= 1
    return result


def evaluate(F: GF, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F: GF, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_prime(i), a[i]) if i % F.p else 0)
    return trim(out)


def taylor(F: GF, a, alpha: int):
    """Coefficients of a(alpha + t) as a polynomial in t."""
    out = list(a)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] = F.add(out[j], F.mul(alpha, out[j + 1]))
    return trim(out)


def from_roots(F: GF, roots):
    out = [1]
    for r in roots:
        out = mul(F, out, [F.neg(r), 1])
    return out


def embed(F: GF, a, L: GF):
    """Image of a polynomial over F in L[x]."""
    if F == L:
        return list(a)
    return [F.embed(c, L) for c in a]


def multiplicity(F: GF, a, factor) -> int:
    k = 0
    while a:
        qt, r = divmod_(F, a, factor)
        if r:
            break
        a, k = qt, k + 1
    return k


# -- roots and factorisation ----------------------------------------------------

def roots(F: GF, a):
    """Distinct roots of a in F, ascending by encoding."""
    a = trim(list(a))
    if len(a) <= 1:
        return []
    if F.q <= 4096:
        return [x for x in range(F.q) if evaluate(F, a, x) == 0]
    # split off the part that factors into linear terms over F
    lin = gcd(F, a, sub(F, powmod(F, [0, 1], F.q, a), [0, 1]))
    if len(lin) <= 1:
        return []
    return sorted(F.neg(f[0]) for f in _equal_degree(F, lin, 1))


def squarefree(F: GF, a):
    """List of (squarefree factor, multiplicity) with product a (monic)."""
    a = monic(F, trim(list(a)))
    out = {}
    _squarefree_rec(F, a, 1, out)
    return sorted(out.items(), key=lambda kv: kv[1])


def _squarefree_rec(F, a, mult, out):
    if len(a) <= 1:
        return
    da = derivative(F, a)
    if not da:
        # a = b(x^p); take the p-th root of each coefficient
        p = F.p
        root_exp = F.q // p
        b = [F.pow(a[i], root_exp) for i in range(0, len(a), p)]
        _squarefree_rec(F, b, mult * p, out)
        return
    c = gcd(F, a, da)
    w = divmod_(F, a, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            key = tuple(z)
            out[key] = out.get(key, 0) + i * mult
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        p = F.p
        root_exp = F.q // p
        b = [F.pow(c[i], root_exp) for i in range(0, len(c), p)]
        _squarefree_rec(F, b, mult * p, out)


def _distinct_degree(F: GF, a):
    """Split squarefree monic a into (product of degree-d irreducibles, d)."""
    out = []
    h = [0, 1]
    d = 0
    f = list(a)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f) if len(f) > 1 else h
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(F: GF, f, d, seed=0x5eed):
    """Split f, a product of distinct monic irreducibles of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    rng = random.Random(seed + n)
    while True:
        r = [rng.randrange(F.q) for _ in range(n)]
        r = trim(r)
        if len(r) <= 1:
            continue
        if F.p == 2:
            # trace map from GF(q^d) to GF(2)
            t = mod(F, r, f)
            acc = list(t)
            for _ in range(F.m * d - 1):
                t = mod(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            cand = acc
        else:
            e = (F.q ** d - 1) // 2
            cand = sub(F, powmod(F, r, e, f), [1])
        g = gcd(F, f, cand)
        if 1 < len(g) < len(f):
            h = divmod_(F, f, g)[0]
            return _equal_degree(F, g, d, seed + 1) + _equal_degree(F, monic(F, h), d, seed + 2)


def factor(F: GF, a):
    """Monic irreducible factors of a with multiplicities, sorted canonically."""
    a = trim(list(a))
    if len(a) <= 1:
        return []
    out = {}
    for sf, mult in squarefree(F, a):
        for g, d in _distinct_degree(F, list(sf)):
            for irr in _equal_degree(F, g, d):
                key = tuple(irr)
                out[key] = out.get(key, 0) + mult
    return sorted(((list(k), v) for k, v in out.items()), key=lambda kv: (len(kv[0]), list(reversed(kv[0]))))


def is_irreducible(F: GF, a) -> bool:
    a = trim(list(a))
    if len(a) <= 1:
        return False
    fs = factor(F, a)
    return len(fs) == 1 and fs[0][1] == 1


def roots_in_extension(F: GF, a, L: GF):
    """Distinct roots in L of a polynomial over F, ascending by encoding."""
    return roots(L, embed(F, a, L))


# -- text ----------------------------------------------------------------------

def to_string(a, var="x") -> str:
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"
