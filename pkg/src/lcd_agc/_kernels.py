"""numba kernels for exhaustive codeword enumeration and column-dependency search.

Field arithmetic enters as lookup tables (add, mul, neg, inv) over encodings.
In characteristic 2 with q <= 256 codewords are packed m bits per symbol into
uint64 words so that a Gray-code step is a few XORs and a popcount.
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

_THREADS_ENV = "LCD_AGC_THREADS"

# The bundled TBB is too old for numba; workqueue is always available.
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "workqueue"


def configure_threads():
    """Honour LCD_AGC_THREADS (capped by what numba was started with)."""
    val = os.environ.get(_THREADS_ENV)
    if val:
        try:
            n = max(1, min(int(val), numba.config.NUMBA_NUM_THREADS))
        except ValueError:
            return
        numba.set_num_threads(n)


# -- packed characteristic-2 enumeration -----------------------------------------------

def pack_layout(n: int, m: int):
    per_word = 64 // m
    words = -(-n // per_word)
    return per_word, words


def pack_rows(rows: np.ndarray, m: int) -> np.ndarray:
    """rows (r x n) of symbols < 2^m -> (r x words) uint64."""
    r, n = rows.shape
    per_word, words = pack_layout(n, m)
    out = np.zeros((r, words), dtype=np.uint64)
    for i in range(r):
        for j in range(n):
            w, s = divmod(j, per_word)
            out[i, w] |= np.uint64(int(rows[i, j]) << (s * m))
    return out


def slot_mask(n: int, m: int) -> np.ndarray:
    """Per word: the lowest bit of every used slot."""
    per_word, words = pack_layout(n, m)
    out = np.zeros(words, dtype=np.uint64)
    for j in range(n):
        w, s = divmod(j, per_word)
        out[w] |= np.uint64(1 << (s * m))
    return out


@njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, inline="always")
def _packed_weight(cw, masks, m):
    total = 0
    for w in range(cw.shape[0]):
        x = cw[w]
        t = x
        for s in range(1, m):
            t |= x >> np.uint64(s)
        total += _popcount64(t & masks[w])
    return total


@njit(cache=True, parallel=True)
def enumerate_packed(mults, masks, m, q, k, n):
    """Weight histogram of the code spanned by k rows.

    mults[i, c] is the packed codeword c * row_i.  The top row's coefficient is
    split across workers; the remaining k-1 digits follow a reflected q-ary
    Gray code, so consecutive codewords differ by one row multiple.
    """
    words = masks.shape[0]
    hist = np.zeros((q, n + 1), dtype=np.int64)
    low = k - 1
    steps = 1
    for _ in range(low):
        steps *= q
    for top in prange(q):
        cw = np.empty(words, dtype=np.uint64)
        for w in range(words):
            cw[w] = mults[k - 1, top, w]
        g = np.zeros(max(low, 1), dtype=np.int64)
        dirs = np.ones(max(low, 1), dtype=np.int64)
        hist[top, _packed_weight(cw, masks, m)] += 1
        for _ in range(steps - 1):
            j = 0
            while True:
                nv = g[j] + dirs[j]
                if nv >= 0 and nv < q:
                    break
                dirs[j] = -dirs[j]
                j += 1
            delta = g[j] ^ nv
            g[j] = nv
            for w in range(words):
                cw[w] ^= mults[j, delta, w]
            hist[top, _packed_weight(cw, masks, m)] += 1
    out = np.zeros(n + 1, dtype=np.int64)
    for t in range(q):
        for w in range(n + 1):
            out[w] += hist[t, w]
    return out


# -- generic table enumeration ------------------------------------------------------------

@njit(cache=True, parallel=True)
def enumerate_generic(mults, add, neg, q, k, n):
    hist = np.zeros((q, n + 1), dtype=np.int64)
    low = k - 1
    steps = 1
    for _ in range(low):
        steps *= q
    for top in prange(q):
        cw = mults[k - 1, top].copy()
        g = np.zeros(max(low, 1), dtype=np.int64)
        dirs = np.ones(max(low, 1), dtype=np.int64)
        wt = 0
        for j in range(n):
            if cw[j] != 0:
                wt += 1
        hist[top, wt] += 1
        for _ in range(steps - 1):
            j = 0
            while True:
                nv = g[j] + dirs[j]
                if nv >= 0 and nv < q:
                    break
                dirs[j] = -dirs[j]
                j += 1
            delta = add[nv, neg[g[j]]]
            g[j] = nv
            wt = 0
            for c in range(n):
                v = add[cw[c], mults[j, delta, c]]
                cw[c] = v
                if v != 0:
                    wt += 1
            hist[top, wt] += 1
    out = np.zeros(n + 1, dtype=np.int64)
    for t in range(q):
        for w in range(n + 1):
            out[w] += hist[t, w]
    return out


# -- dependent column search -------------------------------------------------------------

@njit(cache=True)
def dependent_columns(cols, w, add, mul, neg, inv, budget):
    """Search w columns (rows of `cols`, shape n x r) that are linearly dependent
    while every w-1 of the chosen prefix is independent.

    Returns (status, witness): status 1 found, 0 none exist, -1 budget exhausted.
    """
    n, r = cols.shape
    witness = np.full(w, -1, dtype=np.int64)
    red = np.zeros((w, n, r), dtype=np.int64)
    red[0] = cols
    chosen = np.zeros(w, dtype=np.int64)
    nxt = np.zeros(w, dtype=np.int64)
    nodes = 0
    t = 0
    nxt[0] = 0
    while t >= 0:
        if t == w - 1:
            start = chosen[t - 1] + 1 if t > 0 else 0
            for c in range(start, n):
                zero = True
                for i in range(r):
                    if red[t, c, i] != 0:
                        zero = False
                        break
                if zero:
                    for i in range(t):
                        witness[i] = chosen[i]
                    witness[t] = c
                    return 1, witness
            nodes += n - start
            if nodes > budget:
                return -1, witness
            t -= 1
            continue
        c = nxt[t]
        if c > n - (w - t):
            t -= 1
            continue
        nxt[t] = c + 1
        piv = -1
        for i in range(r):
            if red[t, c, i] != 0:
                piv = i
                break
        if piv < 0:
            continue
        ip = inv[red[t, c, piv]]
        for c2 in range(c + 1, n):
            f = mul[red[t, c2, piv], ip]
            if f == 0:
                for i in range(r):
                    red[t + 1, c2, i] = red[t, c2, i]
            else:
                for i in range(r):
                    red[t + 1, c2, i] = add[red[t, c2, i], neg[mul[f, red[t, c, i]]]]
        nodes += n - c
        if nodes > budget:
            return -1, witness
        chosen[t] = c
        t += 1
        nxt[t] = c + 1
    return 0, witness
