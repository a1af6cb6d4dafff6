"""Lattice algorithms on positive definite even Gram matrices G = 2S.

Short vectors, representation numbers A(S, T) and automorphism group orders.
Enumeration is Fincke-Pohst with exact rational bounds.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import numpy as np

from .matrix import HalfIntegralMatrix, ldl

__all__ = [
    "lll_reduce",
    "short_vectors",
    "vectors_by_norm",
    "repr_count",
    "automorphism_count",
]


def _gram_rows(s) -> tuple:
    if isinstance(s, HalfIntegralMatrix):
        return s.twice
    return tuple(tuple(int(v) for v in r) for r in s)


def _round(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_reduce(gram, delta: Fraction = Fraction(3, 4)):
    """LLL on a positive definite Gram matrix.

    Returns (reduced_gram, U) with reduced_gram = U^t gram U and U unimodular
    (both as lists of lists of ints).
    """
    b = [list(r) for r in _gram_rows(gram)]
    n = len(b)
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns = basis

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        d = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Fraction(b[i][j])
                for l in range(j):
                    s -= mu[j][l] * mu[i][l] * d[l]
                mu[i][j] = s / d[j]
            s = Fraction(b[i][i])
            for l in range(i):
                s -= mu[i][l] * mu[i][l] * d[l]
            d[i] = s
        return mu, d

    def sub(k, j, q):
        for l in range(n):
            b[k][l] -= q * b[j][l]
        for l in range(n):
            b[l][k] -= q * b[l][j]
        for r in range(n):
            u[r][k] -= q * u[r][j]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for row in b:
            row[k], row[k - 1] = row[k - 1], row[k]
        for row in u:
            row[k], row[k - 1] = row[k - 1], row[k]

    k = 1
    while k < n:
        mu, d = gso()
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                sub(k, j, q)
                for l in range(j):
                    mu[k][l] -= q * mu[j][l]
                mu[k][j] -= q
        mu, d = gso()
        if d[k] >= (delta - mu[k][k - 1] ** 2) * d[k - 1]:
            k += 1
        else:
            swap(k)
            k = max(k - 1, 1)
    return b, u


def _interval(c: Fraction, t: Fraction):
    """Integers x with (x - c)^2 <= t, as (lo, hi)."""
    if t < 0:
        return 1, 0
    root = math.isqrt(t.numerator // t.denominator)
    hi = math.floor(c) + root + 1
    while hi - c > 0 and (hi - c) ** 2 > t:
        hi -= 1
    lo = math.ceil(c) - root - 1
    while c - lo > 0 and (c - lo) ** 2 > t:
        lo += 1
    return lo, hi


def _enumerate(gram: tuple, bound: int) -> np.ndarray:
    """All x with x^t G x <= 2*bound, in the coordinates of ``gram`` (exact)."""
    n = len(gram)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    reduced, u = lll_reduce(gram)
    mu, d = ldl(reduced)
    out = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        c = Fraction(0)
        for j in range(i + 1, n):
            if x[j]:
                c -= mu[i][j] * x[j]
        lo, hi = _interval(c, remaining / d[i])
        for v in range(lo, hi + 1):
            x[i] = v
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - d[i] * (v - c) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(2 * bound))
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    y = np.array(out, dtype=np.int64)
    umat = np.array(u, dtype=np.int64)
    return y @ umat.T


_vec_lock = threading.Lock()
_vec_cache: dict = {}


def vectors_by_norm(s, bound: int) -> dict:
    """{t: array of all x with S[x] = t} for 0 <= t <= bound (S positive definite)."""
    gram = _gram_rows(s)
    with _vec_lock:
        hit = _vec_cache.get(gram)
    if hit is not None and hit[0] >= bound:
        groups = hit[1]
        return {t: groups[t] for t in range(bound + 1) if t in groups}
    vecs = _enumerate(gram, bound)
    g = np.array(gram, dtype=np.int64).reshape(len(gram), len(gram))
    norms = np.einsum("ij,jk,ik->i", vecs, g, vecs) // 2 if len(gram) else np.zeros(len(vecs), dtype=np.int64)
    groups = {}
    for t in range(bound + 1):
        sel = vecs[norms == t]
        if len(sel):
            groups[t] = sel
    with _vec_lock:
        _vec_cache[gram] = (bound, groups)
    return groups


def short_vectors(s, bound: int) -> np.ndarray:
    """All integer x with S[x] <= bound, as rows."""
    groups = vectors_by_norm(s, bound)
    n = len(_gram_rows(s))
    parts = [groups[t] for t in sorted(groups)]
    return np.concatenate(parts) if parts else np.zeros((0, n), dtype=np.int64)


def repr_count(s, t) -> int:
    """A(S, T) = #{X in M_{m,n}(Z) : S[X] = T} for S positive definite, T semidefinite.

    Columns are chosen one at a time among vectors of the required norm;
    inner products with the earlier columns are filtered with integer masks.
    """
    s_rows = _gram_rows(s)
    t = t if isinstance(t, HalfIntegralMatrix) else HalfIntegralMatrix.from_twice(t)
    n = t.size
    if n == 0:
        return 1
    if not t.is_positive_semidefinite():
        return 0
    if t.is_positive_definite():
        # A(S, T) = A(S, T[V]); a reduced T keeps the column norms small
        t = HalfIntegralMatrix.from_twice(lll_reduce(t.twice)[0])
    diag = t.diagonal()
    groups = vectors_by_norm(s_rows, max(diag))
    m = len(s_rows)
    g = np.array(s_rows, dtype=np.int64).reshape(m, m)
    cands = []
    for i in range(n):
        c = groups.get(diag[i])
        if c is None:
            return 0
        cands.append(c)
    target = t.twice
    if n == 1:
        return len(cands[0])
    if n == 2:
        left = cands[0] @ g
        ip = left @ cands[1].T
        return int(np.count_nonzero(ip == target[0][1]))
    gc = [c @ g for c in cands]

    def rec(i: int, chosen_g: list) -> int:
        mask = np.ones(len(cands[i]), dtype=bool)
        for j, row in enumerate(chosen_g):
            mask &= cands[i] @ row == target[j][i]
        if i == n - 1:
            return int(np.count_nonzero(mask))
        total = 0
        for idx in np.flatnonzero(mask):
            total += rec(i + 1, chosen_g + [gc[i][idx]])
        return total

    return rec(0, [])


def automorphism_count(s) -> int:
    """|Aut(S)| = A(S, S) via a stabilizer chain.

    At level i the orbit of e_i under the stabilizer of e_1..e_{i-1} is the
    set of x that extend (e_1..e_{i-1}, x) to a full isometry; the order is
    the product of the orbit sizes.
    """
    s_rows = _gram_rows(s)
    m = len(s_rows)
    if m == 0:
        return 1
    g = np.array(s_rows, dtype=np.int64).reshape(m, m)
    diag = [s_rows[i][i] // 2 for i in range(m)]
    groups = vectors_by_norm(s_rows, max(diag))
    cands = [groups[diag[i]] for i in range(m)]
    gc = [c @ g for c in cands]

    def mask_for(i: int, chosen_g: list):
        mask = np.ones(len(cands[i]), dtype=bool)
        for j, row in enumerate(chosen_g):
            mask &= cands[i] @ row == s_rows[j][i]
        return mask

    def extends(i: int, chosen_g: list) -> bool:
        if i == m:
            return True
        for idx in np.flatnonzero(mask_for(i, chosen_g)):
            if extends(i + 1, chosen_g + [gc[i][idx]]):
                return True
        return False

    total = 1
    prefix = []
    for i in range(m):
        orbit = 0
        for idx in np.flatnonzero(mask_for(i, prefix)):
            if extends(i + 1, prefix + [gc[i][idx]]):
                orbit += 1
        total *= orbit
        prefix.append(g[i])
    return total
