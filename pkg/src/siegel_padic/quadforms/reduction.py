"""Canonical GL_n(Z)-representatives for semidefinite T in Lambda_n (n <= 4).

Convention.  For a positive definite block the canonical form is the
lexicographic minimum, over all bases, of the key

    (t_11, ..., t_nn, -b_12, -b_13, -b_23, -b_14, -b_24, -b_34)

with b_ij = 2 t_ij and off-diagonals read column by column.  For n <= 4 the
minimal diagonal is the sequence of successive minima, so the form is
Minkowski reduced; negating the off-diagonals makes them as large as
possible, hence for binary forms the result is a x^2 + b xy + c y^2 with
0 <= b <= a <= c.  A semidefinite T of rank r is first carried to diag(T', 0)
with T' positive definite of size r, then T' is canonicalised.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
import numpy as np

from ..errors import DegenerateInputError, UnsupportedError
from .lattice import lll_reduce, vectors_by_norm
from .matrix import HalfIntegralMatrix, bareiss_det

__all__ = [
    "MAX_REDUCTION_DEGREE",
    "canonical_key",
    "canonical_pd",
    "reduce_binary",
    "reduce_form",
    "reduced_forms",
    "reduced_keys",
    "semidefinite_split",
]

MAX_REDUCTION_DEGREE = 4


def _xgcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def semidefinite_split(t: HalfIntegralMatrix):
    """Unimodular U with T[U] = diag(T', 0), T' positive definite.

    Returns (T', U).  Integer column operations bring 2T to column echelon
    form; the vanishing trailing columns of 2T U span the radical.
    """
    if not t.is_positive_semidefinite():
        raise DegenerateInputError("matrix is not positive semidefinite")
    n = t.size
    h = [list(r) for r in t.twice]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(c1, c2, a, b, c, d):
        # (col c1, col c2) <- (a*col c1 + b*col c2, c*col c1 + d*col c2)
        for m in (h, u):
            for row in m:
                x, y = row[c1], row[c2]
                row[c1], row[c2] = a * x + b * y, c * x + d * y

    pc = 0
    for r in range(n):
        if pc >= n:
            break
        for c in range(pc + 1, n):
            if h[r][c] == 0:
                continue
            x, y = h[r][pc], h[r][c]
            g, s, w = _xgcd(x, y)
            # new pc col = s*x_col + w*y_col ; new c col = (-y/g)*x_col + (x/g)*y_col
            colop(pc, c, s, w, -y // g, x // g)
        if h[r][pc] != 0:
            pc += 1
    rank = pc
    full = t.transform(u)
    for i in range(n):
        for j in range(n):
            if (i >= rank or j >= rank) and full.twice[i][j] != 0:
                raise AssertionError("radical split failed")
    return full.block(rank), u


def reduce_binary(a: int, b: int, c: int):
    """GL_2(Z)-reduced (a, b, c) with 0 <= b <= a <= c for a positive definite binary form."""
    if a <= 0 or 4 * a * c - b * b <= 0:
        raise DegenerateInputError("binary form is not positive definite")
    while True:
        if a > c:
            a, c = c, a
        # b -> b - 2 a q lands in (-a, a]
        q = -((a - b) // (2 * a))
        if q:
            c = a * q * q - b * q + c
            b = b - 2 * a * q
            continue
        if a > c:
            continue
        return a, abs(b), c


def _key(rows) -> tuple:
    n = len(rows)
    diag = tuple(rows[i][i] for i in range(n))
    off = tuple(-rows[i][j] for j in range(n) for i in range(j))
    return diag + off


def canonical_key(t: HalfIntegralMatrix) -> tuple:
    return _key(t.twice)


def _gram_of(vectors, g) -> list:
    m = np.array(vectors, dtype=np.int64)
    return (m @ g @ m.T).tolist()


def _canonical_general(rows: tuple) -> tuple:
    n = len(rows)
    red, _ = lll_reduce(rows)
    red_t = tuple(tuple(r) for r in red)
    det = bareiss_det(red_t)
    maxnorm = max(red_t[i][i] for i in range(n)) // 2
    groups = vectors_by_norm(red_t, maxnorm)
    g = np.array(red_t, dtype=np.int64)
    norms = sorted(t for t in groups if t > 0)

    # Successive minima: greedily pick shortest vectors independent of the
    # previous ones.  For n <= 4 some basis attains them, so they are the
    # least possible diagonal.
    chosen, target = [], []
    for t in norms:
        for v in groups[t]:
            if len(chosen) == n:
                break
            if bareiss_det(_gram_of(chosen + [v], g)) > 0:
                chosen.append(v)
                target.append(t)
    if len(chosen) != n:
        raise AssertionError("successive minima not found")

    # Among bases with that diagonal, take the least off-diagonal key.
    cand = [groups[target[i]] for i in range(n)]
    candg = [c @ g for c in cand]
    best = None

    def search(i, picked, picked_g, offkey):
        nonlocal best
        if i == n:
            gram = _gram_of(picked, g)
            if bareiss_det(gram) == det:
                key = tuple(offkey)
                if best is None or key < best[0]:
                    best = (key, gram)
            return
        if picked:
            ips = np.stack([cand[i] @ row for row in picked_g], axis=1)
            keys = [tuple(int(-x) for x in r) for r in ips]
        else:
            keys = [()] * len(cand[i])
        order = sorted(range(len(keys)), key=lambda k: keys[k])
        for idx in order:
            new = offkey + list(keys[idx])
            if best is not None and tuple(new) > best[0][: len(new)]:
                break
            v = cand[i][idx]
            if bareiss_det(_gram_of(picked + [v], g)) <= 0:
                continue
            search(i + 1, picked + [v], picked_g + [candg[i][idx]], new)

    search(0, [], [], [])
    return tuple(tuple(int(x) for x in r) for r in best[1])


@lru_cache(maxsize=200000)
def _canonical_pd_rows(rows: tuple) -> tuple:
    n = len(rows)
    if n == 0:
        return rows
    if n == 1:
        return rows
    if n == 2:
        a, b, c = reduce_binary(rows[0][0] // 2, rows[0][1], rows[1][1] // 2)
        return ((2 * a, b), (b, 2 * c))
    if n > MAX_REDUCTION_DEGREE:
        raise UnsupportedError(f"reduction is implemented for n <= {MAX_REDUCTION_DEGREE}")
    return _canonical_general(rows)


def canonical_pd(t: HalfIntegralMatrix, general: bool = False) -> HalfIntegralMatrix:
    """Canonical form of a positive definite T.  ``general`` bypasses the binary shortcut."""
    if not t.is_positive_definite():
        raise DegenerateInputError("matrix is not positive definite")
    if general and t.size == 2:
        return HalfIntegralMatrix(_canonical_general(t.twice))
    return HalfIntegralMatrix(_canonical_pd_rows(t.twice))


def reduce_form(t: HalfIntegralMatrix) -> HalfIntegralMatrix:
    """Canonical representative of the GL_n(Z)-class of a semidefinite T."""
    n = t.size
    if n > MAX_REDUCTION_DEGREE:
        raise UnsupportedError(f"reduction is implemented for n <= {MAX_REDUCTION_DEGREE}")
    if not t.is_positive_semidefinite():
        raise DegenerateInputError("matrix is not positive semidefinite")
    if t.is_positive_definite():
        return canonical_pd(t)
    core, _ = semidefinite_split(t)
    if core.size == 0:
        return HalfIntegralMatrix.zero(n)
    return canonical_pd(core).padded(n)


def _small_vectors(n: int):
    """x in {-1,0,1}^n whose last nonzero entry is 1, with that index."""
    out = []
    for x in product((-1, 0, 1), repeat=n):
        nz = [i for i in range(n) if x[i]]
        if nz and x[nz[-1]] == 1 and len(nz) > 1:
            out.append((x, nz[-1]))
    return out


def _candidates(diag: tuple) -> np.ndarray:
    """Off-diagonal vectors (column-major b_ij) that pass cheap necessary tests.

    Tests: Minkowski inequalities T[x] >= t_jj on
    {-1,0,1}-vectors, and invariance of the key under sign changes of basis
    vectors.
    """
    n = len(diag)
    pairs = [(i, j) for j in range(n) for i in range(j)]
    grids = np.meshgrid(*[np.arange(-diag[i], diag[i] + 1) for i, _ in pairs], indexing="ij")
    offs = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    keep = np.ones(len(offs), dtype=bool)
    # Minkowski: 2 T[x] >= 2 t_jj
    for x, j in _small_vectors(n):
        val = sum(2 * diag[i] * x[i] * x[i] for i in range(n))
        lin = np.zeros(len(offs), dtype=np.int64)
        for c, (i, k) in enumerate(pairs):
            if x[i] and x[k]:
                lin += 2 * x[i] * x[k] * offs[:, c]
        keep &= val + lin >= 2 * diag[j]
    offs = offs[keep]
    # sign changes e_j -> -e_j must not decrease the key (-offs)
    survivors = []
    flips = list(product((1, -1), repeat=n - 1))
    for row in offs.tolist():
        key = [-b for b in row]
        good = True
        for f in flips:
            eps = (1,) + f
            other = [-row[c] * eps[i] * eps[k] for c, (i, k) in enumerate(pairs)]
            if other < key:
                good = False
                break
        if good:
            survivors.append(row)
    return survivors


@lru_cache(maxsize=64)
def reduced_forms(n: int, bound: int) -> tuple:
    """Canonical positive definite n x n forms with trace <= bound, sorted by key."""
    if n == 0:
        return (HalfIntegralMatrix.zero(0),) if bound >= 0 else ()
    if n > MAX_REDUCTION_DEGREE:
        raise UnsupportedError(f"reduction is implemented for n <= {MAX_REDUCTION_DEGREE}")
    found = []
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for diag in _nondecreasing(n, bound):
        if n == 1:
            found.append(HalfIntegralMatrix.diag(*diag))
            continue
        for offs in _candidates(diag):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = 2 * diag[i]
            for (i, j), b in zip(pairs, offs):
                rows[i][j] = rows[j][i] = b
            t = HalfIntegralMatrix.from_twice(rows)
            if t.is_positive_definite() and canonical_pd(t) == t:
                found.append(t)
    found.sort(key=canonical_key)
    return tuple(found)


def _nondecreasing(n: int, bound: int, low: int = 1):
    if n == 0:
        yield ()
        return
    for a in range(low, bound // n + 1):
        for rest in _nondecreasing(n - 1, bound - a, a):
            yield (a,) + rest


@lru_cache(maxsize=64)
def reduced_keys(n: int, bound: int) -> tuple:
    """Canonical semidefinite n x n keys (all ranks) with trace <= bound."""
    keys = []
    for r in range(n + 1):
        for f in reduced_forms(r, bound):
            keys.append(f.padded(n) if r < n else f)
    return tuple(keys)
