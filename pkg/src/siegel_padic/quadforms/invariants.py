"""Arithmetic invariants of half-integral forms.

Level, quadratic character, local data (s, lambda) over F_q, Hilbert symbols,
Hasse invariants and odd Jordan symbols; together they give a genus key.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

from ..arith import fundamental_discriminant, kronecker, legendre, prime_divisors
from ..errors import DegenerateInputError, UnsupportedError
from ..exact import check_prime, int_vp
from .matrix import HalfIntegralMatrix, ldl

__all__ = [
    "character_discriminant",
    "chi_S",
    "genus_key",
    "hasse_invariant",
    "hilbert_symbol",
    "is_positive_definite",
    "jordan_split_at_p",
    "level",
    "local_diagonal",
    "local_invariants",
    "odd_jordan_symbol",
]


def is_positive_definite(t: HalfIntegralMatrix) -> bool:
    return t.is_positive_definite()


def _adjugate(rows) -> list:
    from .matrix import bareiss_det

    n = len(rows)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * bareiss_det(minor)
    return adj


def level(s: HalfIntegralMatrix) -> int:
    """least N with N (2S)^{-1} integral with even diagonal."""
    if not s.is_positive_definite():
        raise DegenerateInputError("level needs a positive definite form")
    n = s.size
    if n == 0:
        return 1
    det = s.det2
    adj = _adjugate(s.twice)
    big_n = 1
    for i in range(n):
        for j in range(n):
            if i == j:
                need = 2 * det // gcd(2 * det, adj[i][i])
            else:
                need = det // gcd(det, adj[i][j])
            big_n = big_n * need // gcd(big_n, need)
    return big_n


def character_discriminant(s: HalfIntegralMatrix) -> int:
    """(-1)^{m/2} det(2S) for even rank m."""
    m = s.size
    if m % 2:
        raise UnsupportedError("the character needs even rank")
    return (-1) ** (m // 2) * s.det2


def chi_S(s: HalfIntegralMatrix, d: int) -> int:
    """chi_S(d) = sign(d)^{m/2} ((-1)^{m/2} det 2S / |d|), 0 if gcd(d, level) > 1."""
    if d == 0:
        raise ValueError("d must be nonzero")
    m = s.size
    disc = character_discriminant(s)
    if gcd(d, level(s)) > 1:
        return 0
    sign = 1 if d > 0 or (m // 2) % 2 == 0 else -1
    return sign * kronecker(disc, abs(d))


# --------------------------------------------------------------------------
# local data over F_q
# --------------------------------------------------------------------------


def _diagonal_mod(rows, q: int) -> list:
    """Nonzero diagonal entries of a diagonalisation of the matrix mod an odd prime."""
    n = len(rows)
    a = [[v % q for v in r] for r in rows]
    alive = list(range(n))
    out = []
    while alive:
        piv = next((i for i in alive if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in alive for j in alive if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 a_ij != 0
            for c in range(n):
                a[i][c] = (a[i][c] + a[j][c]) % q
            for r in range(n):
                a[r][i] = (a[r][i] + a[r][j]) % q
            piv = i
        alive.remove(piv)
        d = a[piv][piv]
        out.append(d)
        inv = pow(d, -1, q)
        for r in alive:
            f = a[r][piv] * inv % q
            if f:
                for c in range(n):
                    a[r][c] = (a[r][c] - f * a[piv][c]) % q
                for c in range(n):
                    a[c][r] = (a[c][r] - f * a[c][piv]) % q
    return out


def _local_invariants_2(t: HalfIntegralMatrix):
    n = t.size
    g = t.twice
    vecs = list(product((0, 1), repeat=n))

    def qv(x):
        return (sum(g[i][j] * x[i] * x[j] for i in range(n) for j in range(n)) // 2) % 2

    def bil(x, y):
        return sum(g[i][j] * x[i] * y[j] for i in range(n) for j in range(n)) % 2

    radical = [x for x in vecs if all(bil(x, e) == 0 for e in vecs if sum(e) == 1)]
    rad_q = [x for x in radical if qv(x) == 0]
    s = len(rad_q).bit_length() - 1
    if s % 2 or s == n:
        return s, 1
    r = n - s  # radical == rad_q here; quotient has even dimension r
    zeros = sum(1 for x in vecs if qv(x) == 0) // len(radical)
    half = 2 ** (r // 2)
    lam = Fraction(zeros - 2 ** (r - 1), half - half // 2)
    return s, int(lam)


def local_invariants(t: HalfIntegralMatrix, q: int):
    """(s, lambda_q) for T over F_q.

    s is the dimension of the radical of the quadratic form T mod q, so the
    regular part has rank n - s; lambda_q is the quadratic character of the
    regular part (Legendre symbol of its discriminant for odd q, the
    split/non-split type for q = 2).  lambda is 1 when s = n or s is odd.
    """
    check_prime(q)
    n = t.size
    if q == 2:
        return _local_invariants_2(t)
    diag = _diagonal_mod(t.twice, q)
    r = len(diag)
    s = n - r
    if s == n or s % 2:
        return s, 1
    prod_d = 1
    for d in diag:
        prod_d = prod_d * d % q
    return s, legendre((-1) ** (r // 2) * prod_d, q)


def jordan_split_at_p(s: HalfIntegralMatrix, p: int):
    """(s, lambda_p): corank of S mod p and the character of its unit part."""
    check_prime(p)
    if p == 2:
        raise UnsupportedError("p must be odd")
    lev = level(s)
    if lev % (p * p) == 0:
        raise UnsupportedError("p^2 divides the level; use local_invariants")
    return local_invariants(s, p)


# --------------------------------------------------------------------------
# rational and q-adic invariants
# --------------------------------------------------------------------------


def _split(a: int, q: int):
    v = int_vp(a, q)
    return v, a // q**v


def hilbert_symbol(a, b, q) -> int:
    """(a, b)_q for nonzero rationals; q a prime or the string 'inf'."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    a = a.numerator * a.denominator
    b = b.numerator * b.denominator
    if q == "inf":
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, q)
    beta, v = _split(b, q)
    if q == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    e = (alpha * beta * ((q - 1) // 2)) % 2
    val = (-1) ** e
    if beta % 2:
        val *= legendre(u, q)
    if alpha % 2:
        val *= legendre(v, q)
    return val


def _rational_diagonal(t: HalfIntegralMatrix) -> list:
    _, d = ldl(t.twice)
    return d


def hasse_invariant(t: HalfIntegralMatrix, q) -> int:
    """prod_{i<j} (d_i, d_j)_q for a rational diagonalisation of 2T."""
    d = _rational_diagonal(t)
    val = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            val *= hilbert_symbol(d[i], d[j], q)
    return val


def local_diagonal(t: HalfIntegralMatrix, q: int) -> list:
    """Diagonal entries of a Z_(q)-equivalent diagonal form of 2T (q odd)."""
    if q == 2:
        raise UnsupportedError("local diagonalisation is for odd primes")
    n = t.size
    a = [[Fraction(v) for v in r] for r in t.twice]
    alive = list(range(n))
    out = []

    def val(x):
        return int_vp(x.numerator, q) - int_vp(x.denominator, q)

    while alive:
        best = None
        for i in alive:
            for j in alive:
                if j < i or a[i][j] == 0:
                    continue
                v = val(a[i][j])
                if best is None or v < best[0] or (v == best[0] and i == j and best[1] != best[2]):
                    best = (v, i, j)
        if best is None:
            out.extend(Fraction(0) for _ in alive)
            break
        v, i, j = best
        if i != j:
            if a[i][i] != 0 and val(a[i][i]) == v:
                pass
            elif a[j][j] != 0 and val(a[j][j]) == v:
                i = j
            else:
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
        alive.remove(i)
        d = a[i][i]
        out.append(d)
        for r in alive:
            f = a[r][i] / d
            if f:
                for c in range(n):
                    a[r][c] -= f * a[i][c]
                for c in range(n):
                    a[c][r] -= f * a[c][i]
    return out


def odd_jordan_symbol(t: HalfIntegralMatrix, q: int) -> tuple:
    """((exponent, dimension, Legendre of the unit determinant), ...) of 2T at odd q."""
    blocks: dict = {}
    for d in local_diagonal(t, q):
        e = int_vp(d.numerator, q) - int_vp(d.denominator, q)
        unit = d / Fraction(q) ** e
        u = unit.numerator * unit.denominator
        dim, sign = blocks.get(e, (0, 1))
        blocks[e] = (dim + 1, sign * legendre(u, q))
    return tuple((e, dim, sign) for e, (dim, sign) in sorted(blocks.items()))


def genus_key(t: HalfIntegralMatrix) -> tuple:
    """Invariants shared by all forms of one genus (rank <= 4, definite)."""
    det = t.det2
    primes = sorted(set(prime_divisors(2 * det)))
    disc = (-1) ** (t.size // 2) * det if t.size % 2 == 0 else det
    return (
        t.size,
        det,
        level(t),
        fundamental_discriminant(disc) if t.size % 2 == 0 else 0,
        tuple((q, hasse_invariant(t, q)) for q in primes),
        tuple((q, odd_jordan_symbol(t, q)) for q in primes if q != 2),
        local_invariants(t, 2),
    )
