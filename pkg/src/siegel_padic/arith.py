"""Small integer number theory: Kronecker symbols, discriminants, divisor sums."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from sympy import divisors as _divisors
from sympy import factorint as _factorint
from sympy import jacobi_symbol


@lru_cache(maxsize=65536)
def factor(n: int) -> tuple:
    """Prime factorization of |n| as a sorted tuple of (prime, exponent)."""
    if n == 0:
        raise ValueError("cannot factor 0")
    return tuple(sorted(_factorint(abs(n)).items()))


def prime_divisors(n: int) -> list:
    return [q for q, _ in factor(n)]


def divisors(n: int) -> list:
    return [int(d) for d in _divisors(abs(n))]


def sigma(n: int, k: int) -> int:
    """Sum of d**k over positive divisors d of n."""
    return sum(d**k for d in divisors(n))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a / n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi_symbol(a % n, n)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * square."""
    sign = -1 if n < 0 else 1
    core = 1
    for q, e in factor(n):
        if e % 2:
            core *= q
    return sign * core


def fundamental_discriminant(d: int) -> int:
    """Fundamental discriminant D0 with d = D0 * f**2 (d a nonzero discriminant)."""
    if d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a discriminant")
    core = squarefree_part(d)
    return core if core % 4 == 1 else 4 * core


def discriminant_conductor(d: int) -> int:
    """The integer f with d = fundamental_discriminant(d) * f**2."""
    d0 = fundamental_discriminant(d)
    f = isqrt(d // d0)
    if d0 * f * f != d:
        raise ValueError(f"{d} is not D0*f^2")
    return f


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
