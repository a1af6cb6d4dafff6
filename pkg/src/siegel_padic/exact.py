"""Exact rationals, p-adic valuations and congruences.

Every coefficient in the package is a :class:`fractions.Fraction`; this module
adds the valuation machinery on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational as _RationalABC
from typing import Union

from sympy import isprime

Rational = Fraction
RationalLike = Union[int, Fraction]


@total_ordering
class _Infinity:
    """The valuation of zero.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("siegel_padic.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


def is_infinite(v) -> bool:
    return v is INFINITY


@lru_cache(maxsize=4096)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not isprime(p):
        raise ValueError(f"expected a prime, got {p!r}")
    return p


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def _int_vp(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: RationalLike, p: int) -> Valuation:
    """Exponent of ``p`` in the rational ``x``; ``INFINITY`` for zero."""
    check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INFINITY
    return _int_vp(x.numerator, p) - _int_vp(x.denominator, p)


def int_vp(n: int, p: int) -> int:
    """Valuation of a nonzero integer (no primality check; hot path)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    return _int_vp(n, p)


def congruent(x: RationalLike, y: RationalLike, p: int, m: int) -> bool:
    """True iff vp(x - y) >= m."""
    return vp(as_fraction(x) - as_fraction(y), p) >= m


def is_p_integral(x: RationalLike, p: int) -> bool:
    return vp(x, p) >= 0


def min_valuation(values, p: int) -> Valuation:
    """Minimum of vp over an iterable; ``INFINITY`` for an empty or all-zero set."""
    best: Valuation = INFINITY
    for x in values:
        v = vp(x, p)
        if v < best:
            best = v
    return best


def format_rational(x: RationalLike) -> str:
    """Serialize as ``"a/b"`` or ``"a"`` when the denominator is 1."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(s))


def valuation_to_json(v: Valuation):
    return None if v is INFINITY else v
