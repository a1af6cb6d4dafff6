"""Bernoulli numbers, generalized Bernoulli numbers of quadratic characters,
regularity of primes and the p-adic limits of k/B_k along weight sequences.

Convention: B_1 = -1/2 everywhere, including inside bernoulli_polynomial.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .arith import fundamental_discriminant, kronecker
from .errors import ConsistencyError, UnsupportedError
from .exact import as_fraction, check_prime, congruent, vp

__all__ = [
    "QuadraticCharacter",
    "assumption_nv_check",
    "bernoulli_number",
    "bernoulli_polynomial",
    "chi_p",
    "default_stage_weight",
    "first_irregular_index",
    "generalized_bernoulli",
    "is_regular_prime",
    "limit_ratio_k_over_Bk",
]


# --------------------------------------------------------------------------
# B_k via tangent numbers (integer-only, O(n^2) big-int additions)
# --------------------------------------------------------------------------

_lock = threading.Lock()
_even_cache: list = [Fraction(1)]  # _even_cache[i] == B_{2i}; append-only


def _tangent_numbers(n: int) -> list:
    """Tangent numbers T_1..T_n (Brent-Harvey in-place recurrence)."""
    t = [0] * (n + 1)
    if n == 0:
        return t
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def _extend_cache(half_index: int) -> None:
    with _lock:
        have = len(_even_cache) - 1
        if half_index <= have:
            return
        target = max(half_index, 2 * have, 16)
        tangent = _tangent_numbers(target)
        for i in range(have + 1, target + 1):
            four = 1 << (2 * i)
            b = Fraction(2 * i * tangent[i], four * (four - 1))
            _even_cache.append(b if i % 2 == 1 else -b)


def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 1:
        return Fraction(-1, 2)
    if k % 2 == 1:
        return Fraction(0)
    if k // 2 >= len(_even_cache):
        _extend_cache(k // 2)
    return _even_cache[k // 2]


def bernoulli_polynomial(k: int, x) -> Fraction:
    """B_k(x) = sum_j binom(k, j) B_j x^(k-j)."""
    x = as_fraction(x)
    total = Fraction(0)
    power = Fraction(1)
    # accumulate from j = k downwards so x^(k-j) grows incrementally
    for j in range(k, -1, -1):
        bj = bernoulli_number(j)
        if bj:
            total += comb(k, j) * bj * power
        power *= x
    return total


# --------------------------------------------------------------------------
# Quadratic characters
# --------------------------------------------------------------------------

TRIVIAL_MOD_1 = "trivial-mod-1"
TRIVIAL_MOD_N = "trivial-mod-N"
KRONECKER = "kronecker"


@dataclass(frozen=True)
class QuadraticCharacter:
    """A quadratic Dirichlet character.

    ``kronecker`` characters carry a fundamental discriminant and are
    primitive of conductor |D|; ``trivial-mod-N`` is the principal character
    mod N (conductor 1).
    """

    modulus: int
    kind: str
    discriminant: int = 1
    conductor: int = 1

    @classmethod
    def trivial(cls, modulus: int = 1) -> "QuadraticCharacter":
        if modulus == 1:
            return cls(1, TRIVIAL_MOD_1, 1, 1)
        return cls(modulus, TRIVIAL_MOD_N, 1, 1)

    @classmethod
    def kronecker(cls, d: int) -> "QuadraticCharacter":
        if d == 1:
            return cls.trivial(1)
        if fundamental_discriminant(d) != d:
            raise ValueError(f"{d} is not a fundamental discriminant")
        return cls(abs(d), KRONECKER, d, abs(d))

    @classmethod
    def from_discriminant(cls, d: int) -> "QuadraticCharacter":
        """Primitive character attached to the discriminant d = D0 f^2."""
        return cls.kronecker(fundamental_discriminant(d))

    def __call__(self, d: int) -> int:
        if self.kind == TRIVIAL_MOD_1:
            return 1
        if self.kind == TRIVIAL_MOD_N:
            return 1 if gcd(d, self.modulus) == 1 else 0
        return kronecker(self.discriminant, d)

    @property
    def is_trivial(self) -> bool:
        return self.kind != KRONECKER

    def parity(self) -> int:
        """chi(-1)."""
        return -1 if self.kind == KRONECKER and self.discriminant < 0 else 1

    def primitive(self) -> "QuadraticCharacter":
        return self if self.kind == KRONECKER else QuadraticCharacter.trivial(1)

    def label(self) -> str:
        if self.kind == KRONECKER:
            return f"kronecker({self.discriminant})"
        return f"trivial-mod-{self.modulus}"


def chi_p(p: int) -> QuadraticCharacter:
    """The nontrivial quadratic character mod an odd prime p."""
    check_prime(p)
    if p == 2:
        raise UnsupportedError("chi_p needs an odd prime")
    pstar = p if p % 4 == 1 else -p
    return QuadraticCharacter.kronecker(pstar)


_gen_cache: dict = {}


def generalized_bernoulli(k: int, chi: QuadraticCharacter) -> Fraction:
    """B_{k,chi} = N^(k-1) sum_{a=1}^{N} chi(a) B_k(a/N), N the modulus."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if chi.kind == TRIVIAL_MOD_1:
        return bernoulli_number(k)
    key = (k, chi)
    hit = _gen_cache.get(key)
    if hit is not None:
        return hit
    n = chi.modulus
    values = [(a, chi(a)) for a in range(1, n + 1)]
    values = [(a, c) for a, c in values if c]
    # expand B_k(a/N): sum_j binom(k,j) B_j N^(j-1) * sum_a chi(a) a^(k-j)
    powers = {a: 1 for a, _ in values}
    power_sums = [0] * (k + 1)
    for e in range(k + 1):
        power_sums[e] = sum(c * powers[a] for a, c in values)
        for a, _ in values:
            powers[a] *= a
    total = Fraction(0)
    for j in range(k + 1):
        bj = bernoulli_number(j)
        if bj:
            total += comb(k, j) * bj * Fraction(n) ** (j - 1) * power_sums[k - j]
    with _lock:
        _gen_cache[key] = total
    return total


# --------------------------------------------------------------------------
# Regular primes and p-adic limits
# --------------------------------------------------------------------------


def first_irregular_index(p: int):
    """Smallest even k in [2, p-3] with p | numerator(B_k), or None."""
    check_prime(p)
    if p == 2:
        raise UnsupportedError("regularity is defined for odd primes")
    for k in range(2, p - 2, 2):
        if bernoulli_number(k).numerator % p == 0:
            return k
    return None


def is_regular_prime(p: int) -> bool:
    return first_irregular_index(p) is None


def _check_weight_target(k: int, j: int, p: int) -> None:
    check_prime(p)
    if p == 2:
        raise UnsupportedError("p must be odd")
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    if k < 1:
        raise ValueError("k must be positive")
    if j == 0 and k % 2:
        raise ValueError("j = 0 needs k even")
    if j == 1 and (k - (p - 1) // 2) % 2:
        raise ValueError("j = 1 needs k = (p-1)/2 mod 2")
    if p <= 2 * k + 1:
        raise ValueError("need p > 2k + 1")


def default_stage_weight(k: int, j: int, p: int, m: int, extra_periods: int = 0) -> int:
    """k + a p^m with a = (p-1)/2^j + extra_periods * (p-1)."""
    a = (p - 1) // (2**j) + extra_periods * (p - 1)
    return k + a * p**m


def limit_ratio_k_over_Bk(k: int, j: int, p: int, precision_m: int) -> Fraction:
    """p-adic limit of k_j(m)/B_{k_j(m)} along the default weight sequence.

    The closed form is cross-checked against the stage value at
    ``precision_m`` modulo p^precision_m.
    """
    _check_weight_target(k, j, p)
    if precision_m < 1:
        raise ValueError("precision_m must be positive")
    if j == 0:
        closed = Fraction(k) / ((1 - Fraction(p) ** (k - 1)) * bernoulli_number(k))
    else:
        closed = Fraction(k) / generalized_bernoulli(k, chi_p(p))
    weight = default_stage_weight(k, j, p, precision_m)
    stage = Fraction(weight) / bernoulli_number(weight)
    if not congruent(stage, closed, p, precision_m):
        raise ConsistencyError(
            f"k/B_k limit mismatch at weight {weight}: vp(diff) = {vp(stage - closed, p)}"
        )
    return closed


def assumption_nv_check(k: int, j: int, p: int, n: int, precision_m: int) -> bool:
    """Finite-stage check that the Bernoulli ratios B_h/h stay p-units.

    Runs over k < i <= [n'/2] with i != k mod (p-1)/2, where n' = n if
    n > 4k and 4k otherwise.  True means "verified to precision m" only.
    """
    _check_weight_target(k, j, p)
    weight = default_stage_weight(k, j, p, precision_m)
    n_prime = n if n > 4 * k else 4 * k
    half = (p - 1) // 2
    for i in range(k + 1, n_prime // 2 + 1):
        if (i - k) % half == 0:
            continue
        h = 2 * weight - 2 * i
        if vp(bernoulli_number(h) / h, p) != 0:
            return False
    return True
