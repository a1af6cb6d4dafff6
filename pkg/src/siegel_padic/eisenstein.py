"""Fourier coefficients of Siegel-Eisenstein series of degree one and two.

Degree two goes through primitive coefficients: a(T) is the sum of a*(T')
over the integral overlattices T' = T[D^{-1}], and a*(T) factors into a
Bernoulli part and an integral local part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import config
from .arith import fundamental_discriminant, prime_divisors, sigma
from .bernoulli import QuadraticCharacter, bernoulli_number, generalized_bernoulli
from .errors import UnsupportedError
from .exact import int_vp
from .qexpansion import QExpansion
from .quadforms.classes import _as_matrix
from .quadforms.invariants import local_invariants
from .quadforms.matrix import HalfIntegralMatrix
from .quadforms.reduction import reduce_form, semidefinite_split

__all__ = [
    "E8_TWICE_GRAM",
    "PrimitiveCoeffBreakdown",
    "bstar_q",
    "eis_deg1",
    "eis_deg2",
    "eisenstein",
    "eisenstein_coefficient",
    "integrality_constant",
    "overlattice_divisors",
    "primitive_coeff",
]

E8_TWICE_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


def _check_weight(k: int) -> None:
    if k < 4 or k % 2:
        raise UnsupportedError("Eisenstein series need even weight k >= 4")


# --------------------------------------------------------------------------
# degree one
# --------------------------------------------------------------------------


def _deg1_coeff(k: int, t: int) -> Fraction:
    if t == 0:
        return Fraction(1)
    return -2 * k / bernoulli_number(k) * sigma(t, k - 1)


def eis_deg1(k: int, trace_bound: int) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(t) q^t."""
    _check_weight(k)
    return QExpansion.from_function(
        1,
        trace_bound,
        lambda t: _deg1_coeff(k, t.twice[0][0] // 2),
        label=f"E_{k}^(1)",
        weight=Fraction(k),
        level=1,
        character="trivial",
    )


# --------------------------------------------------------------------------
# primitive coefficients
# --------------------------------------------------------------------------


def bstar_q(q: int, k: int, n: int, s: int, lambda_q: int) -> Fraction:
    """Local factor B*_q for corank s over F_q."""
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= n")
    qf = Fraction(q)
    val = Fraction(1)
    if s % 2:
        for j in range(1, (s - 1) // 2 + 1):
            val *= 1 - qf ** (2 * j + n - 2 * k)
        return val
    val = 1 + lambda_q * qf ** Fraction(n + s - 2 * k, 2) if (n + s) % 2 == 0 else None
    if val is None:
        raise ValueError("n + s must be even in the even-s branch")
    for j in range(1, s // 2):
        val *= 1 - qf ** (2 * j + n - 2 * k)
    return val


@dataclass(frozen=True)
class PrimitiveCoeffBreakdown:
    """a*(T) = bernoulli_part * local_part."""

    bernoulli_part: Fraction
    local_part: Fraction
    eta: QuadraticCharacter
    conductor: int
    local_factors: dict = field(default_factory=dict)
    local_data: dict = field(default_factory=dict)

    @property
    def value(self) -> Fraction:
        return self.bernoulli_part * self.local_part


def _eta_data(t: HalfIntegralMatrix):
    n = t.size
    disc = (-1) ** (n // 2) * t.det2
    d0 = fundamental_discriminant(disc)
    eta = QuadraticCharacter.kronecker(d0)
    f2 = disc // d0
    return eta, abs(d0), isqrt(f2)


def bernoulli_part(k: int, n: int, eta: QuadraticCharacter) -> Fraction:
    h = n // 2
    val = Fraction(config.bernoulli_part_sign(n) * 2 ** config.bernoulli_part_two_exponent(n))
    val *= Fraction(k) / bernoulli_number(k)
    val *= generalized_bernoulli(k - h, eta) / (k - h)
    for i in range(1, h + 1):
        val *= Fraction(2 * k - 2 * i) / bernoulli_number(2 * k - 2 * i)
    return val


def primitive_coeff(k: int, t) -> PrimitiveCoeffBreakdown:
    """Primitive coefficient a_k^{(n)}(T)* for positive definite T of even size n."""
    t = _as_matrix(t)
    n = t.size
    if n % 2 or n == 0:
        raise UnsupportedError("primitive coefficients need even positive size")
    if k <= n + 1:
        raise UnsupportedError("need k > n + 1")
    if not t.is_positive_definite():
        raise UnsupportedError("T must be positive definite")
    eta, cond, f = _eta_data(t)
    local = Fraction(f) ** (2 * k - n - 1)
    factors, data = {}, {}
    for q in prime_divisors(t.det2):
        s, lam = local_invariants(t, q)
        factor = (1 - eta(q) * Fraction(q) ** (n // 2 - k)) * bstar_q(q, k, n, s, lam)
        factors[q] = factor
        data[q] = (s, lam)
        local *= factor
    return PrimitiveCoeffBreakdown(bernoulli_part(k, n, eta), local, eta, cond, factors, data)


def overlattice_divisors(t) -> list:
    """Row-HNF matrices D (up to GL_n(Z) on the left) with T[D^{-1}] half-integral.

    n = 1: D = [d] with d^2 | t.  n = 2: D = [[a, b], [0, d]], 0 <= b < d.
    """
    t = _as_matrix(t)
    n = t.size
    det2 = t.det2
    if n == 1:
        tt = t.twice[0][0] // 2
        return [((d,),) for d in range(1, isqrt(tt) + 1) if tt % (d * d) == 0]
    if n != 2:
        raise UnsupportedError("overlattice divisors are implemented for n <= 2")
    g = t.twice
    out = []
    for a in range(1, isqrt(det2) + 1):
        for d in range(1, isqrt(det2) // a + 1):
            if det2 % (a * d) ** 2:
                continue
            for b in range(d):
                # adj(D) = [[d, -b], [0, a]]; G' = adj^t G adj / det^2
                m = a * d
                x = [[d, -b], [0, a]]
                rows = [
                    [sum(x[r][i] * g[r][c] * x[c][j] for r in range(2) for c in range(2)) for j in range(2)]
                    for i in range(2)
                ]
                m2 = m * m
                if any(v % m2 for row in rows for v in row):
                    continue
                if (rows[0][0] // m2) % 2 or (rows[1][1] // m2) % 2:
                    continue
                out.append(((a, b), (0, d)))
    return out


def _apply_inverse(t: HalfIntegralMatrix, dmat) -> HalfIntegralMatrix:
    n = t.size
    if n == 1:
        d = dmat[0][0]
        return HalfIntegralMatrix(((t.twice[0][0] // (d * d),),))
    (a, b), (_, d) = dmat
    x = [[d, -b], [0, a]]
    m2 = (a * d) ** 2
    g = t.twice
    rows = [
        [sum(x[r][i] * g[r][c] * x[c][j] for r in range(2) for c in range(2)) // m2 for j in range(2)]
        for i in range(2)
    ]
    return HalfIntegralMatrix.from_twice(rows)


_deg2_cache: dict = {}


def _deg2_rank2(k: int, t: HalfIntegralMatrix) -> Fraction:
    key = (k, t.twice)
    hit = _deg2_cache.get(key)
    if hit is not None:
        return hit
    total = Fraction(0)
    for dmat in overlattice_divisors(t):
        total += primitive_coeff(k, reduce_form(_apply_inverse(t, dmat))).value
    _deg2_cache[key] = total
    return total


def eisenstein_coefficient(k: int, t) -> Fraction:
    """a_k^{(n)}(T) for semidefinite T of size n <= 2 (rank reduction first)."""
    t = _as_matrix(t)
    if t.size > 2:
        raise UnsupportedError("Eisenstein coefficients are implemented for degree <= 2")
    r = t.rank()
    if r == 0:
        return Fraction(1)
    core, _ = semidefinite_split(t)
    if r == 1:
        return _deg1_coeff(k, core.twice[0][0] // 2)
    return _deg2_rank2(k, reduce_form(core))


def eis_deg2(k: int, trace_bound: int, route: str = "primitive") -> QExpansion:
    """E_k^{(2)} up to the trace bound.

    route="primitive" sums primitive coefficients over overlattices;
    route="oracle" (k = 4 only) returns the theta series of E8.
    """
    _check_weight(k)
    if route == "oracle":
        if k != 4:
            raise UnsupportedError("the E8 oracle route exists only for k = 4")
        from .theta import theta_qexp

        th = theta_qexp(HalfIntegralMatrix(E8_TWICE_GRAM), 2, trace_bound)
        return th.map(lambda v: v, label="E_4^(2) via theta_E8", level=1, character="trivial")
    if route != "primitive":
        raise ValueError("route must be 'primitive' or 'oracle'")
    return QExpansion.from_function(
        2,
        trace_bound,
        lambda t: eisenstein_coefficient(k, t),
        label=f"E_{k}^(2)",
        weight=Fraction(k),
        level=1,
        character="trivial",
    )


def eisenstein(degree: int, k: int, trace_bound: int) -> QExpansion:
    """E_k^{(n)} for n in {1, 2}; weights may be large (any even k >= 4)."""
    if degree == 1:
        return eis_deg1(k, trace_bound)
    if degree == 2:
        return eis_deg2(k, trace_bound)
    raise UnsupportedError("degree must be 1 or 2")


# --------------------------------------------------------------------------
# integrality constants
# --------------------------------------------------------------------------


def _dstar(k: int, n: int, only_3_mod_4: bool) -> int:
    den = bernoulli_number(2 * k - n).denominator
    val = 1
    for q in prime_divisors(den):
        if only_3_mod_4 and q % 4 != 3:
            continue
        h = k - n // 2
        val *= q ** (1 + (int_vp(h, q) if h else 0))
    return val


def integrality_constant(k: int, n: int) -> Fraction:
    """c_{k,n} with a_k^{(n)}(T) in c_{k,n} Z for T > 0."""
    if n < 1 or 2 * k <= n:
        raise UnsupportedError("need n >= 1 and 2k > n")
    if n % 2:
        val = Fraction(2**n) * k / bernoulli_number(k)
        for i in range(1, (n - 1) // 2 + 1):
            val *= Fraction(k - i) / bernoulli_number(2 * k - 2 * i)
        return val
    if n % 4 == 0:
        val = Fraction(2**n) * k / bernoulli_number(k) / _dstar(k, n, False)
    else:
        val = Fraction(2 ** (n - 1)) * k / bernoulli_number(k) / _dstar(k, n, True)
    for i in range(1, n // 2 + 1):
        val *= Fraction(k - i) / bernoulli_number(2 * k - 2 * i)
    return val
