"""p-adic Siegel-Eisenstein series at finite stages.

Weight sequences k_j(m) -> (k, k + j(p-1)/2), per-rank valuation profiles,
mod p^m singularity, closed-form limits of the genus coefficients, and the
verifiers that compare E_{k_j(m)} with its genus-theta approximation and
with its image under U(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .arith import fundamental_discriminant
from .bernoulli import (
    _check_weight_target,
    assumption_nv_check,
    bernoulli_number,
    chi_p,
    default_stage_weight,
    is_regular_prime,
    limit_ratio_k_over_Bk,
)
from .eisenstein import eisenstein, primitive_coeff
from .errors import BoundError, DegenerateInputError, UnsupportedError
from .exact import INFINITY, check_prime, format_rational, int_vp, valuation_to_json, vp
from .hecke import apply_up
from .qexpansion import QExpansion
from .quadforms.classes import Genus, enumerate_classes, genus_partition
from .quadforms.invariants import character_discriminant, local_invariants
from .theta import genus_theta0

__all__ = [
    "VerificationReport",
    "WeightStage",
    "WeightTarget",
    "detect_singular",
    "enumerate_target_genera",
    "limit_bernoulli_factor",
    "limit_genus_coefficient",
    "limit_local_factor",
    "mu_j",
    "rank_valuation_profile",
    "stage_genus_coefficient",
    "theta_side",
    "verify_main_theorem",
    "verify_up_fixed",
    "weight_constraint_check",
    "weight_stage",
]


# --------------------------------------------------------------------------
# weights
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightTarget:
    """The limit weight (k, k + j(p-1)/2) in Z_p x Z/(p-1)."""

    k: int
    j: int
    p: int

    def __post_init__(self):
        _check_weight_target(self.k, self.j, self.p)

    @property
    def character(self):
        return chi_p(self.p) if self.j else None

    @property
    def character_d0(self) -> int:
        """Fundamental discriminant of chi_p^j (1 for the trivial character)."""
        return self.character.discriminant if self.j else 1

    def to_dict(self) -> dict:
        return {"k": self.k, "j": self.j, "p": self.p}


@dataclass(frozen=True)
class WeightStage:
    """k_j(m) = k + a p^b."""

    target: WeightTarget
    m: int
    weight: int
    a: int
    b: int


def weight_stage(target: WeightTarget, m: int, extra_periods: int = 0) -> WeightStage:
    """Default stage a = (p-1)/2^j (+ extra_periods*(p-1)), b = m."""
    if m < 1:
        raise ValueError("stage m must be positive")
    if extra_periods < 0:
        raise ValueError("extra_periods must be nonnegative")
    p = target.p
    a = (p - 1) // 2**target.j + extra_periods * (p - 1)
    weight = default_stage_weight(target.k, target.j, p, m, extra_periods)
    if weight % 2:
        raise ValueError(f"stage weight {weight} is odd")
    return WeightStage(target, m, weight, a, m)


# --------------------------------------------------------------------------
# valuation profiles and singularity
# --------------------------------------------------------------------------


def rank_valuation_profile(f: QExpansion, p: int) -> dict:
    """{r: min vp over stored coefficients of rank r} (certified only up to the trace bound)."""
    check_prime(p)
    return f.rank_valuations(p)


def _check_integral(profile: dict) -> None:
    for r, v in profile.items():
        if v is not INFINITY and v < 0:
            raise DegenerateInputError(f"rank-{r} coefficients are not p-integral")


def detect_singular(f: QExpansion, p: int):
    """(p-rank, order): the largest rank r carrying a p-unit coefficient and
    the least valuation over all higher ranks (INFINITY if none is nonzero)."""
    profile = rank_valuation_profile(f, p)
    _check_integral(profile)
    units = [r for r, v in profile.items() if v == 0]
    if not units:
        raise DegenerateInputError("no coefficient is a p-adic unit")
    r = max(units)
    higher = [profile[s] for s in profile if s > r]
    order = min(higher) if higher else INFINITY
    return r, order


def weight_constraint_check(f: QExpansion, k: int, p: int) -> bool:
    """Each finite jump v^{(r+1)} = v^{(r)} + m (m >= 1) needs 2k - r = 0 mod (p-1)p^{m-1}.

    Jumps to an infinite valuation (exact vanishing within the bound) carry
    no finite m and are skipped.
    """
    profile = rank_valuation_profile(f, p)
    _check_integral(profile)
    for r in range(f.degree):
        lo, hi = profile[r], profile[r + 1]
        if lo is INFINITY or hi is INFINITY:
            continue
        m = hi - lo
        if m >= 1 and (2 * k - r) % ((p - 1) * p ** (m - 1)):
            return False
    return True


# --------------------------------------------------------------------------
# limit coefficients
# --------------------------------------------------------------------------


def limit_bernoulli_factor(target: WeightTarget, precision_m: int = 2) -> Fraction:
    """p-adic limit of the Bernoulli part of the size-2k primitive coefficient
    along k_j(m), with the same sign and power of 2 as ``primitive_coeff``."""
    k, p = target.k, target.p
    n = 2 * k
    val = Fraction(config.bernoulli_part_sign(n) * 2 ** config.bernoulli_part_two_exponent(n))
    val *= limit_ratio_k_over_Bk(k, target.j, p, precision_m)
    # the eta-term times (2K - 2k)/B_{2K - 2k} tends to 2 (times the local limit)
    val *= 2
    for i in range(1, k):
        h = 2 * k - 2 * i
        val *= Fraction(h) / ((1 - Fraction(p) ** (h - 1)) * bernoulli_number(h))
    return val


def mu_j(target: WeightTarget) -> int:
    """vp of the limit Bernoulli product; the minimal rank-2k valuation in the limit."""
    return vp(limit_bernoulli_factor(target), target.p)


def _genus_local_data(g: Genus, target: WeightTarget):
    k, j, p = target.k, target.j, target.p
    if g.rank != 2 * k:
        raise ValueError(f"genus rank {g.rank} != 2k = {2 * k}")
    if p % g.level:
        raise ValueError(f"level {g.level} does not divide p = {p}")
    s = int_vp(g.det2, p)
    if g.det2 != p**s:
        raise ValueError("det(2S) must be a power of p")
    if s % 2 != j:
        raise ValueError("need s = j mod 2")
    if fundamental_discriminant(g.character_discriminant) != target.character_d0:
        raise ValueError("character of the genus is not chi_p^j")
    corank, lam = local_invariants(g.representative.base, p)
    if corank != s:
        raise ValueError("corank over F_p differs from vp(det 2S)")
    return s, lam


def limit_local_factor(s: int, lam: int, j: int, p: int) -> Fraction:
    if j == 0:
        h = s // 2
        return (-1) ** h * lam * Fraction(p) ** ((h - 1) * h)
    h = (s - 1) // 2
    return Fraction((-1) ** h * p ** (h * h))


def limit_genus_coefficient(g: Genus, target: WeightTarget) -> Fraction:
    """a_j(gen S) = lim_m a*_{k_j(m)}(S)."""
    s, lam = _genus_local_data(g, target)
    return limit_bernoulli_factor(target) * limit_local_factor(s, lam, target.j, target.p)


def stage_genus_coefficient(g: Genus, weight: int) -> Fraction:
    """a*_{weight}(S) for a representative S (depends on the genus only)."""
    return primitive_coeff(weight, g.representative.base).value


def enumerate_target_genera(target: WeightTarget, slack: int = 8) -> list:
    """Genera of rank 2k, level | p, det(2S) = p^s (s = j mod 2), chi_S = chi_p^j."""
    k, p = target.k, target.p
    if 2 * k not in (2, 4):
        raise UnsupportedError("genus enumeration is implemented for 2k in {2, 4}")
    forms = []
    for s in range(target.j, 2 * k + 1, 2):
        for f in enumerate_classes(2 * k, p**s, p, slack=slack):
            if fundamental_discriminant(character_discriminant(f.base)) == target.character_d0:
                forms.append(f)
    return genus_partition(forms)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of a finite-stage verification.  ``ok`` drives the exit code."""

    kind: str
    params: dict
    achieved_order: object
    rank_valuations: dict
    witnesses: list
    effective_trace_bound: int
    assumption_checks: dict
    ok: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "achieved_order": valuation_to_json(self.achieved_order),
            "rank_valuations": {str(r): valuation_to_json(v) for r, v in sorted(self.rank_valuations.items())},
            "witnesses": self.witnesses,
            "effective_trace_bound": self.effective_trace_bound,
            "assumption_checks": self.assumption_checks,
            "ok": self.ok,
            "version": config.VERSION,
        }
        out.update(self.details)
        return out


def _assumptions(target: WeightTarget, degree: int, m: int) -> dict:
    checks = {
        "regular_prime": is_regular_prime(target.p),
        "nv": assumption_nv_check(target.k, target.j, target.p, degree, m),
    }
    if not (checks["regular_prime"] or checks["nv"]):
        raise UnsupportedError(f"p = {target.p} is irregular and the non-vanishing check fails")
    return checks


def _witnesses(lhs: QExpansion, rhs: QExpansion, p: int, order, limit: int = 5) -> list:
    if order is INFINITY:
        return []
    out = []
    for t in lhs.keys():
        diff = lhs.coeffs[t] - rhs.coeffs[t]
        if diff and vp(diff, p) == order:
            out.append(
                {
                    "t": t.to_json(),
                    "lhs": format_rational(lhs.coeffs[t]),
                    "rhs": format_rational(rhs.coeffs[t]),
                    "valuation": order,
                }
            )
            if len(out) == limit:
                break
    return out


def _meets(order, min_order: int) -> bool:
    return order is INFINITY or order >= min_order


def theta_side(genera, coefficients, degree: int, trace_bound: int) -> QExpansion:
    """sum_g c_g * Theta0_g."""
    total = None
    for g, c in zip(genera, coefficients):
        term = genus_theta0(g, degree, trace_bound).scale(c)
        total = term if total is None else total + term
    return total


def verify_main_theorem(
    target: WeightTarget,
    degree: int,
    m: int,
    trace_bound: int,
    min_order: int = 1,
    extra_periods: int = 0,
) -> VerificationReport:
    """Compare p^{-mu} E_{k_j(m)}^{(n)} with sum_g p^{-mu} a*_{k_j(m)}(g) Theta0_g.

    The achieved order is the least vp of the difference over all stored
    coefficients.  Degrees 3 and 4 only check that the theta side is
    compatible with Phi and compare at degree 2.
    """
    if not 1 <= degree <= 4:
        raise UnsupportedError("degree must be between 1 and 4")
    p = target.p
    stage = weight_stage(target, m, extra_periods)
    checks = _assumptions(target, degree, m)
    genera = enumerate_target_genera(target)
    if not genera:
        raise DegenerateInputError("no genus satisfies the level and character conditions")
    mu = mu_j(target)
    scale = Fraction(1, p**mu) if mu >= 0 else Fraction(p ** (-mu))

    limits = [limit_genus_coefficient(g, target) for g in genera]
    stage_coeffs = [stage_genus_coefficient(g, stage.weight) for g in genera]
    constant_identity = sum((a * g.mass for a, g in zip(limits, genera)), Fraction(0))

    eis_degree = min(degree, 2)
    rhs = theta_side(genera, [scale * c for c in stage_coeffs], eis_degree, trace_bound)
    lhs = eisenstein(eis_degree, stage.weight, trace_bound).scale(scale)
    order = lhs.congruence_order(rhs, p)

    details = {}
    phi_ok = True
    if degree > 2:
        big = theta_side(genera, stage_coeffs, degree, trace_bound)
        down = big
        for _ in range(degree - 2):
            down = down.phi()
        phi_ok = down.equals(theta_side(genera, stage_coeffs, 2, trace_bound))
        details["theta_phi_compatible"] = phi_ok

    genus_rows = []
    for g, a_lim, a_stage in zip(genera, limits, stage_coeffs):
        diff = a_stage - a_lim
        genus_rows.append(
            {
                "classes": [c.form.base.to_json() for c in g.classes],
                "epsilons": [c.epsilon for c in g.classes],
                "det2": g.det2,
                "level": g.level,
                "mass": format_rational(g.mass),
                "limit_coefficient": format_rational(a_lim),
                "stage_coefficient": format_rational(a_stage),
                "stage_minus_limit_valuation": valuation_to_json(vp(diff, p)),
            }
        )
    details.update(
        {
            "mu": mu,
            "stage_weight": stage.weight,
            "constant_term_identity": {
                "sum": format_rational(constant_identity),
                "holds": constant_identity == 1,
            },
            "genera": genus_rows,
            "tightest_coefficients": _witnesses(lhs, rhs, p, order),
        }
    )
    ok = _meets(order, min_order) and constant_identity == 1 and phi_ok
    return VerificationReport(
        kind="main",
        params={
            **target.to_dict(),
            "m": m,
            "degree": degree,
            "trace_bound": trace_bound,
            "min_order": min_order,
            "extra_periods": extra_periods,
        },
        achieved_order=order,
        rank_valuations=lhs.rank_valuations(p),
        witnesses=[] if _meets(order, min_order) else _witnesses(lhs, rhs, p, order),
        effective_trace_bound=trace_bound,
        assumption_checks=checks,
        ok=ok,
        details=details,
    )


def verify_up_fixed(
    target: WeightTarget,
    degree: int,
    m: int,
    trace_bound: int,
    min_order: int = 1,
    extra_periods: int = 0,
) -> VerificationReport:
    """Order of p^{-mu} E | U(p) = p^{-mu} E on the usable bound floor(B/p)."""
    if degree not in (1, 2):
        raise UnsupportedError("Eisenstein series are computed for degree 1 and 2")
    p = target.p
    if trace_bound < p:
        raise BoundError(f"trace bound {trace_bound} < p = {p}")
    stage = weight_stage(target, m, extra_periods)
    checks = _assumptions(target, degree, m)
    mu = mu_j(target)
    scale = Fraction(1, p**mu) if mu >= 0 else Fraction(p ** (-mu))
    e = eisenstein(degree, stage.weight, trace_bound).scale(scale)
    lowered = apply_up(e, p)
    base = e.restrict(lowered.trace_bound)
    order = lowered.congruence_order(base, p)
    constant_ok = lowered.constant_term == base.constant_term
    return VerificationReport(
        kind="up",
        params={
            **target.to_dict(),
            "m": m,
            "degree": degree,
            "trace_bound": trace_bound,
            "min_order": min_order,
            "extra_periods": extra_periods,
        },
        achieved_order=order,
        rank_valuations=e.rank_valuations(p),
        witnesses=[] if _meets(order, min_order) else _witnesses(lowered, base, p, order),
        effective_trace_bound=lowered.trace_bound,
        assumption_checks=checks,
        ok=_meets(order, min_order) and constant_ok,
        details={
            "mu": mu,
            "stage_weight": stage.weight,
            "constant_term_invariant": constant_ok,
            "tightest_coefficients": _witnesses(lowered, base, p, order),
        },
    )
