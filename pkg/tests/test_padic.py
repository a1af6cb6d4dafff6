from fractions import Fraction

import pytest

from siegel_padic.arith import is_square
from siegel_padic.eisenstein import eis_deg2
from siegel_padic.errors import BoundError, DegenerateInputError, UnsupportedError
from siegel_padic.exact import INFINITY, vp
from siegel_padic.padic import (
    WeightTarget,
    detect_singular,
    enumerate_target_genera,
    limit_bernoulli_factor,
    limit_genus_coefficient,
    limit_local_factor,
    mu_j,
    rank_valuation_profile,
    stage_genus_coefficient,
    verify_main_theorem,
    verify_up_fixed,
    weight_constraint_check,
    weight_stage,
)
from siegel_padic.qexpansion import QExpansion
from siegel_padic.quadforms import HalfIntegralMatrix as H
from siegel_padic.theta import theta_qexp

T171 = WeightTarget(1, 1, 7)
T207 = WeightTarget(2, 0, 7)


def constant(degree, bound, c=1):
    return QExpansion.from_function(degree, bound, lambda t: Fraction(c) if t.rank() == 0 else Fraction(0))


def by_rank(degree, bound, values):
    return QExpansion.from_function(degree, bound, lambda t: Fraction(values[t.rank()]))


# --------------------------------------------------------------------------
# weights
# --------------------------------------------------------------------------


def test_weight_target_validation():
    for bad in [(1, 0, 7), (2, 1, 7), (1, 1, 5), (1, 1, 3), (2, 0, 5), (1, 1, 9), (1, 2, 7)]:
        with pytest.raises(ValueError):
            WeightTarget(*bad)
    assert T171.character_d0 == -7 and T207.character_d0 == 1
    assert T171.to_dict() == {"k": 1, "j": 1, "p": 7}


def test_weight_stage_examples():
    assert weight_stage(T171, 1).weight == 22
    assert weight_stage(T207, 1).weight == 44
    assert weight_stage(T171, 2).weight == 148
    s = weight_stage(T171, 1, extra_periods=1)
    assert (s.a, s.b, s.weight) == (9, 1, 64)
    with pytest.raises(ValueError):
        weight_stage(T171, 0)


@pytest.mark.parametrize("target", [T171, T207, WeightTarget(1, 1, 11), WeightTarget(3, 1, 11)])
def test_stage_invariants(target):
    p = target.p
    prev = 0
    for m in (1, 2, 3):
        s = weight_stage(target, m)
        assert s.a > 0 and s.a % (p - 1) == ((p - 1) // 2**target.j) % (p - 1)
        assert s.weight == target.k + s.a * p**s.b and s.weight % 2 == 0
        assert s.b > prev
        prev = s.b


# --------------------------------------------------------------------------
# valuation profiles and singularity
# --------------------------------------------------------------------------


def test_profile_examples():
    assert rank_valuation_profile(constant(0, 0), 7) == {0: 0}
    assert rank_valuation_profile(constant(2, 3), 7) == {0: 0, 1: INFINITY, 2: INFINITY}
    e = eis_deg2(22, 4)
    assert rank_valuation_profile(e, 7)[0] == 0
    scaled = rank_valuation_profile(e.scale(7), 7)
    assert all(v is INFINITY or v >= 1 for v in scaled.values())


def test_detect_singular_examples():
    assert detect_singular(constant(2, 3), 7) == (0, INFINITY)
    th = theta_qexp(H.binary(1, 1, 2), 3, 3)
    for p in (3, 5, 7):
        r, order = detect_singular(th, p)
        assert r <= 2 and order is INFINITY
    assert detect_singular(eis_deg2(22, 5), 7)[0] == 2
    assert detect_singular(by_rank(2, 3, [1, 7, 49]), 7) == (0, 1)
    with pytest.raises(DegenerateInputError):
        detect_singular(constant(1, 2, 7), 7)
    with pytest.raises(DegenerateInputError):
        detect_singular(by_rank(1, 2, [1, Fraction(1, 7)]), 7)


def test_weight_constraint_examples():
    assert weight_constraint_check(eis_deg2(22, 5), 22, 7)
    assert weight_constraint_check(by_rank(2, 3, [1, 1, 1]), 4, 7)
    # a jump at odd rank r = 1 can never satisfy 2k - r = 0 mod (p-1)
    assert not weight_constraint_check(by_rank(2, 3, [1, 1, 7]), 22, 7)
    # jump of 1 at r = 0 needs 2k = 0 mod 6; jump of 2 needs 2k = 0 mod 42
    assert weight_constraint_check(by_rank(1, 3, [1, 7]), 3, 7)
    assert not weight_constraint_check(by_rank(1, 3, [1, 7]), 4, 7)
    assert not weight_constraint_check(by_rank(1, 3, [1, 49]), 3, 7)
    assert weight_constraint_check(by_rank(1, 3, [1, 49]), 21, 7)


# --------------------------------------------------------------------------
# limit coefficients
# --------------------------------------------------------------------------


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_mu_vanishes_for_k1(p):
    assert mu_j(WeightTarget(1, 1, p)) == 0


def test_mu_matches_rank_2k_valuation():
    for target, m in [(T171, 1), (T171, 2), (WeightTarget(1, 1, 11), 1)]:
        e = eis_deg2(weight_stage(target, m).weight, 5)
        assert rank_valuation_profile(e, target.p)[2] == mu_j(target)


def test_limit_local_factor_examples():
    assert limit_local_factor(1, 1, 1, 7) == 1
    assert limit_local_factor(2, 1, 0, 7) == -1
    assert limit_local_factor(2, -1, 0, 7) == 1
    assert limit_local_factor(3, 1, 1, 7) == -7
    assert limit_local_factor(4, -1, 0, 7) == -49
    assert limit_local_factor(0, 1, 0, 7) == 1


def test_limit_coefficient_k1_p7():
    (g,) = enumerate_target_genera(T171)
    assert limit_genus_coefficient(g, T171) == 4
    assert limit_bernoulli_factor(T171) == 4


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_constant_term_identity_binary(p):
    target = WeightTarget(1, 1, p)
    genera = enumerate_target_genera(target)
    assert len(genera) == 1
    assert sum(limit_genus_coefficient(g, target) * g.mass for g in genera) == 1


def test_constant_term_identity_quaternary():
    genera = enumerate_target_genera(T207)
    assert sum(limit_genus_coefficient(g, T207) * g.mass for g in genera) == 1
    assert {g.det2 for g in genera} <= {1, 49, 2401}


@pytest.mark.parametrize("target", [T171, WeightTarget(1, 1, 11), T207])
def test_stage_coefficients_converge_to_limit(target):
    prev = -1
    for g in enumerate_target_genera(target):
        for m in (1, 2):
            w = weight_stage(target, m).weight
            v = vp(stage_genus_coefficient(g, w) - limit_genus_coefficient(g, target), target.p)
            assert v >= m + 1 and v > prev
            prev = v
        prev = -1


def test_limit_coefficient_rejects_wrong_genus():
    (g,) = enumerate_target_genera(T171)
    with pytest.raises(ValueError):
        limit_genus_coefficient(g, WeightTarget(1, 1, 11))
    with pytest.raises(UnsupportedError):
        enumerate_target_genera(WeightTarget(3, 1, 11))


# --------------------------------------------------------------------------
# finite-stage properties
# --------------------------------------------------------------------------


def test_sequence_independence():
    for m in (1,):
        a = eis_deg2(weight_stage(T171, m).weight, 5)
        b = eis_deg2(weight_stage(T171, m, extra_periods=1).weight, 5)
        assert a.congruence_order(b, 7) >= m


def test_rank2_valuation_rate():
    # away from det(2T) = 7 * square the rank-2 coefficients gain a power of 7 per stage
    mins = []
    for m in (1, 2):
        e = eis_deg2(weight_stage(T171, m).weight, 5)
        vals = [vp(c, 7) for t, c in e.items() if t.rank() == 2 and not (t.det2 % 7 == 0 and is_square(t.det2 // 7))]
        mins.append(min(vals))
    assert mins[0] - 1 >= 1 and mins[1] - 2 >= 1


def test_monotone_order():
    r1 = verify_main_theorem(T171, 2, 1, 5)
    r2 = verify_main_theorem(T171, 2, 2, 5)
    assert r1.achieved_order >= 2
    assert r2.achieved_order >= r1.achieved_order


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def test_verify_main_report():
    r = verify_main_theorem(T171, 2, 1, 5)
    d = r.to_dict()
    assert r.ok and d["achieved_order"] == r.achieved_order
    assert d["witnesses"] == []
    assert all(w["valuation"] == r.achieved_order for w in d["tightest_coefficients"])
    assert set(d) >= {"params", "achieved_order", "rank_valuations", "witnesses", "effective_trace_bound", "assumption_checks", "version"}
    assert d["rank_valuations"]["0"] == 0
    assert d["assumption_checks"] == {"regular_prime": True, "nv": d["assumption_checks"]["nv"]}
    assert d["constant_term_identity"] == {"sum": "1", "holds": True}
    assert d["params"]["trace_bound"] == 5 and d["effective_trace_bound"] == 5


def test_verify_main_negative_has_witnesses():
    r = verify_main_theorem(T171, 2, 1, 4, min_order=50)
    assert not r.ok and r.witnesses
    assert all(w["valuation"] == r.achieved_order for w in r.witnesses)


def test_verify_main_degree3_phi():
    r = verify_main_theorem(T171, 3, 1, 3)
    assert r.details["theta_phi_compatible"] and r.ok


def test_verify_main_degree_range():
    with pytest.raises(UnsupportedError):
        verify_main_theorem(T171, 5, 1, 2)


@pytest.mark.parametrize("degree", [1, 2])
def test_verify_up(degree):
    r = verify_up_fixed(T171, degree, 1, 14)
    assert r.ok and r.achieved_order >= 1
    assert r.effective_trace_bound == 2
    assert r.details["constant_term_invariant"]
    with pytest.raises(BoundError):
        verify_up_fixed(T171, degree, 1, 6)
