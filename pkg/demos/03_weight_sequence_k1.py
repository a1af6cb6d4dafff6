"""
Eisenstein series of weight 1 + 3*7^m modulo powers of 7
========================================================

Along k(m) = 1 + 3*7^m the degree-two Eisenstein series approaches a
combination of genus theta series of binary forms of discriminant -7.
"""

from siegel_padic.eisenstein import eis_deg2
from siegel_padic.padic import (
    WeightTarget,
    detect_singular,
    enumerate_target_genera,
    limit_genus_coefficient,
    rank_valuation_profile,
    verify_main_theorem,
    weight_constraint_check,
    weight_stage,
)

target = WeightTarget(k=1, j=1, p=7)
(genus,) = enumerate_target_genera(target)
print("limit coefficient", limit_genus_coefficient(genus, target), "mass", genus.mass)

for m in (1, 2):
    w = weight_stage(target, m).weight
    report = verify_main_theorem(target, degree=2, m=m, trace_bound=5)
    print(f"m={m} weight={w} congruence order={report.achieved_order}")

# the weight-22 series is singular of 7-rank 2 modulo 7^order
e = eis_deg2(22, 5)
print("profile", rank_valuation_profile(e, 7))
print("p-rank, order", detect_singular(e, 7))
print("weight constraint", weight_constraint_check(e, 22, 7))
