"""
Weight 2 + 6*7^m and quaternary lattices
========================================

The trivial-character case: the limit is a combination of genus theta
series of quaternary lattices of level 7.
"""

from siegel_padic.padic import WeightTarget, verify_main_theorem

report = verify_main_theorem(WeightTarget(k=2, j=0, p=7), degree=2, m=1, trace_bound=4)
print("order", report.achieved_order, "ok", report.ok)
for row in report.details["genera"]:
    print(row["det2"], row["mass"], row["limit_coefficient"], row["stage_minus_limit_valuation"])
print("constant term identity", report.details["constant_term_identity"])
