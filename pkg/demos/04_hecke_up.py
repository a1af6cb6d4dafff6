"""
The U(p) operator
=================

U(p) on Eisenstein series (eigenvalue congruence), on the normalised
p-adic family (fixed points), and on theta series of level p^2.
"""

from siegel_padic.cli import up_theta_forms
from siegel_padic.eisenstein import eis_deg2
from siegel_padic.hecke import apply_up, lambda_eigenvalue, up_theta_check, up_theta_decompose
from siegel_padic.padic import WeightTarget, verify_up_fixed

# E_6^(2) | U(3) = lambda * E_6^(2) mod 3^(6-2)
e = eis_deg2(6, 6)
up = apply_up(e, 3)
lam = lambda_eigenvalue(2, 6, 3)
print("lambda =", lam, "order", up.congruence_order(e.restrict(up.trace_bound).scale(lam), 3))

# at weight 22 the eigenvalue is 1 mod 7^21 and the series is U(7)-fixed
for degree in (1, 2):
    r = verify_up_fixed(WeightTarget(1, 1, 7), degree, 1, 14)
    print("degree", degree, "order", r.achieved_order)

# theta series of level dividing 49 lower to level 7 under U(7)
forms = up_theta_forms(7, 2)
alpha, ordered = up_theta_decompose(forms, 7)
print([f.base.to_json() for f in ordered], alpha)
print(up_theta_check(ordered, alpha, 7, 2, 14))
