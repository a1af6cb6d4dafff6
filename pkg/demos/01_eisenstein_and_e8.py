"""
Degree-two Eisenstein series from primitive coefficients
========================================================

The weight-4 Siegel-Eisenstein series of degree two is computed by summing
primitive coefficients over overlattices and compared with the theta series
of the E8 lattice, which is alone in its genus.
"""

from siegel_padic import eis_deg2, integrality_constant, primitive_coeff, theta_qexp
from siegel_padic.eisenstein import E8_TWICE_GRAM, overlattice_divisors
from siegel_padic.quadforms import HalfIntegralMatrix

# each key T is stored through 2T; here x^2 + xy + y^2
t = HalfIntegralMatrix.binary(1, 1, 1)
b = primitive_coeff(4, t)
print("a*_4(T) =", b.bernoulli_part, "*", b.local_part, "=", b.value)

# non-primitive keys pick up contributions from their overlattices
t4 = HalfIntegralMatrix.binary(2, 2, 2)
print("overlattices of 2*(x^2+xy+y^2):", overlattice_divisors(t4))

# the two routes agree key by key
eis = eis_deg2(4, 4)
theta = theta_qexp(HalfIntegralMatrix(E8_TWICE_GRAM), 2, 4)
for key, value in eis.items():
    print(key.to_json(), value, theta.coeffs[key])
print("E_4^(2) == theta_E8^(2):", eis.equals(theta))

# every rank-2 coefficient is a multiple of the integrality constant
for k in (4, 6, 8):
    c = integrality_constant(k, 2)
    e = eis_deg2(k, 5)
    print(k, c, all((e.coeffs[t] / c).denominator == 1 for t in e.keys_of_rank(2)))
