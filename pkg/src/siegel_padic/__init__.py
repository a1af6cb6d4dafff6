"""Exact computations with p-adic Siegel-Eisenstein series of small degree.

Bernoulli numbers, quadratic forms and genera, theta series, Fourier
coefficients of Siegel-Eisenstein series of degree <= 2, U(p), and the
finite-stage verification that p-adic limits of Eisenstein series are
linear combinations of genus theta series of level p.
"""

from .config import VERSION
from .eisenstein import eis_deg1, eis_deg2, eisenstein, integrality_constant, primitive_coeff
from .hecke import apply_up, lambda_eigenvalue, phi_operator, up_theta_decompose
from .padic import (
    VerificationReport,
    WeightTarget,
    detect_singular,
    limit_genus_coefficient,
    mu_j,
    verify_main_theorem,
    verify_up_fixed,
    weight_stage,
)
from .qexpansion import QExpansion
from .quadforms import HalfIntegralMatrix, PosDefForm, enumerate_classes, genus_partition, reduce_form
from .theta import genus_theta0, theta_qexp

__version__ = VERSION

__all__ = [
    "HalfIntegralMatrix",
    "PosDefForm",
    "QExpansion",
    "VERSION",
    "VerificationReport",
    "WeightTarget",
    "apply_up",
    "detect_singular",
    "eis_deg1",
    "eis_deg2",
    "eisenstein",
    "enumerate_classes",
    "genus_partition",
    "genus_theta0",
    "integrality_constant",
    "lambda_eigenvalue",
    "limit_genus_coefficient",
    "mu_j",
    "phi_operator",
    "primitive_coeff",
    "reduce_form",
    "theta_qexp",
    "up_theta_decompose",
    "verify_main_theorem",
    "verify_up_fixed",
    "weight_stage",
]
