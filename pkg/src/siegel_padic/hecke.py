"""U(p) on truncated expansions, the Siegel Phi operator, Eisenstein
T_n(p)-eigenvalues and the decomposition of theta_S | U(p)."""

from __future__ import annotations

from fractions import Fraction

from .errors import BoundError, CompletenessError
from .exact import check_prime
from .qexpansion import QExpansion
from .quadforms.classes import PosDefForm, _as_matrix, epsilon
from .quadforms.invariants import level
from .quadforms.lattice import repr_count
from .quadforms.reduction import reduce_form

__all__ = [
    "apply_up",
    "lambda_eigenvalue",
    "level_vanishing_ok",
    "phi_operator",
    "up_theta_check",
    "up_theta_decompose",
]


def apply_up(f: QExpansion, p: int) -> QExpansion:
    """F | U(p): coefficient a_F(pT), trace bound floor(B/p)."""
    check_prime(p)
    if f.trace_bound < p:
        raise BoundError(f"trace bound {f.trace_bound} < p = {p}")
    return QExpansion.from_function(
        f.degree,
        f.trace_bound // p,
        lambda t: f.coeffs[reduce_form(t.scaled(p))],
        label=f"{f.label}|U({p})" if f.label else f"U({p})",
        weight=f.weight,
        level=f.level,
        character=f.character,
    )


def phi_operator(f: QExpansion) -> QExpansion:
    """Siegel Phi: degree n-1 expansion, a(T') = a_F(diag(T', 0))."""
    return f.phi()


def lambda_eigenvalue(n: int, k: int, p: int) -> int:
    """T_n(p)-eigenvalue of E_k^{(n)}: lambda_n = p^{nk - n(n+1)/2} + lambda_{n-1}, lambda_0 = 1."""
    check_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    val = 1
    for i in range(1, n + 1):
        e = i * k - i * (i + 1) // 2
        val += p**e if e >= 0 else Fraction(1, p**-e)
    return val


def _solve_upper_unitriangular(g, r):
    """X with X g = r for upper unitriangular g (row vectors of r)."""
    h = len(g)
    out = []
    for row in r:
        x = [Fraction(0)] * h
        for j in range(h):
            s = row[j] - sum(x[t] * g[t][j] for t in range(j))
            x[j] = s  # g[j][j] == 1
        out.append(x)
    return out


def up_theta_decompose(forms, p: int) -> list:
    """alpha with theta_{S_i} | U(p) = sum_j alpha[i][j] theta_{S_j}.

    Uses A(S_i, p S_j)/eps(S_j) = sum_t alpha(S_i, S_t) A(S_t, S_j)/eps(S_j);
    forms are sorted by det(2S) so the system is upper unitriangular.  A
    non-unit diagonal means the list of classes is incomplete or redundant.
    """
    check_prime(p)
    mats = sorted((_as_matrix(f) for f in forms), key=lambda m: (m.det2, m.twice))
    h = len(mats)
    eps = [epsilon(m) for m in mats]
    g = [[Fraction(repr_count(mats[t], mats[j]), eps[j]) for j in range(h)] for t in range(h)]
    for t in range(h):
        if g[t][t] != 1:
            raise CompletenessError("class list is not a set of inequivalent representatives")
        for j in range(t):
            if g[t][j] != 0:
                raise CompletenessError("coefficient matrix is not upper triangular")
    r = [[Fraction(repr_count(mats[i], mats[j].scaled(p)), eps[j]) for j in range(h)] for i in range(h)]
    return _solve_upper_unitriangular(g, r), [PosDefForm(m) for m in mats]


def up_theta_check(forms, alpha, p: int, degree: int, trace_bound: int) -> dict:
    """Compare theta_S | U(p) with sum_j alpha theta_{S_j} on the usable bound."""
    from .theta import theta_qexp

    thetas = [theta_qexp(f, degree, trace_bound) for f in forms]
    lowered = [apply_up(th, p) for th in thetas]
    b = trace_bound // p
    small = [th.restrict(b) for th in thetas]
    mismatches = []
    for i, lhs in enumerate(lowered):
        for t in lhs.keys():
            rhs = sum((alpha[i][j] * small[j].coeffs[t] for j in range(len(forms))), Fraction(0))
            if rhs != lhs.coeffs[t]:
                mismatches.append((i, t.to_json(), lhs.coeffs[t], rhs))
    integral = all(a.denominator == 1 for row in alpha for a in row)
    return {"effective_trace_bound": b, "mismatches": mismatches, "integral": integral}


def level_vanishing_ok(forms, alpha, p: int, e: int) -> bool:
    """alpha(S_i, S_j) = 0 unless level(S_j) | max(p, p^{e-1})."""
    cap = max(p, p ** (e - 1))
    for row in alpha:
        for j, a in enumerate(row):
            if a and cap % level(_as_matrix(forms[j])):
                return False
    return True
