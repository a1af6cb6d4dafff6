"""Theta series of positive definite forms and genus theta series."""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedError
from .qexpansion import QExpansion
from .quadforms.classes import Genus, _as_matrix
from .quadforms.invariants import character_discriminant, level
from .quadforms.lattice import repr_count

__all__ = ["QExpansion", "genus_theta0", "genus_theta_normalized", "theta_qexp"]


def theta_qexp(s, degree: int, trace_bound: int) -> QExpansion:
    """theta_S^{(n)}: coefficient A(S, T) at every reduced T with trace <= B."""
    m = _as_matrix(s)
    if m.size % 2:
        raise UnsupportedError("theta series are built for even rank")
    if trace_bound < 0:
        raise ValueError("trace bound must be nonnegative")
    return QExpansion.from_function(
        degree,
        trace_bound,
        lambda t: Fraction(repr_count(m, t)),
        label=f"theta{m.to_json()}",
        weight=Fraction(m.size, 2),
        level=level(m),
        character=f"disc {character_discriminant(m)}",
    )


def genus_theta0(g: Genus, degree: int, trace_bound: int) -> QExpansion:
    """sum over classes of theta_S / epsilon(S); constant term is the mass."""
    total = None
    for c in g.classes:
        term = theta_qexp(c.form, degree, trace_bound).scale(Fraction(1, c.epsilon))
        total = term if total is None else total + term
    rep = g.representative.base
    return total.map(
        lambda v: v,
        label=f"genus0[{g.label()}]",
        weight=Fraction(rep.size, 2),
        level=g.level,
        character=f"disc {g.character_discriminant}",
    )


def genus_theta_normalized(g: Genus, degree: int, trace_bound: int) -> QExpansion:
    """genus_theta0 divided by the mass (constant term 1)."""
    th = genus_theta0(g, degree, trace_bound)
    return (th / g.mass).map(lambda v: v, label=f"genus[{g.label()}]")
