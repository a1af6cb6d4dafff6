"""Frozen normalisation constants.

The Bernoulli part of a primitive Eisenstein coefficient of size n carries
a factor sign * 2**e.  Both were fixed once by requiring the degree-two
weight-four series to equal the theta series of E8 coefficient by
coefficient, and by the constant-term identity of the genus decomposition;
they are not meant to be tuned.
"""

from __future__ import annotations


def bernoulli_part_two_exponent(n: int) -> int:
    """Exponent e in 2**e for size n (n even)."""
    return n // 2


def bernoulli_part_sign(n: int) -> int:
    """Sign (-1)**(n/2) for size n (n even)."""
    return -1 if (n // 2) % 2 else 1


VERSION = "0.1.0"
