from fractions import Fraction
from math import lcm

import pytest

from siegel_padic.eisenstein import E8_TWICE_GRAM, eis_deg2
from siegel_padic.errors import UnsupportedError
from siegel_padic.qexpansion import QExpansion
from siegel_padic.quadforms import HalfIntegralMatrix as H
from siegel_padic.quadforms import enumerate_classes, genus_partition, reduce_form, reduced_keys, repr_count
from siegel_padic.theta import genus_theta0, genus_theta_normalized, theta_qexp

E8 = H(E8_TWICE_GRAM)
DISC7 = H.binary(1, 1, 2)


def genus_of(p):
    (g,) = genus_partition(enumerate_classes(2, p, p))
    return g


def test_theta_examples():
    th = theta_qexp(DISC7, 1, 4)
    assert th.constant_term == 1
    assert th[H.diag(1)] == 2
    assert th.weight == 1 and th.level == 7
    assert theta_qexp(E8, 1, 2)[H.diag(1)] == 240
    with pytest.raises(UnsupportedError):
        theta_qexp(H.diag(1, 1, 1), 1, 2)
    with pytest.raises(ValueError):
        theta_qexp(DISC7, 1, -1)


def test_degree1_theta_is_binary_form_count():
    # x^2 + xy + 2y^2 = t, counted directly
    th = theta_qexp(DISC7, 1, 12)
    for t in range(13):
        direct = sum(1 for x in range(-8, 9) for y in range(-8, 9) if x * x + x * y + 2 * y * y == t)
        assert th[H.diag(t)] == direct


def test_theta_coefficients_are_repr_counts():
    th = theta_qexp(H.binary(2, 1, 3), 2, 6)
    for t, c in th.items():
        assert c == repr_count(H.binary(2, 1, 3), t)


def test_all_reduced_keys_stored_with_explicit_zeros():
    th = theta_qexp(DISC7, 2, 4)
    assert set(th.keys()) == set(reduced_keys(2, 4))
    assert any(c == 0 for c in th.coeffs.values())


def test_lookup_accepts_unreduced_keys():
    th = theta_qexp(DISC7, 2, 6)
    t = H.from_twice([[2, -1], [-1, 4]])
    assert th[t] == th[reduce_form(t)]
    with pytest.raises(KeyError):
        th[H.diag(5, 5)]


@pytest.mark.parametrize("s", [DISC7, H.binary(2, 1, 3), H.diag(1, 1), E8])
def test_phi_compatibility(s):
    b = 4 if s is E8 else 6
    assert theta_qexp(s, 2, b).phi().equals(theta_qexp(s, 1, b))
    assert theta_qexp(s, 1, b).phi().constant_term == 1


def test_phi_twice_is_constant_term():
    th = theta_qexp(DISC7, 2, 4)
    d0 = th.phi().phi()
    assert d0.degree == 0 and d0.constant_term == th.constant_term


def test_genus_theta0_examples():
    g7 = genus_of(7)
    assert genus_theta0(g7, 2, 3).constant_term == Fraction(1, 4)
    g23 = genus_of(23)
    th = genus_theta0(g23, 1, 6)
    assert th.constant_term == Fraction(3, 4)
    # x^2+xy+6y^2 represents 1 twice (eps 4); 2x^2+xy+3y^2 does not
    assert th[H.diag(1)] == Fraction(2, 4)
    assert th[H.diag(2)] == Fraction(2, 2)


def test_genus_theta0_is_weighted_sum():
    g = genus_of(23)
    total = genus_theta0(g, 2, 5)
    for t, c in total.items():
        assert c == sum(Fraction(repr_count(cl.form.base, t), cl.epsilon) for cl in g.classes)


def test_genus_theta0_denominators():
    g = genus_of(47)
    den = lcm(*[c.epsilon for c in g.classes])
    for _, c in genus_theta0(g, 2, 5).items():
        assert (c * den).denominator == 1


def test_genus_theta_normalized():
    g7 = genus_of(7)
    nrm = genus_theta_normalized(g7, 1, 5)
    assert nrm.constant_term == 1
    assert nrm[H.diag(1)] == 2
    g23 = genus_of(23)
    nrm = genus_theta_normalized(g23, 2, 4)
    raw = genus_theta0(g23, 2, 4)
    assert all(nrm.coeffs[t] == raw.coeffs[t] / g23.mass for t in raw.keys())


def test_e8_genus_theta_is_eisenstein():
    # E8 is alone in its genus, so the normalised genus theta series is theta_E8
    assert theta_qexp(E8, 2, 3).equals(eis_deg2(4, 3))


def test_json_roundtrip():
    th = genus_theta0(genus_of(23), 2, 4)
    back = QExpansion.from_json(th.to_json())
    assert back.equals(th) and back.degree == 2 and back.trace_bound == 4
    d = th.to_dict()
    assert d["coeffs"][0] == {"t": [[0, 0], [0, 0]], "c": "3/4"}
