import itertools
import json
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_padic.eisenstein import E8_TWICE_GRAM
from siegel_padic.errors import DegenerateInputError, UnsupportedError
from siegel_padic.quadforms import (
    HalfIntegralMatrix,
    PosDefForm,
    automorphism_count,
    binary_class_number,
    canonical_pd,
    chi_S,
    dump_gram,
    enumerate_classes,
    epsilon,
    genus_key,
    genus_partition,
    hasse_invariant,
    hilbert_symbol,
    is_equivalent,
    is_positive_definite,
    jordan_split_at_p,
    level,
    lll_reduce,
    load_gram,
    local_invariants,
    reduce_form,
    reduced_forms,
    reduced_keys,
    repr_count,
    semidefinite_split,
    short_vectors,
    sl_class_count,
)
from siegel_padic.quadforms.invariants import _adjugate

E8 = HalfIntegralMatrix(E8_TWICE_GRAM)
H = HalfIntegralMatrix


# --------------------------------------------------------------------------
# oracles
# --------------------------------------------------------------------------


def random_unimodular(n, rng, steps=12):
    u = np.eye(n, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        e = np.eye(n, dtype=np.int64)
        e[i, j] = int(rng.integers(-2, 3))
        u = u @ e
        if rng.random() < 0.3:
            u = u[:, rng.permutation(n)]
        if rng.random() < 0.3:
            u[:, int(rng.integers(n))] *= -1
    return u.tolist()


def brute_vectors(s: HalfIntegralMatrix, t: int):
    """All x with S[x] = t, scanning |x_i|^2 <= t (S^-1)_ii."""
    adj = _adjugate(s.twice)
    bounds = [isqrt(2 * t * adj[i][i] // s.det2) + 1 for i in range(s.size)]
    return [x for x in itertools.product(*[range(-b, b + 1) for b in bounds]) if s.value(x) == t]


def brute_repr_count(s: HalfIntegralMatrix, t: HalfIntegralMatrix) -> int:
    cols = [brute_vectors(s, d) for d in t.diagonal()]
    g = s.twice
    count = 0
    for xs in itertools.product(*cols):
        ok = all(
            sum(xs[i][a] * g[a][b] * xs[j][b] for a in range(s.size) for b in range(s.size)) == t.twice[i][j]
            for i in range(t.size)
            for j in range(i + 1, t.size)
        )
        count += ok
    return count


def brute_level(s: HalfIntegralMatrix) -> int:
    adj = _adjugate(s.twice)
    det = s.det2
    n = 1
    while True:
        if all((n * adj[i][j]) % det == 0 for i in range(s.size) for j in range(s.size)) and all(
            (n * adj[i][i] // det) % 2 == 0 for i in range(s.size)
        ):
            return n
        n += 1


def sl_reduced_count(d: int) -> int:
    """Oracle: primitive SL-reduced forms |b| <= a <= c, b >= 0 if |b| = a or a = c."""
    n = -d
    h = 0
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            if (n + b * b) % (4 * a):
                continue
            c = (n + b * b) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                h += 1
        a += 1
    return h


small_binary = st.tuples(st.integers(1, 6), st.integers(-6, 6), st.integers(1, 6)).filter(
    lambda t: 4 * t[0] * t[2] - t[1] ** 2 > 0
).map(lambda t: H.binary(*t))


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


def test_matrix_validation():
    with pytest.raises(ValueError):
        H.from_twice([[1, 0], [0, 2]])
    with pytest.raises(ValueError):
        H.from_twice([[2, 1], [0, 2]])
    t = H.binary(1, 1, 2)
    assert t.det2 == 7
    assert t.entry(0, 1) == Fraction(1, 2)
    assert t.trace() == 3
    assert t.diagonal() == (1, 2)
    assert H.diag(2, 4).content() == 2
    assert t.padded(3).rank() == 2
    assert t.direct_sum(t).det2 == 49


def test_positive_definite_examples():
    assert is_positive_definite(H.diag(1, 1))
    assert not is_positive_definite(H.zero(2))
    assert not is_positive_definite(H.from_twice([[2, 3], [3, 2]]))
    assert H.zero(3).is_positive_semidefinite()
    assert H.diag(1, 0).is_positive_semidefinite()


# --------------------------------------------------------------------------
# reduction
# --------------------------------------------------------------------------


def test_reduce_examples():
    assert reduce_form(H.diag(2, 1)) == H.diag(1, 2)
    assert reduce_form(H.from_twice([[2, -1], [-1, 2]])) == H.from_twice([[2, 1], [1, 2]])
    assert reduce_form(H.zero(2)) == H.zero(2)
    assert reduce_form(H.zero(0)) == H.zero(0)


def test_reduce_semidefinite():
    t = H.from_twice([[2, 2], [2, 2]])  # x^2 + 2xy + y^2 = (x+y)^2
    assert reduce_form(t) == H.diag(1, 0)
    t3 = H.from_twice([[4, 2, 0], [2, 2, 0], [0, 0, 0]])
    core, u = semidefinite_split(t3)
    assert core.size == 2 and core.det2 == t3.block(2).det2


def test_reduce_rejects_large_or_indefinite():
    with pytest.raises(UnsupportedError):
        reduce_form(E8)
    with pytest.raises(DegenerateInputError):
        reduce_form(H.from_twice([[2, 3], [3, 2]]))


def test_reduced_key_counts():
    assert len(reduced_forms(2, 4)) == 9
    assert len(reduced_forms(2, 5)) == 14
    keys = reduced_keys(2, 4)
    assert keys[0] == H.zero(2)
    assert all(reduce_form(k) == k for k in keys)
    assert len(set(keys)) == len(keys)


@settings(max_examples=150, deadline=None)
@given(small_binary)
def test_binary_fast_path_matches_general_search(t):
    assert canonical_pd(t) == canonical_pd(t, general=True)


@settings(max_examples=150, deadline=None)
@given(small_binary)
def test_reduced_binary_is_minkowski(t):
    r = reduce_form(t)
    a, b, c = r.twice[0][0] // 2, r.twice[0][1], r.twice[1][1] // 2
    assert 0 <= b <= a <= c


def test_lll_unimodular():
    reduced, u = lll_reduce(E8_TWICE_GRAM)
    assert abs(round(np.linalg.det(np.array(u, dtype=float)))) == 1
    assert H.from_twice(reduced) == E8.transform(u)


# --------------------------------------------------------------------------
# GL-invariance (100 random unimodular transforms)
# --------------------------------------------------------------------------

INVARIANCE_FORMS = [
    H.binary(1, 1, 2),
    H.binary(2, 1, 3),
    H.diag(1, 3),
    H.from_twice([[2, 1, 0], [1, 2, 1], [0, 1, 4]]),
    H.from_twice([[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 4, 0], [0, 1, 0, 4]]),
    H.from_twice([[2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 2, 1], [1, 1, 1, 2]]),
]


def test_gl_invariance_100_transforms():
    rng = np.random.default_rng(20240611)
    probes = {2: [H.diag(1, 1), H.binary(1, 1, 2)], 3: [H.diag(1, 1, 1)], 4: [H.diag(1, 1, 1, 1)]}
    for trial in range(100):
        s = INVARIANCE_FORMS[trial % len(INVARIANCE_FORMS)]
        u = random_unimodular(s.size, rng)
        su = s.transform(u)
        assert reduce_form(su) == reduce_form(s)
        assert su.det2 == s.det2
        assert level(su) == level(s)
        assert epsilon(su) == epsilon(s)
        assert genus_key(su) == genus_key(s)
        if s.size % 2 == 0:
            for d in (1, 3, 5, -5, 11):
                assert chi_S(su, d) == chi_S(s, d)
        for probe in probes.get(2, []) + [H.diag(1), H.diag(2), H.diag(3)]:
            if probe.size <= 2:
                assert repr_count(su, probe) == repr_count(s, probe)
        v = random_unimodular(2, rng)
        t = H.binary(1, 1, 2)
        assert repr_count(s, t.transform(v)) == repr_count(s, t)


# --------------------------------------------------------------------------
# representation numbers and automorphisms
# --------------------------------------------------------------------------


def test_repr_count_examples():
    assert repr_count(H.binary(1, 1, 2), H.zero(2)) == 1
    assert repr_count(E8, H.diag(1)) == 240
    assert repr_count(H.binary(1, 1, 2), H.binary(1, 1, 2)) == 4
    assert repr_count(H.binary(1, 1, 2), H.from_twice([[2, 3], [3, 2]])) == 0


def test_e8_vector_counts():
    counts = {t: len(v) for t, v in __import__("siegel_padic.quadforms.lattice", fromlist=["x"]).vectors_by_norm(E8, 4).items()}
    assert counts == {0: 1, 1: 240, 2: 2160, 3: 6720, 4: 17520}
    assert len(short_vectors(E8, 2)) == 1 + 240 + 2160


@settings(max_examples=40, deadline=None)
@given(small_binary, st.sampled_from([H.diag(1), H.diag(2), H.diag(5), H.diag(1, 1), H.binary(1, 1, 2), H.binary(1, 0, 2), H.diag(2, 3)]))
def test_repr_count_brute_force(s, t):
    assert repr_count(s, t) == brute_repr_count(s, t)


def test_repr_count_brute_force_ternary():
    s = H.from_twice([[2, 1, 0], [1, 2, 1], [0, 1, 4]])
    for t in (H.diag(1), H.diag(2), H.diag(1, 1), H.binary(1, 1, 2), H.diag(1, 2)):
        assert repr_count(s, t) == brute_repr_count(s, t)


@pytest.mark.parametrize(
    "form, eps",
    [
        (H.binary(1, 1, 2), 4),
        (H.binary(1, 1, 1), 12),
        (H.binary(1, 0, 1), 8),
        (H.binary(2, 1, 3), 2),
        (H.binary(1, 1, 6), 4),
    ],
)
def test_epsilon_binary(form, eps):
    assert epsilon(form) == eps
    assert repr_count(form, form) == eps
    assert brute_repr_count(form, form) == eps


def test_epsilon_quaternary_agrees_with_repr_count():
    for s in INVARIANCE_FORMS[4:]:
        assert automorphism_count(s) == repr_count(s, s)
        assert automorphism_count(s) % 2 == 0


def test_epsilon_e8():
    assert epsilon(E8) == 696729600


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------


def test_level_examples():
    assert level(H.binary(1, 1, 2)) == 7
    assert level(E8) == 1
    assert level(H.diag(7, 7)) == 28


@settings(max_examples=100, deadline=None)
@given(small_binary)
def test_level_matches_definition(s):
    lev = level(s)
    assert lev == brute_level(s)
    assert (2 * s.det2) % lev == 0
    assert (lev**s.size) % s.det2 == 0


def test_chi_examples():
    s = H.binary(1, 1, 2)
    assert chi_S(s, 3) == -1
    assert chi_S(s, 1) == 1
    assert chi_S(s, 7) == 0
    square = H.from_twice([[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 4, 0], [0, 1, 0, 4]])  # det2 = 49
    assert all(chi_S(square, d) == 1 for d in (1, 2, 3, 5, 11, -3))
    with pytest.raises(UnsupportedError):
        chi_S(H.from_twice([[2, 1, 0], [1, 2, 1], [0, 1, 4]]), 3)


def test_jordan_examples():
    assert jordan_split_at_p(H.binary(1, 1, 2), 7) == (1, 1)
    assert jordan_split_at_p(E8, 7) == (0, 1)
    s, lam = jordan_split_at_p(H.diag(1, 1, 7, 7), 7)
    # regular part x^2 + y^2: (-1) * 4 = 3 is a non-residue mod 7
    assert (s, lam) == (2, -1)
    with pytest.raises(UnsupportedError):
        jordan_split_at_p(H.binary(7, 7, 14), 7)


def test_local_invariants_split_and_nonsplit():
    # x^2 + y^2 mod 3 is anisotropic (non-split), mod 5 split
    assert local_invariants(H.diag(1, 1), 3) == (0, -1)
    assert local_invariants(H.diag(1, 1), 5) == (0, 1)
    # over F_2: x^2+xy+y^2 is non-split, xy split
    assert local_invariants(H.binary(1, 1, 1), 2) == (0, -1)
    assert local_invariants(H.from_twice([[0, 1], [1, 0]]), 2) == (0, 1)


def test_hilbert_symbol_values():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(3, 7, 7) == -1
    assert hilbert_symbol(2, 7, 7) == 1
    # product formula
    for a, b in [(3, 5), (-7, 11), (6, -10), (Fraction(2, 3), 13)]:
        prod = hilbert_symbol(a, b, "inf")
        for q in (2, 3, 5, 7, 11, 13):
            prod *= hilbert_symbol(a, b, q)
        assert prod == 1


def test_hasse_invariant_product_formula():
    for s in INVARIANCE_FORMS:
        prod = hasse_invariant(s, "inf")
        for q in (2, 3, 5, 7, 11, 13):
            prod *= hasse_invariant(s, q)
        assert prod == 1


# --------------------------------------------------------------------------
# class enumeration and genera
# --------------------------------------------------------------------------


def test_enumerate_binary_examples():
    assert [f.base for f in enumerate_classes(2, 7, 7)] == [H.binary(1, 1, 2)]
    assert [f.base for f in enumerate_classes(2, 23, 23)] == [H.binary(1, 1, 6), H.binary(2, 1, 3)]
    assert enumerate_classes(2, 1, 7) == []
    with pytest.raises(UnsupportedError):
        enumerate_classes(3, 4, 4)


@pytest.mark.parametrize("p, h", [(7, 1), (11, 1), (23, 3)])
def test_enumerate_reproduces_class_numbers(p, h):
    forms = enumerate_classes(2, p, p)
    assert sl_class_count(forms) == h
    assert binary_class_number(-p) == h


@pytest.mark.parametrize("d", [-3, -4, -7, -8, -15, -20, -23, -31, -47, -56, -71, -84, -87, -104])
def test_class_number_oracle(d):
    assert binary_class_number(d) == sl_reduced_count(d)


def test_enumerated_forms_are_reduced_and_inequivalent():
    for rank, det2, lev in [(2, 23, 23), (2, 47, 47), (4, 49, 7), (4, 121, 11)]:
        forms = enumerate_classes(rank, det2, lev)
        for f in forms:
            assert reduce_form(f.base) == f.base
            assert f.det2 == det2 and lev % f.level == 0
        for a, b in itertools.combinations(forms, 2):
            assert not is_equivalent(a, b)


def test_quaternary_level_7():
    assert enumerate_classes(4, 1, 7) == []
    forms = enumerate_classes(4, 49, 7)
    assert [f.base for f in forms] == [H.from_twice([[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 4, 0], [0, 1, 0, 4]])]
    assert enumerate_classes(4, 2401, 7) == []
    # the slack doubles Minkowski's constant and must not change the answer
    assert enumerate_classes(4, 49, 7, slack=4) == forms


def test_genus_partition_masses():
    g = genus_partition(enumerate_classes(2, 7, 7))
    assert len(g) == 1 and g[0].mass == Fraction(1, 4)
    g = genus_partition(enumerate_classes(2, 23, 23))
    assert len(g) == 1 and g[0].mass == Fraction(3, 4)
    # disc -56 has two genera (x^2+14y^2, 2x^2+7y^2 | 3x^2+2xy+5y^2)
    g = genus_partition(enumerate_classes(2, 56, 56))
    assert len(g) == 2
    for genus in g:
        assert genus.mass == sum(Fraction(1, c.epsilon) for c in genus.classes)
        for c in genus.classes:
            assert c.epsilon % 2 == 0


@pytest.mark.parametrize("p", [7, 11, 19, 23, 31, 43, 47])
def test_binary_mass_is_quarter_class_number(p):
    # GL-mass = sum 1/eps = h(-p)/4 (an ambiguous class has eps = 4, a pair of SL-classes eps = 2)
    (g,) = genus_partition(enumerate_classes(2, p, p))
    assert g.mass == Fraction(binary_class_number(-p), 4)


def test_gram_file_roundtrip(tmp_path):
    path = tmp_path / "s.json"
    dump_gram(PosDefForm(H.binary(1, 1, 2)), path)
    data = json.loads(path.read_text())
    assert data == {"rank": 2, "twice_gram": [[2, 1], [1, 4]]}
    assert load_gram(path).base == H.binary(1, 1, 2)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rank": 3, "twice_gram": [[2, 1], [1, 4]]}))
    with pytest.raises(ValueError):
        load_gram(bad)
