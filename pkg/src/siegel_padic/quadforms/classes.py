"""Class enumeration, automorphism counts and genus partitioning."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..errors import DegenerateInputError, UnsupportedError
from .invariants import character_discriminant, genus_key, level
from .lattice import automorphism_count, lll_reduce, vectors_by_norm
from .matrix import HalfIntegralMatrix, bareiss_det
from .reduction import canonical_key, canonical_pd

__all__ = [
    "Genus",
    "GenusClass",
    "PosDefForm",
    "binary_class_number",
    "sl_class_count",
    "enumerate_classes",
    "epsilon",
    "genus_partition",
    "is_equivalent",
    "load_gram",
    "dump_gram",
]


@dataclass(frozen=True)
class PosDefForm:
    """A positive definite S in Lambda_m with cached det(2S) and level."""

    base: HalfIntegralMatrix

    def __post_init__(self):
        if not self.base.is_positive_definite():
            raise DegenerateInputError("form is not positive definite")

    @classmethod
    def from_twice(cls, rows) -> "PosDefForm":
        return cls(HalfIntegralMatrix.from_twice(rows))

    @property
    def rank(self) -> int:
        return self.base.size

    @property
    def det2(self) -> int:
        return self.base.det2

    @cached_property
    def level(self) -> int:
        return level(self.base)

    @cached_property
    def reduced(self) -> HalfIntegralMatrix:
        return canonical_pd(self.base)

    @property
    def reduced_flag(self) -> bool:
        return self.reduced == self.base

    def __repr__(self):
        return f"PosDefForm({self.base.to_json()})"


def _as_matrix(s) -> HalfIntegralMatrix:
    if isinstance(s, PosDefForm):
        return s.base
    if isinstance(s, HalfIntegralMatrix):
        return s
    return HalfIntegralMatrix.from_twice(s)


def epsilon(s) -> int:
    """|Aut(S)| = A(S, S)."""
    m = _as_matrix(s)
    if not m.is_positive_definite():
        raise DegenerateInputError("epsilon needs a positive definite form")
    return automorphism_count(lll_reduce(m.twice)[0])


def is_equivalent(a, b) -> bool:
    """GL-equivalence by searching for one isometry X with A[X] = B."""
    s, t = _as_matrix(a), _as_matrix(b)
    if s.size != t.size or s.det2 != t.det2:
        return False
    s = HalfIntegralMatrix.from_twice(lll_reduce(s.twice)[0])
    t = HalfIntegralMatrix.from_twice(lll_reduce(t.twice)[0])
    n = t.size
    diag = t.diagonal()
    groups = vectors_by_norm(s.twice, max(diag))
    if any(d not in groups for d in diag):
        return False
    g = s.array()
    cands = [groups[d] for d in diag]
    gc = [c @ g for c in cands]

    def rec(i, chosen_g):
        if i == n:
            return True
        mask = np.ones(len(cands[i]), dtype=bool)
        for j, row in enumerate(chosen_g):
            mask &= cands[i] @ row == t.twice[j][i]
        for idx in np.flatnonzero(mask):
            if rec(i + 1, chosen_g + [gc[i][idx]]):
                return True
        return False

    return rec(0, [])


@dataclass(frozen=True)
class GenusClass:
    form: PosDefForm
    epsilon: int


@dataclass(frozen=True)
class Genus:
    """GL-classes of one genus, with the shared invariants."""

    classes: tuple
    key: tuple = field(compare=False)

    @property
    def rank(self) -> int:
        return self.classes[0].form.rank

    @property
    def det2(self) -> int:
        return self.classes[0].form.det2

    @property
    def level(self) -> int:
        return self.classes[0].form.level

    @property
    def character_discriminant(self) -> int:
        return character_discriminant(self.classes[0].form.base)

    @property
    def mass(self) -> Fraction:
        return sum((Fraction(1, c.epsilon) for c in self.classes), Fraction(0))

    @property
    def representative(self) -> PosDefForm:
        return self.classes[0].form

    def label(self) -> str:
        return ";".join(str(c.form.base.to_json()) for c in self.classes)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------


def _binary_reduced(det2: int):
    out = []
    a = 1
    while 3 * a * a <= det2:
        for b in range(0, a + 1):
            num = det2 + b * b
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c >= a:
                out.append(HalfIntegralMatrix.binary(a, b, c))
        a += 1
    return out


def _adj3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return np.array(
        [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ],
        dtype=np.int64,
    )


def _quaternary_candidates(det2: int, slack: int):
    """Minkowski-box search for 4x4 even forms with det(2S) = det2.

    Uses a_11 a_22 a_33 a_44 <= slack * det2 / 16; Minkowski's inequality
    for reduced quaternary forms gives the bound with slack = 4.
    """
    limit = Fraction(slack * det2, 16)
    found = []
    a1 = 1
    while a1**4 <= limit:
        a2 = a1
        while a1 * a2**3 <= limit:
            a3 = a2
            while a1 * a2 * a3**2 <= limit:
                v = np.stack(
                    np.meshgrid(
                        np.arange(0, a1 + 1), np.arange(-a2, a2 + 1), np.arange(-a3, a3 + 1), indexing="ij"
                    ),
                    axis=-1,
                ).reshape(-1, 3)
                for b12 in range(0, a1 + 1):
                    if 4 * a1 * a2 - b12 * b12 <= 0:
                        continue
                    for b13 in range(0, a1 + 1):
                        for b23 in range(-a2, a2 + 1):
                            g3 = [[2 * a1, b12, b13], [b12, 2 * a2, b23], [b13, b23, 2 * a3]]
                            d3 = bareiss_det(g3)
                            if d3 <= 0:
                                continue
                            adj = _adj3(g3)
                            quad = np.einsum("ij,jk,ik->i", v, adj, v)
                            num = det2 + quad
                            ok = num % d3 == 0
                            two_a4 = num // d3
                            ok &= two_a4 % 2 == 0
                            ok &= two_a4 >= 2 * a3
                            ok &= a1 * a2 * a3 * (two_a4 // 2) <= limit
                            for idx in np.flatnonzero(ok):
                                b14, b24, b34 = (int(x) for x in v[idx])
                                a4 = int(two_a4[idx]) // 2
                                found.append(
                                    HalfIntegralMatrix.from_twice(
                                        [
                                            [2 * a1, b12, b13, b14],
                                            [b12, 2 * a2, b23, b24],
                                            [b13, b23, 2 * a3, b34],
                                            [b14, b24, b34, 2 * a4],
                                        ]
                                    )
                                )
                a3 += 1
            a2 += 1
        a1 += 1
    return found


def enumerate_classes(rank: int, det2: int, level_divides: int, slack: int = 8) -> list:
    """Reduced representatives of all GL-classes of positive definite S of the
    given rank with det(2S) = det2 and level(S) | level_divides.

    ``slack`` scales the rank-4 product bound (4 is Minkowski's constant;
    the default doubles it).
    """
    if rank not in (2, 4):
        raise UnsupportedError("class enumeration supports rank 2 and 4")
    if det2 <= 0:
        raise ValueError("det2 must be positive")
    if rank == 2:
        raw = _binary_reduced(det2)
    else:
        if slack < 4:
            raise ValueError("slack below Minkowski's constant would miss classes")
        raw = _quaternary_candidates(det2, slack)
    seen = {}
    for t in raw:
        if not t.is_positive_definite() or t.det2 != det2:
            continue
        if level_divides % level(t):
            continue
        c = canonical_pd(t)
        seen[c.twice] = c
    forms = sorted(seen.values(), key=canonical_key)
    return [PosDefForm(f) for f in forms]


def genus_partition(forms) -> list:
    """Group forms by genus invariants; classes deduplicated, genera sorted."""
    groups: dict = {}
    for f in forms:
        f = f if isinstance(f, PosDefForm) else PosDefForm(_as_matrix(f))
        key = genus_key(f.base)
        groups.setdefault(key, {})[f.reduced.twice] = PosDefForm(f.reduced)
    genera = []
    for key, members in groups.items():
        reps = sorted(members.values(), key=lambda x: canonical_key(x.base))
        classes = tuple(GenusClass(r, epsilon(r)) for r in reps)
        genera.append(Genus(classes, key))
    genera.sort(key=lambda g: (g.det2, canonical_key(g.classes[0].form.base)))
    return genera


def sl_class_count(forms) -> int:
    """Number of SL_2(Z)-classes in a list of GL-reduced binary representatives.

    A GL-class splits into two SL-classes unless it is ambiguous, i.e. has an
    improper automorph; for reduced 0 <= b <= a <= c that means b = 0, b = a
    or a = c.
    """
    h = 0
    for f in forms:
        m = _as_matrix(f)
        if m.size != 2:
            raise UnsupportedError("SL-class counting is for binary forms")
        a, b, c = m.twice[0][0] // 2, m.twice[0][1], m.twice[1][1] // 2
        h += 1 if (b == 0 or b == a or a == c) else 2
    return h


def binary_class_number(d: int) -> int:
    """h(d): SL_2(Z)-classes of primitive positive definite forms of discriminant d < 0."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError("need a negative discriminant")
    # the level of a binary form divides det(2S) = |d|
    forms = [f for f in enumerate_classes(2, -d, -d) if f.base.content() == 1]
    return sl_class_count(forms)


# --------------------------------------------------------------------------
# Gram file format
# --------------------------------------------------------------------------


def load_gram(path) -> PosDefForm:
    """Read {"rank": n, "twice_gram": [[...]]} (the matrix 2S)."""
    with open(path) as fh:
        data = json.load(fh)
    rows = data["twice_gram"]
    if len(rows) != data.get("rank", len(rows)):
        raise ValueError("rank does not match twice_gram")
    return PosDefForm.from_twice(rows)


def dump_gram(form, path=None) -> str:
    m = _as_matrix(form)
    text = json.dumps({"rank": m.size, "twice_gram": m.to_json()}, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
