"""Half-integral matrices, reduction, invariants, representation numbers and genera."""

from .classes import (
    Genus,
    GenusClass,
    PosDefForm,
    binary_class_number,
    dump_gram,
    enumerate_classes,
    epsilon,
    genus_partition,
    is_equivalent,
    load_gram,
    sl_class_count,
)
from .invariants import (
    chi_S,
    genus_key,
    hasse_invariant,
    hilbert_symbol,
    is_positive_definite,
    jordan_split_at_p,
    level,
    local_invariants,
    odd_jordan_symbol,
)
from .lattice import automorphism_count, lll_reduce, repr_count, short_vectors, vectors_by_norm
from .matrix import HalfIntegralMatrix
from .reduction import canonical_key, canonical_pd, reduce_form, reduced_forms, reduced_keys, semidefinite_split

reduce = reduce_form

__all__ = [
    "Genus",
    "GenusClass",
    "HalfIntegralMatrix",
    "PosDefForm",
    "automorphism_count",
    "binary_class_number",
    "canonical_key",
    "canonical_pd",
    "chi_S",
    "dump_gram",
    "enumerate_classes",
    "epsilon",
    "genus_key",
    "genus_partition",
    "hasse_invariant",
    "hilbert_symbol",
    "is_equivalent",
    "is_positive_definite",
    "jordan_split_at_p",
    "level",
    "lll_reduce",
    "load_gram",
    "local_invariants",
    "odd_jordan_symbol",
    "reduce",
    "reduce_form",
    "reduced_forms",
    "reduced_keys",
    "repr_count",
    "semidefinite_split",
    "short_vectors",
    "sl_class_count",
    "vectors_by_norm",
]
