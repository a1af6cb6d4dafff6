"""Truncated Fourier expansions indexed by reduced semidefinite T in Lambda_n."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .exact import as_fraction, format_rational, min_valuation, parse_rational
from .quadforms.matrix import HalfIntegralMatrix
from .quadforms.reduction import reduce_form, reduced_keys

__all__ = ["QExpansion", "key_rank"]


def key_rank(t: HalfIntegralMatrix) -> int:
    return t.rank()


@dataclass(frozen=True)
class QExpansion:
    """sum a(T) q^T over reduced T >= 0 with trace(T) <= trace_bound.

    Every reduced key within the bound is present (zeros stored).  Lookups
    accept any semidefinite T and reduce it first.
    """

    degree: int
    trace_bound: int
    coeffs: dict
    label: str = ""
    weight: Optional[Fraction] = None
    level: Optional[int] = None
    character: Optional[str] = None
    _order: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        keys = reduced_keys(self.degree, self.trace_bound)
        if set(keys) != set(self.coeffs):
            raise ValueError("coefficient keys must be exactly the reduced keys within the bound")
        fixed = {k: as_fraction(self.coeffs[k]) for k in keys}
        object.__setattr__(self, "coeffs", fixed)
        object.__setattr__(self, "_order", keys)

    # construction -------------------------------------------------------
    @classmethod
    def from_function(cls, degree: int, trace_bound: int, f: Callable, **meta) -> "QExpansion":
        keys = reduced_keys(degree, trace_bound)
        return cls(degree, trace_bound, {t: f(t) for t in keys}, **meta)

    # access -------------------------------------------------------------
    def keys(self) -> tuple:
        return self._order

    def items(self):
        return ((k, self.coeffs[k]) for k in self._order)

    def __getitem__(self, t) -> Fraction:
        if not isinstance(t, HalfIntegralMatrix):
            t = HalfIntegralMatrix.from_twice(t)
        if t.size != self.degree:
            raise KeyError("degree mismatch")
        r = reduce_form(t)
        if r.trace() > self.trace_bound:
            raise KeyError(f"trace {r.trace()} exceeds the bound {self.trace_bound}")
        return self.coeffs[r]

    def coefficient(self, t) -> Fraction:
        return self[t]

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[HalfIntegralMatrix.zero(self.degree)]

    def keys_of_rank(self, r: int) -> list:
        return [k for k in self._order if k.rank() == r]

    # transformations ----------------------------------------------------
    def _meta(self, **over):
        meta = dict(label=self.label, weight=self.weight, level=self.level, character=self.character)
        meta.update(over)
        return meta

    def restrict(self, trace_bound: int) -> "QExpansion":
        if trace_bound > self.trace_bound:
            raise ValueError("cannot extend a truncated expansion")
        return QExpansion.from_function(self.degree, trace_bound, lambda t: self.coeffs[t], **self._meta())

    def phi(self) -> "QExpansion":
        """Siegel Phi: the degree n-1 expansion read off at keys diag(T', 0)."""
        if self.degree == 0:
            raise ValueError("Phi needs degree >= 1")
        n = self.degree
        return QExpansion.from_function(
            n - 1, self.trace_bound, lambda t: self.coeffs[reduce_form(t.padded(n))], **self._meta()
        )

    def map(self, f: Callable, **meta) -> "QExpansion":
        return QExpansion(self.degree, self.trace_bound, {k: f(v) for k, v in self.coeffs.items()}, **self._meta(**meta))

    def _common(self, other: "QExpansion"):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        b = min(self.trace_bound, other.trace_bound)
        a = self if self.trace_bound == b else self.restrict(b)
        c = other if other.trace_bound == b else other.restrict(b)
        return a, c, b

    def __add__(self, other: "QExpansion") -> "QExpansion":
        a, c, b = self._common(other)
        return QExpansion.from_function(self.degree, b, lambda t: a.coeffs[t] + c.coeffs[t], label="")

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        a, c, b = self._common(other)
        return QExpansion.from_function(self.degree, b, lambda t: a.coeffs[t] - c.coeffs[t], label="")

    def __neg__(self) -> "QExpansion":
        return self.map(lambda v: -v)

    def scale(self, c) -> "QExpansion":
        c = as_fraction(c)
        return self.map(lambda v: c * v)

    def __mul__(self, c) -> "QExpansion":
        if isinstance(c, QExpansion):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "QExpansion":
        return self.scale(1 / as_fraction(c))

    def equals(self, other: "QExpansion") -> bool:
        """Coefficientwise equality on the common trace bound."""
        a, c, _ = self._common(other)
        return a.coeffs == c.coeffs

    # p-adic summaries ---------------------------------------------------
    def valuation(self, p: int, rank: Optional[int] = None):
        """min vp over coefficients (of a given rank, if supplied)."""
        vals = (v for k, v in self.items() if rank is None or k.rank() == rank)
        return min_valuation(vals, p)

    def rank_valuations(self, p: int) -> dict:
        return {r: self.valuation(p, r) for r in range(self.degree + 1)}

    def congruence_order(self, other: "QExpansion", p: int):
        """min vp(a - b) on the common keys (INFINITY when equal)."""
        a, c, _ = self._common(other)
        return min_valuation((a.coeffs[k] - c.coeffs[k] for k in a.keys()), p)

    # serialisation ------------------------------------------------------
    def to_dict(self) -> dict:
        out = {
            "degree": self.degree,
            "trace_bound": self.trace_bound,
            "coeffs": [{"t": k.to_json(), "c": format_rational(self.coeffs[k])} for k in self._order],
        }
        if self.label:
            out["label"] = self.label
        if self.weight is not None:
            out["weight"] = format_rational(self.weight)
        if self.level is not None:
            out["level"] = self.level
        if self.character is not None:
            out["character"] = self.character
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "QExpansion":
        coeffs = {}
        for entry in data["coeffs"]:
            t = HalfIntegralMatrix.from_twice(entry["t"])
            coeffs[reduce_form(t)] = parse_rational(entry["c"])
        weight = data.get("weight")
        return cls(
            data["degree"],
            data["trace_bound"],
            coeffs,
            label=data.get("label", ""),
            weight=parse_rational(weight) if weight is not None else None,
            level=data.get("level"),
            character=data.get("character"),
        )

    @classmethod
    def from_json(cls, text: str) -> "QExpansion":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"QExpansion(degree={self.degree}, trace_bound={self.trace_bound}, label={self.label!r}, terms={len(self._order)})"
