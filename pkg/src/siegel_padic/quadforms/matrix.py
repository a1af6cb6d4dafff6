"""Half-integral symmetric matrices, stored through their doubles 2T."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = ["HalfIntegralMatrix", "bareiss_det", "ldl", "psd_rank"]


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def ldl(rows: Sequence[Sequence[int]]):
    """Symmetric elimination without pivoting: returns (mu, d) as Fractions.

    q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.  Requires every
    leading minor to be nonzero (true for positive definite input).
    """
    n = len(rows)
    a = [[Fraction(v) for v in r] for r in rows]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] == 0:
            raise ValueError("zero pivot")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for l in range(j, n):
                a[j][l] -= mu[i][j] * a[i][l]
                a[l][j] = a[j][l]
    return mu, d


def psd_rank(rows: Sequence[Sequence[int]]):
    """(is_psd, rank) by exact symmetric elimination."""
    n = len(rows)
    a = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    alive = list(range(n))
    while alive:
        i = alive.pop(0)
        piv = a[i][i]
        if piv < 0:
            return False, rank
        if piv == 0:
            if any(a[i][j] != 0 for j in alive):
                return False, rank
            continue
        rank += 1
        for j in alive:
            f = a[j][i] / piv
            if f:
                for l in alive:
                    a[j][l] -= f * a[i][l]
    return True, rank


@dataclass(frozen=True)
class HalfIntegralMatrix:
    """An element T of Lambda_n, held as the integer matrix 2T.

    ``twice`` is symmetric with even diagonal; that is exactly the condition
    t_ii, 2 t_ij in Z.
    """

    twice: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.twice)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("matrix must be square")
            if r[i] % 2:
                raise ValueError("diagonal of 2T must be even")
            for j in range(i):
                if r[j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        object.__setattr__(self, "twice", rows)

    # constructors -------------------------------------------------------
    @classmethod
    def from_twice(cls, rows) -> "HalfIntegralMatrix":
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def diag(cls, *entries: int) -> "HalfIntegralMatrix":
        n = len(entries)
        return cls(tuple(tuple(2 * entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def binary(cls, a: int, b: int, c: int) -> "HalfIntegralMatrix":
        """The form a x^2 + b xy + c y^2."""
        return cls(((2 * a, b), (b, 2 * c)))

    @classmethod
    def zero(cls, n: int) -> "HalfIntegralMatrix":
        return cls(tuple(tuple(0 for _ in range(n)) for _ in range(n)))

    # basic data ---------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.twice)

    def entry(self, i: int, j: int) -> Fraction:
        """t_ij as a rational."""
        return Fraction(self.twice[i][j], 2)

    def trace(self) -> int:
        return sum(self.twice[i][i] for i in range(self.size)) // 2

    def diagonal(self) -> tuple:
        return tuple(self.twice[i][i] // 2 for i in range(self.size))

    def content(self) -> int:
        """gcd of t_ii and 2 t_ij, i.e. the largest c with T/c in Lambda_n."""
        from math import gcd

        g = 0
        for i in range(self.size):
            g = gcd(g, self.twice[i][i] // 2)
            for j in range(i + 1, self.size):
                g = gcd(g, self.twice[i][j])
        return g

    def array(self) -> np.ndarray:
        return np.array(self.twice, dtype=np.int64).reshape(self.size, self.size)

    @cached_property
    def det2(self) -> int:
        """det(2T)."""
        return bareiss_det(self.twice)

    @cached_property
    def _psd(self):
        return psd_rank(self.twice)

    def is_positive_semidefinite(self) -> bool:
        return self._psd[0]

    def is_positive_definite(self) -> bool:
        return self._psd[0] and self._psd[1] == self.size

    def rank(self) -> int:
        if not self._psd[0]:
            raise ValueError("rank is only tracked for semidefinite matrices")
        return self._psd[1]

    # arithmetic ---------------------------------------------------------
    def scaled(self, c: int) -> "HalfIntegralMatrix":
        return HalfIntegralMatrix(tuple(tuple(c * v for v in r) for r in self.twice))

    def transform(self, u) -> "HalfIntegralMatrix":
        """T[U] = U^t T U for an integer matrix U (any shape n x k)."""
        u = np.asarray(u, dtype=object)
        g = np.array(self.twice, dtype=object).reshape(self.size, self.size)
        out = u.T.dot(g).dot(u)
        return HalfIntegralMatrix.from_twice([[int(v) for v in r] for r in out])

    def value(self, x) -> Fraction:
        """T[x] for an integer column vector x."""
        n = self.size
        s = sum(self.twice[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        return Fraction(s, 2)

    def direct_sum(self, other: "HalfIntegralMatrix") -> "HalfIntegralMatrix":
        n, m = self.size, other.size
        rows = []
        for i in range(n + m):
            row = []
            for j in range(n + m):
                if i < n and j < n:
                    row.append(self.twice[i][j])
                elif i >= n and j >= n:
                    row.append(other.twice[i - n][j - n])
                else:
                    row.append(0)
            rows.append(tuple(row))
        return HalfIntegralMatrix(tuple(rows))

    def block(self, r: int) -> "HalfIntegralMatrix":
        """Leading r x r block."""
        return HalfIntegralMatrix(tuple(tuple(row[:r]) for row in self.twice[:r]))

    def padded(self, n: int) -> "HalfIntegralMatrix":
        """diag(T, 0) of size n."""
        k = self.size
        if n < k:
            raise ValueError("cannot pad to a smaller size")
        return HalfIntegralMatrix(
            tuple(tuple(self.twice[i][j] if i < k and j < k else 0 for j in range(n)) for i in range(n))
        )

    def to_json(self):
        return [list(r) for r in self.twice]

    def __repr__(self):
        return f"HalfIntegralMatrix({[list(r) for r in self.twice]})"
