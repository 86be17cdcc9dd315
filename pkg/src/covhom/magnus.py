"""Truncated Magnus expansion ``x_i -> 1 + u_i`` of a free group.

Series are dicts from multi-indices (tuples of 1-based variable indices) to
integer coefficients; the empty tuple is the constant term.
"""

from __future__ import annotations

from math import comb
from typing import Mapping

from .words import Word

__all__ = [
    "DEFAULT_DEGREE",
    "TruncatedSeries",
    "theta",
    "magnus_coefficient",
    "commutative_image",
]

DEFAULT_DEGREE = 4

MultiIndex = tuple[int, ...]


def _binom(e: int, m: int) -> int:
    """Generalized binomial coefficient, valid for negative ``e``."""
    if e >= 0:
        return comb(e, m)
    return (-1) ** m * comb(-e + m - 1, m)


class TruncatedSeries:
    """Noncommutative power series in ``u_1..u_r`` modulo degree ``> degree``."""

    __slots__ = ("rank", "degree", "coeffs")

    def __init__(self, rank: int, degree: int, coeffs: Mapping[MultiIndex, int] | None = None):
        if degree < 0:
            raise ValueError(f"degree must be non-negative, got {degree}")
        self.rank = rank
        self.degree = degree
        self.coeffs = {tuple(m): int(c) for m, c in (coeffs or {}).items() if c and len(m) <= degree}

    @classmethod
    def one(cls, rank: int, degree: int) -> "TruncatedSeries":
        return cls(rank, degree, {(): 1})

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise ValueError("series have different rank or truncation degree")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.rank, self.degree, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.rank, self.degree, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        d = self.degree
        out: dict[MultiIndex, int] = {}
        for m1, c1 in self.coeffs.items():
            room = d - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(self.rank, d, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.rank, self.degree, self.coeffs) == (other.rank, other.degree, other.coeffs)

    def __getitem__(self, m: MultiIndex) -> int:
        return self.coeffs.get(tuple(m), 0)

    @property
    def constant(self) -> int:
        return self.coeffs.get((), 0)

    def homogeneous(self, n: int) -> dict[MultiIndex, int]:
        return {m: c for m, c in self.coeffs.items() if len(m) == n}

    def linear_part(self) -> tuple[int, ...]:
        return tuple(self.coeffs.get((i,), 0) for i in range(1, self.rank + 1))

    def terms(self) -> list[tuple[MultiIndex, int]]:
        return sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "*".join(f"u{i}" for i in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"


def _letter(rank: int, gen: int, e: int, degree: int) -> TruncatedSeries:
    # (1 + u)^e = sum_m binom(e, m) u^m
    return TruncatedSeries(rank, degree, {(gen,) * m: _binom(e, m) for m in range(degree + 1)})


def theta(w: Word, degree: int = DEFAULT_DEGREE) -> TruncatedSeries:
    """Magnus expansion of ``w`` truncated above ``degree``."""
    if degree < 1:
        raise ValueError(f"degree must be at least 1, got {degree}")
    out = TruncatedSeries.one(w.rank, degree)
    for gen, e in w.letters:
        out = out * _letter(w.rank, gen, e, degree)
    return out


def magnus_coefficient(index, w: Word, degree: int | None = None) -> int:
    """Coefficient of ``u_index`` in the Magnus expansion of ``w``."""
    index = tuple(index)
    d = max(len(index), 1) if degree is None else degree
    if len(index) > d:
        raise ValueError(f"multi-index {index} longer than truncation {d}")
    return theta(w, d)[index]


def commutative_image(t: TruncatedSeries) -> TruncatedSeries:
    """Image in the truncated symmetric algebra: each monomial is sorted."""
    out: dict[MultiIndex, int] = {}
    for m, c in t.coeffs.items():
        key = tuple(sorted(m))
        out[key] = out.get(key, 0) + c
    return TruncatedSeries(t.rank, t.degree, out)
