"""Abelian covers of the s-punctured sphere and their Schreier generators.

The fundamental group of the sphere minus ``s`` points is free on
``x_1, ..., x_{s-1}``, with ``x_s = (x_1 ... x_{s-1})^-1``.  A cover is fixed by
a surjection onto a finite abelian group ``H``:

* ``Kind.FULL``:   ``H = (Z/k)^{s-1}``, ``x_j -> e_j``;
* ``Kind.CYCLIC``: ``H = Z/k``, ``x_j -> 1``.

The kernel ``R`` is free; its Schreier basis comes from the monomial
transversal, and Reidemeister rewriting expresses any element of ``R`` in it.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .groupring import FiniteAbelianGroup
from .linalg import smith_normal_form
from .words import Word

__all__ = [
    "Kind",
    "CoverSpec",
    "CapExceeded",
    "WordNotInSubgroup",
    "Family",
    "SchreierGenerator",
    "StabilizedElement",
    "Cover",
    "coset_label",
    "schreier_generators",
    "rewrite",
    "homology_action",
    "max_order",
]

DEFAULT_MAX_ORDER = 4096


def max_order() -> int:
    """Cap on ``|H|``; the ``COVHOM_MAX_ORDER`` environment variable overrides it."""
    value = os.environ.get("COVHOM_MAX_ORDER")
    return int(value) if value else DEFAULT_MAX_ORDER


class CapExceeded(ValueError):
    pass


class WordNotInSubgroup(ValueError):
    pass


class Kind(str, enum.Enum):
    FULL = "full"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class CoverSpec:
    s: int
    k: int
    kind: Kind = Kind.FULL

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.s < 3:
            raise ValueError(f"need s >= 3 branch points, got {self.s}")
        if self.k < 2:
            raise ValueError(f"need exponent k >= 2, got {self.k}")

    @property
    def group_rank(self) -> int:
        return self.s - 1 if self.kind is Kind.FULL else 1

    @property
    def order(self) -> int:
        return self.k**self.group_rank

    def check_cap(self, force: bool = False) -> None:
        cap = max_order()
        if not force and self.order > cap:
            raise CapExceeded(f"|H| = {self.order} exceeds the cap {cap} (set COVHOM_MAX_ORDER or force)")

    def __str__(self) -> str:
        return f"{self.kind.value}(s={self.s}, k={self.k})"


class Family(str, enum.Enum):
    A_LAST = "A_last"
    B = "B"
    B_PRIME = "Bprime"
    OTHER = "Other"
    CONJUGATE = "Conjugate"
    CLOSING = "Closing"


@dataclass(frozen=True)
class SchreierGenerator:
    """``gamma(t, x) = t x (rep of t x)^-1`` for a transversal label ``t``."""

    index: int
    label: tuple[int, ...]
    t: Word
    x: int
    value: Word
    family: Family
    nu: int | None = None

    @property
    def family_name(self) -> str:
        return f"{self.family.value}({self.nu})" if self.nu is not None else self.family.value


@dataclass(frozen=True)
class StabilizedElement:
    """Loop around branch point ``branch`` conjugated into the subgroup.

    ``stabilizer`` is the element of ``H`` generating the cyclic subgroup that
    fixes its homology class.
    """

    branch: int
    word: Word
    conjugator: Word
    stabilizer: tuple[int, ...]


def coset_label(spec: CoverSpec, w: Word) -> tuple[int, ...]:
    sums = w.exponent_sums()
    if spec.kind is Kind.FULL:
        return tuple(e % spec.k for e in sums)
    return (sum(sums) % spec.k,)


class Cover:
    """Transversal, Schreier basis and rewriting for one ``CoverSpec``."""

    def __init__(self, spec: CoverSpec, force: bool = False):
        spec.check_cap(force)
        self.spec = spec
        self.s = spec.s
        self.k = spec.k
        self.rank = spec.s - 1
        self.group = FiniteAbelianGroup(spec.k, spec.group_rank)

    # images of the free generators (and of x_s) in H
    def generator_image(self, j: int) -> tuple[int, ...]:
        if not 1 <= j <= self.s:
            raise IndexError(f"generator x{j} outside 1..{self.s}")
        if self.spec.kind is Kind.FULL:
            if j == self.s:
                return tuple((-1) % self.k for _ in range(self.rank))
            return self.group.generator(j)
        return ((1 if j < self.s else -(self.s - 1)) % self.k,)

    def label(self, w: Word) -> tuple[int, ...]:
        return coset_label(self.spec, w)

    def representative(self, label: Sequence[int]) -> Word:
        label = self.group.normalize(label)
        if self.spec.kind is Kind.FULL:
            return Word.monomial(label, rank=self.rank)
        return Word.generator(self.rank, 1, label[0])

    def loop(self, j: int) -> Word:
        """The loop ``x_j`` as a word; ``x_s`` is ``(x_1 ... x_{s-1})^-1``."""
        if j == self.s:
            return Word.monomial([1] * self.rank).inverse()
        return Word.generator(self.rank, j)

    @cached_property
    def transversal(self) -> dict[tuple[int, ...], Word]:
        return {h: self.representative(h) for h in self.group.elements}

    @cached_property
    def generators(self) -> list[SchreierGenerator]:
        out = []
        for h, t in self.transversal.items():
            for x in range(1, self.rank + 1):
                target = self.group.mul(h, self.generator_image(x))
                value = t * Word.generator(self.rank, x) * self.transversal[target].inverse()
                if value.is_identity():
                    continue
                family, nu = self._classify(h, x, value)
                out.append(SchreierGenerator(len(out), h, t, x, value, family, nu))
        return out

    @cached_property
    def _lookup(self) -> dict[tuple[tuple[int, ...], int], SchreierGenerator]:
        return {(g.label, g.x): g for g in self.generators}

    def generator_at(self, label: Sequence[int], x: int) -> SchreierGenerator | None:
        return self._lookup.get((self.group.normalize(label), x))

    @property
    def expected_count(self) -> int:
        return self.group.order * (self.s - 2) + 1

    def _classify(self, h: tuple[int, ...], x: int, value: Word) -> tuple[Family, int | None]:
        k, r = self.k, self.rank
        if self.spec.kind is Kind.CYCLIC:
            i = h[0]
            if i < k - 1 and x >= 2:
                expected = Word(r, [(1, i), (x, 1), (1, -i - 1)])
                return (Family.CONJUGATE if value == expected else Family.OTHER), None
            if i == k - 1:
                expected = Word(r, [(1, k - 1), (x, 1)])
                return (Family.CLOSING if value == expected else Family.OTHER), None
            return Family.OTHER, None

        if x == r:
            if h[r - 1] == k - 1:
                prefix = Word.monomial(h[: r - 1], rank=r)
                expected = Word.generator(r, r, k).conjugate(prefix)
                return (Family.A_LAST if value == expected else Family.OTHER), None
            return Family.OTHER, None
        nu = x
        head = Word.monomial(h[: nu - 1], rank=r)
        tail = Word.monomial(h[nu:], start=nu + 1, rank=r)
        xn = Word.generator(r, nu)
        if h[nu - 1] < k - 1:
            conj = head * Word.generator(r, nu, h[nu - 1])
            expected = tail.commutator(xn).conjugate(conj)
            return (Family.B if value == expected else Family.OTHER), nu
        expected = (Word.generator(r, nu, k) * xn.inverse().commutator(tail)).conjugate(head)
        return (Family.B_PRIME if value == expected else Family.OTHER), nu

    def family_sizes(self) -> dict[str, int]:
        sizes: dict[str, int] = {}
        for g in self.generators:
            sizes[g.family_name] = sizes.get(g.family_name, 0) + 1
        return dict(sorted(sizes.items()))

    def expected_family_sizes(self) -> dict[str, int]:
        k, s = self.k, self.s
        if self.spec.kind is Kind.CYCLIC:
            return {Family.CLOSING.value: s - 1, Family.CONJUGATE.value: (k - 1) * (s - 2)}
        sizes = {Family.A_LAST.value: k ** (s - 2)}
        for nu in range(1, s - 1):
            sizes[f"B({nu})"] = (k - 1) * k ** (nu - 1) * (k ** (s - 1 - nu) - 1)
            sizes[f"Bprime({nu})"] = k ** (s - 2)
        return dict(sorted(sizes.items()))

    # Reidemeister rewriting
    def rewrite(self, w: Word) -> list[tuple[SchreierGenerator, int]]:
        if w.rank != self.rank:
            raise ValueError(f"word has rank {w.rank}, cover needs {self.rank}")
        if self.label(w) != self.group.identity:
            raise WordNotInSubgroup(f"{w} has coset label {self.label(w)}")
        out = []
        h = self.group.identity
        for x, sign in w.unit_letters():
            img = self.generator_image(x)
            if sign > 0:
                g = self._lookup.get((h, x))
                h = self.group.mul(h, img)
            else:
                h = self.group.mul(h, self.group.inv(img))
                g = self._lookup.get((h, x))
            if g is not None:
                out.append((g, sign))
        return out

    def abelianize(self, w: Word) -> np.ndarray:
        """Class of ``w`` in ``R^ab``, as a vector over the Schreier basis."""
        v = np.zeros(len(self.generators), dtype=np.int64)
        for g, sign in self.rewrite(w):
            v[g.index] += sign
        return v

    @staticmethod
    def multiply_factors(factors: Iterable[tuple[SchreierGenerator, int]], rank: int) -> Word:
        out = Word(rank)
        for g, sign in factors:
            out = out * (g.value if sign > 0 else g.value.inverse())
        return out

    def action_matrix(self, conjugator: Word) -> np.ndarray:
        """Matrix of ``r -> conjugator * r * conjugator^-1`` on ``R^ab``."""
        cols = [self.abelianize(g.value.conjugate(conjugator)) for g in self.generators]
        return np.array(cols, dtype=np.int64).T

    def action_of(self, h: Sequence[int]) -> np.ndarray:
        return self.action_matrix(self.representative(h))

    def homology_action(self) -> dict[int, np.ndarray]:
        """Deck generator ``xi_j`` (conjugation by ``x_j``) -> matrix on ``R^ab``."""
        gens = range(1, self.rank + 1) if self.spec.kind is Kind.FULL else [1]
        return {j: self.action_matrix(Word.generator(self.rank, j)) for j in gens}

    # fixed elements around the branch points
    @cached_property
    def stabilized_elements(self) -> list[StabilizedElement]:
        if self.spec.kind is Kind.FULL:
            return self._stabilized_full()
        return self._stabilized_generic()

    def _stabilized_full(self) -> list[StabilizedElement]:
        k, r = self.k, self.rank
        out = []
        rest = [h for h in FiniteAbelianGroup(k, r - 1).elements] if r > 1 else [()]
        for nu in range(1, r + 1):
            loop_power = Word.generator(r, nu, k)
            for h in rest:
                exps = list(h[: nu - 1]) + [0] + list(h[nu - 1:])
                conj = Word.monomial(exps, rank=r)
                out.append(StabilizedElement(nu, loop_power.conjugate(conj), conj, self.group.generator(nu)))
        product = Word.monomial([1] * r) ** k
        for h in rest:
            conj = Word.monomial(list(h) + [0], rank=r)
            out.append(StabilizedElement(self.s, product.conjugate(conj), conj, tuple([1] * r)))
        return out

    def _stabilized_generic(self) -> list[StabilizedElement]:
        out = []
        for j in range(1, self.s + 1):
            img = self.generator_image(j)
            order = self.group.element_order(img)
            cyclic = {self.group.power(img, m) for m in range(order)}
            seen: set[tuple[int, ...]] = set()
            for h in self.group.elements:
                if h in seen:
                    continue
                seen |= {self.group.mul(h, c) for c in cyclic}
                conj = self.representative(h)
                out.append(StabilizedElement(j, (self.loop(j) ** order).conjugate(conj), conj, img))
        return out

    def stabilized_rank(self) -> int:
        cols = [self.abelianize(e.word) for e in self.stabilized_elements]
        return smith_normal_form(np.array(cols, dtype=np.int64).T).rank

    def genus_schreier(self) -> tuple[int, int]:
        """``(2g, rank of the boundary span)`` from the Schreier basis.

        ``R^ab`` is free of rank ``2g + (#punctures - 1)`` and the loops around
        the punctures span a sublattice of rank ``#punctures - 1``.
        """
        boundary = self.stabilized_rank()
        return len(self.generators) - boundary, boundary


def schreier_generators(spec: CoverSpec) -> list[SchreierGenerator]:
    return Cover(spec).generators


def rewrite(spec: CoverSpec, w: Word) -> list[tuple[SchreierGenerator, int]]:
    return Cover(spec).rewrite(w)


def homology_action(spec: CoverSpec) -> dict[int, np.ndarray]:
    return Cover(spec).homology_action()


def punctures(spec: CoverSpec) -> int:
    """Number of points of the cover over the ``s`` branch points."""
    if spec.kind is Kind.FULL:
        return spec.s * spec.k ** (spec.s - 2)
    return spec.s - 1 + gcd(spec.s - 1, spec.k)
