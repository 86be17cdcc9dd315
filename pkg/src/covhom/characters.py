"""Character decomposition of H_1 of generalized Fermat curves.

A character of ``H = (Z/k)^{s-1}`` is indexed by ``i = (i_1, ..., i_{s-1})``;
put ``i_s = i_1 + ... + i_{s-1} mod k`` and let ``z`` count the vanishing
entries among ``i_1..i_s``.  The predicted multiplicity of ``chi_i`` in
``H_1 (x) F`` is ``C(i) = s - z - 2`` for ``i != 0`` and ``0`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product

from .alexander import HomologySpace
from .cover import CoverSpec, Kind
from .groupring import RootOfUnity, default_prime, primes_congruent_one

__all__ = [
    "CharacterIndex",
    "character_indices",
    "decomposition_table",
    "isotypic_dimension",
    "isotypic_dimensions",
    "image_census",
    "verification_primes",
    "CharacterRow",
    "character_rows",
]


@dataclass(frozen=True)
class CharacterIndex:
    i: tuple[int, ...]
    k: int

    def __post_init__(self):
        if any(not 0 <= a < self.k for a in self.i):
            raise ValueError(f"index {self.i} out of range for k={self.k}")

    @property
    def s(self) -> int:
        return len(self.i) + 1

    @property
    def i_s(self) -> int:
        return sum(self.i) % self.k

    @property
    def full(self) -> tuple[int, ...]:
        return self.i + (self.i_s,)

    @property
    def is_trivial(self) -> bool:
        return not any(self.i)

    @property
    def z(self) -> int:
        return sum(1 for a in self.full if a == 0)

    @property
    def c(self) -> int:
        """Multiplicity of ``chi_i`` in ``Im(Q)``."""
        return self.z if self.z == self.s else 1 + self.z

    @property
    def C(self) -> int:
        """Predicted multiplicity of ``chi_i`` in ``H_1``."""
        return self.s - self.z if self.is_trivial else self.s - self.z - 2

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.i)) + ")"


def character_indices(s: int, k: int) -> list[CharacterIndex]:
    return [CharacterIndex(i, k) for i in product(range(k), repeat=s - 1)]


def _require_full(spec: CoverSpec) -> None:
    if spec.kind is not Kind.FULL:
        raise ValueError("character decomposition is defined for the full cover only")


def decomposition_table(spec: CoverSpec) -> list[tuple[CharacterIndex, int]]:
    _require_full(spec)
    table = [(idx, idx.C) for idx in character_indices(spec.s, spec.k)]
    negative = [str(idx) for idx, c in table if c < 0]
    if negative:
        raise AssertionError(f"negative multiplicities at {negative}")
    return table


def verification_primes(spec: CoverSpec, count: int = 2) -> list[int]:
    """The default prime and the next ones ``= 1 (mod k)`` above ``|H|``."""
    first = default_prime(spec.k, spec.order)
    return list(islice(primes_congruent_one(spec.k, first - 1), count))


@lru_cache(maxsize=32)
def _space(spec: CoverSpec, p: int) -> HomologySpace:
    return HomologySpace(spec, p)


def isotypic_dimensions(spec: CoverSpec, p: int | None = None) -> dict[tuple[int, ...], int]:
    _require_full(spec)
    p = p or default_prime(spec.k, spec.order)
    return _space(spec, p).isotypic_dimensions(RootOfUnity.standard(spec.k, p))


def isotypic_dimension(spec: CoverSpec, index: CharacterIndex | tuple[int, ...], p: int | None = None) -> int:
    i = index.i if isinstance(index, CharacterIndex) else tuple(index)
    return isotypic_dimensions(spec, p)[i]


def image_census(spec: CoverSpec, p: int | None = None) -> dict[tuple[int, ...], int]:
    """Multiplicity of each character in ``Im(Q) (x) F_p``."""
    _require_full(spec)
    p = p or default_prime(spec.k, spec.order)
    return _space(spec, p).image_census(RootOfUnity.standard(spec.k, p))


@dataclass(frozen=True)
class CharacterRow:
    index: CharacterIndex
    verified: int
    image: int

    @property
    def ok(self) -> bool:
        return self.verified == self.index.C and self.image == self.index.c

    def as_list(self) -> list[int]:
        idx = self.index
        return list(idx.i) + [idx.i_s, idx.z, idx.c, idx.C, self.verified]


def character_rows(spec: CoverSpec, p: int | None = None) -> list[CharacterRow]:
    dims = isotypic_dimensions(spec, p)
    census = image_census(spec, p)
    return [CharacterRow(idx, dims[idx.i], census[idx.i]) for idx in character_indices(spec.s, spec.k)]
