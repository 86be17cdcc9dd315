"""Group rings of finite abelian groups ``(Z/kZ)^r``.

Elements of the group are exponent tuples; they are totally ordered
lexicographically, which is also the order used for every matrix expansion.
Coefficients live in the integers (``modulus=None``) or in ``Z/mZ``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "FiniteAbelianGroup",
    "RingElement",
    "RootOfUnity",
    "norm_element",
    "augmentation",
    "regular_representation",
    "character_value",
    "is_prime",
    "primitive_root",
    "default_prime",
    "primes_congruent_one",
]

Element = tuple[int, ...]


class FiniteAbelianGroup:
    """The group ``(Z/kZ)^rank`` with lexicographically ordered elements."""

    def __init__(self, k: int, rank: int):
        if k < 1 or rank < 1:
            raise ValueError(f"invalid group (Z/{k})^{rank}")
        self.k = k
        self.rank = rank

    @property
    def order(self) -> int:
        return self.k**self.rank

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(range(self.k), repeat=self.rank))

    def index(self, g: Element) -> int:
        i = 0
        for c in g:
            i = i * self.k + c
        return i

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def normalize(self, g: Iterable[int]) -> Element:
        g = tuple(int(c) % self.k for c in g)
        if len(g) != self.rank:
            raise ValueError(f"element {g} has wrong length for rank {self.rank}")
        return g

    def generator(self, j: int) -> Element:
        if not 1 <= j <= self.rank:
            raise IndexError(f"generator index {j} out of range 1..{self.rank}")
        return tuple(1 if i == j - 1 else 0 for i in range(self.rank))

    def mul(self, a: Element, b: Element) -> Element:
        k = self.k
        return tuple((x + y) % k for x, y in zip(a, b))

    def inv(self, a: Element) -> Element:
        k = self.k
        return tuple((-x) % k for x in a)

    def power(self, a: Element, n: int) -> Element:
        k = self.k
        return tuple((x * n) % k for x in a)

    def element_order(self, a: Element) -> int:
        n = 1
        g = a
        while g != self.identity:
            g = self.mul(g, a)
            n += 1
        return n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteAbelianGroup) and (self.k, self.rank) == (other.k, other.rank)

    def __hash__(self) -> int:
        return hash((self.k, self.rank))

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup(k={self.k}, rank={self.rank})"


class RingElement:
    """Finite formal sum ``sum c_g g`` in ``R[H]`` with R = Z or Z/mZ."""

    __slots__ = ("group", "coeffs", "modulus")

    def __init__(self, group: FiniteAbelianGroup, coeffs: Mapping[Element, int] | None = None,
                 modulus: int | None = None):
        self.group = group
        self.modulus = modulus
        clean: dict[Element, int] = {}
        for g, c in (coeffs or {}).items():
            g = group.normalize(g)
            clean[g] = clean.get(g, 0) + int(c)
        if modulus is not None:
            clean = {g: c % modulus for g, c in clean.items()}
        self.coeffs = {g: c for g, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, group, modulus=None) -> "RingElement":
        return cls(group, {}, modulus)

    @classmethod
    def one(cls, group, modulus=None) -> "RingElement":
        return cls(group, {group.identity: 1}, modulus)

    @classmethod
    def basis(cls, group, g: Element, coeff: int = 1, modulus=None) -> "RingElement":
        return cls(group, {g: coeff}, modulus)

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.group != self.group:
                raise ValueError(f"group mismatch: {self.group} vs {other.group}")
            if other.modulus != self.modulus:
                raise ValueError(f"coefficient ring mismatch: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, (int, np.integer)):
            return RingElement(self.group, {self.group.identity: int(other)}, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return RingElement(self.group, out, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.group, {g: -c for g, c in self.coeffs.items()}, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return RingElement(self.group, {g: c * int(other) for g, c in self.coeffs.items()}, self.modulus)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Element, int] = {}
        mul = self.group.mul
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                gh = mul(g, h)
                out[gh] = out.get(gh, 0) + a * b
        return RingElement(self.group, out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in a group ring")
        out = RingElement.one(self.group, self.modulus)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = self._coerce(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.group, self.modulus, self.coeffs) == (other.group, other.modulus, other.coeffs)

    def __hash__(self):
        return hash((self.group, self.modulus, frozenset(self.coeffs.items())))

    def __getitem__(self, g: Element) -> int:
        return self.coeffs.get(self.group.normalize(g), 0)

    def shift(self, g: Element) -> "RingElement":
        """Multiply by the group element ``g``."""
        mul = self.group.mul
        return RingElement(self.group, {mul(g, h): c for h, c in self.coeffs.items()}, self.modulus)

    def map_group(self, target: FiniteAbelianGroup, hom) -> "RingElement":
        """Push forward along a group homomorphism ``hom: Element -> Element``."""
        out: dict[Element, int] = {}
        for g, c in self.coeffs.items():
            h = target.normalize(hom(g))
            out[h] = out.get(h, 0) + c
        return RingElement(target, out, self.modulus)

    def reduce(self, modulus: int) -> "RingElement":
        return RingElement(self.group, self.coeffs, modulus)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.group.order, dtype=np.int64)
        for g, c in self.coeffs.items():
            v[self.group.index(g)] = c
        return v

    def terms(self) -> list[tuple[Element, int]]:
        return sorted(self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for g, c in self.terms():
            mono = "*".join(f"X{i + 1}^{e}" if e != 1 else f"X{i + 1}" for i, e in enumerate(g) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RingElement({self})"


def power_sum(group: FiniteAbelianGroup, g: Element, count: int, modulus: int | None = None) -> RingElement:
    """``1 + g + ... + g^(count-1)``."""
    out: dict[Element, int] = {}
    h = group.identity
    for _ in range(count):
        out[h] = out.get(h, 0) + 1
        h = group.mul(h, g)
    return RingElement(group, out, modulus)


def norm_element(H: FiniteAbelianGroup, j, modulus: int | None = None) -> RingElement:
    """Norm element of the j-th generator, or of ``(x_1 ... x_r)^-1`` for ``j="product"``."""
    if j == "product":
        g = H.inv(tuple(1 for _ in range(H.rank)))
    elif isinstance(j, int):
        g = H.generator(j)
    else:
        raise IndexError(f"bad norm index {j!r}")
    return power_sum(H, g, H.k, modulus)


def augmentation(e: RingElement) -> int:
    total = sum(e.coeffs.values())
    return total % e.modulus if e.modulus is not None else total


def regular_representation(e: RingElement) -> np.ndarray:
    """Matrix of left multiplication by ``e`` on the lexicographic basis of ``H``."""
    H = e.group
    n = H.order
    m = np.zeros((n, n), dtype=np.int64)
    elems = H.elements
    for g, c in e.coeffs.items():
        for col, h in enumerate(elems):
            m[H.index(H.mul(g, h)), col] += c
    if e.modulus is not None:
        m %= e.modulus
    return m


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Least generator of the multiplicative group mod the prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable")


def primes_congruent_one(k: int, above: int = 0):
    """Primes ``p = 1 (mod k)`` with ``p > above``, in increasing order."""
    p = above + 1
    while True:
        if p % k == 1 and is_prime(p):
            yield p
        p += 1


def default_prime(k: int, order: int) -> int:
    """Smallest prime ``p = 1 (mod k)`` exceeding the group order."""
    return next(primes_congruent_one(k, order))


@dataclass(frozen=True)
class RootOfUnity:
    """A fixed primitive k-th root of unity ``zeta`` in the prime field F_p."""

    k: int
    p: int
    zeta: int

    @classmethod
    def standard(cls, k: int, p: int) -> "RootOfUnity":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if (p - 1) % k:
            raise ValueError(f"F_{p} has no element of order {k}")
        return cls(k, p, pow(primitive_root(p), (p - 1) // k, p))

    def __post_init__(self):
        if pow(self.zeta, self.k, self.p) != 1 or any(
            pow(self.zeta, self.k // q, self.p) == 1 for q in _prime_factors(self.k)
        ):
            raise ValueError(f"{self.zeta} does not have order {self.k} mod {self.p}")

    def power(self, n: int) -> int:
        return pow(self.zeta, n % self.k, self.p)


def character_value(index: Iterable[int], h: Element, root: RootOfUnity) -> int:
    """``zeta ** sum(i_mu * nu_mu)`` in F_p."""
    index = tuple(index)
    if len(index) != len(h):
        raise ValueError("character index and group element differ in length")
    return root.power(sum(a * b for a, b in zip(index, h)))
