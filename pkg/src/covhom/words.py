"""Freely reduced words in a free group of finite rank.

Letters are stored run-length encoded as ``(generator, exponent)`` pairs with
1-based generator indices.  Conjugation follows the left convention
``conjugate(w, g) = g * w * g**-1`` and commutators are ``[a, b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator, Sequence

__all__ = [
    "AlphabetMismatch",
    "Word",
    "multiply",
    "invert",
    "conjugate",
    "commutator",
    "parse_word",
    "random_word",
]


class AlphabetMismatch(ValueError):
    pass


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


class Word:
    """An element of the free group ``F_rank`` in reduced run-length form."""

    __slots__ = ("rank", "letters", "_hash")

    def __init__(self, rank: int, letters: Iterable[tuple[int, int]] = ()):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        letters = _reduce((int(g), int(e)) for g, e in letters)
        for gen, _ in letters:
            if not 1 <= gen <= rank:
                raise ValueError(f"generator x{gen} outside alphabet of rank {rank}")
        self.rank = rank
        self.letters = letters
        self._hash = None

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank)

    @classmethod
    def generator(cls, rank: int, index: int, exponent: int = 1) -> "Word":
        return cls(rank, [(index, exponent)])

    @classmethod
    def monomial(cls, exponents: Sequence[int], start: int = 1, rank: int | None = None) -> "Word":
        """``x_start^e0 * x_{start+1}^e1 * ...``."""
        if rank is None:
            rank = start + len(exponents) - 1
        return cls(rank, [(start + i, e) for i, e in enumerate(exponents)])

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "Word":
        return parse_word(text, rank)

    def _check(self, other: "Word") -> None:
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.rank != self.rank:
            raise AlphabetMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.rank, [(g, -e) for g, e in reversed(self.letters)])

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        if len(self.letters) == 1:
            g, e = self.letters[0]
            return Word(self.rank, [(g, e * n)])
        out = Word(self.rank)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, g: "Word") -> "Word":
        self._check(g)
        return g * self * g.inverse()

    def commutator(self, other: "Word") -> "Word":
        self._check(other)
        return self * other * self.inverse() * other.inverse()

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def unit_letters(self) -> Iterator[tuple[int, int]]:
        """Yield ``(generator, +-1)`` one unit exponent at a time."""
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.rank
        for g, e in self.letters:
            sums[g - 1] += e
        return tuple(sums)

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Apply the endomorphism sending ``x_i`` to ``images[i-1]``."""
        if len(images) != self.rank:
            raise AlphabetMismatch(f"need {self.rank} images, got {len(images)}")
        target = images[0].rank
        out = Word(target)
        for g, e in self.letters:
            out = out * images[g - 1] ** e
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, self.letters))
        return self._hash

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.rank}, '{self}')"


_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse ``x1^2*x2^-1*x3``; ``1`` (or an empty string) is the identity.

    When ``rank`` is omitted the largest generator index that occurs is used.
    """
    text = text.replace(" ", "")
    letters = []
    if text not in ("", "1"):
        for token in text.split("*"):
            m = _TOKEN.match(token)
            if m is None:
                raise ValueError(f"cannot parse token {token!r} in {text!r}")
            letters.append((int(m.group(1)), int(m.group(2) or 1)))
    if rank is None:
        rank = max((g for g, _ in letters), default=1)
    return Word(rank, letters)


def multiply(a: Word, b: Word) -> Word:
    return a * b


def invert(w: Word) -> Word:
    return w.inverse()


def conjugate(w: Word, g: Word) -> Word:
    """``g w g^-1``."""
    return w.conjugate(g)


def commutator(a: Word, b: Word) -> Word:
    return a.commutator(b)


def random_word(rng: random.Random, rank: int, length: int, max_exp: int = 3) -> Word:
    """Word with ``length`` random letters (before reduction)."""
    letters = []
    for _ in range(length):
        e = rng.randint(1, max_exp) * rng.choice((1, -1))
        letters.append((rng.randint(1, rank), e))
    return Word(rank, letters)
