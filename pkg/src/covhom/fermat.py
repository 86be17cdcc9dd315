"""The Fermat curve ``x^n + y^n + z^n = 0`` as the full cover with ``s = 3``.

Here ``a = x_1``, ``b = x_2`` and ``alpha``, ``beta`` are the deck
transformations given by conjugation with ``a`` and ``b``.  For a word ``w``
in the subgroup, ``w^(alpha^i beta^j)`` means ``conjugate(w, a^i b^j)``.
H_1 of the closed curve is ``R^ab / Gamma`` where ``Gamma`` is the saturated
span of the loops around the ``3n`` punctures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cover import Cover, CoverSpec, Family, Kind
from .linalg import determinant, integer_kernel, smith_normal_form, solve_rational
from .words import Word

__all__ = [
    "a_word",
    "b_word",
    "act",
    "fermat_generator_families",
    "power_commutator_generators",
    "invariant_elements",
    "BraidAutomorphism",
    "SIGMA1",
    "SIGMA2",
    "FermatBasis",
    "closed_homology_basis",
    "braid_action_matrices",
    "ClosedFormCheck",
    "braid_closed_form_checks",
    "ab_power_expansion",
    "families_match_schreier",
    "generator_transition",
    "fixed_by_table",
    "gamma_is_invariant",
    "braid_relation_holds",
    "unimodular",
    "quotient_rank",
]

a_word = Word.generator(2, 1)
b_word = Word.generator(2, 2)


def act(w: Word, i: int = 0, j: int = 0) -> Word:
    """``w^(alpha^i beta^j)``."""
    return w.conjugate(a_word**i * b_word**j)


def fermat_generator_families(n: int) -> tuple[list[Word], list[Word], list[Word]]:
    """Closed forms of the three families of Schreier generators for ``s = 3``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    a, b = a_word, b_word
    A1 = [act(b**n, i) for i in range(n)]
    A2 = [act((b**j).commutator(a), i) for i in range(n - 1) for j in range(1, n)]
    A3 = [a**n * a.inverse().commutator(b**j) for j in range(n)]
    return A1, A2, A3


def power_commutator_generators(n: int) -> list[tuple[str, Word]]:
    """The generating set built from powers and conjugated commutators."""
    a, b = a_word, b_word
    out = [(f"(a^n)^beta^{i}", act(a**n, 0, i)) for i in range(n)]
    out += [(f"(b^n)^alpha^{i}", act(b**n, i)) for i in range(n)]
    out += [(f"[a,b]^alpha^{i}beta^{j}", act(a.commutator(b), i, j))
            for i in range(n - 1) for j in range(n - 1)]
    return out


@dataclass(frozen=True)
class InvariantElement:
    name: str
    word: Word
    fixed_by: tuple[int, int]


def invariant_elements(n: int) -> list[InvariantElement]:
    """Loops around the ``3n`` punctures with the deck element fixing each."""
    a, b = a_word, b_word
    out = [InvariantElement(f"(a^n)^beta^{i}", act(a**n, 0, i), (1, 0)) for i in range(n)]
    out += [InvariantElement(f"(b^n)^alpha^{i}", act(b**n, i), (0, 1)) for i in range(n)]
    out += [InvariantElement(f"((ab)^n)^alpha^{i}", act((a * b) ** n, i), (1, 1)) for i in range(n)]
    return out


@dataclass(frozen=True)
class BraidAutomorphism:
    """Endomorphism of ``F_2`` given by the images of ``a`` and ``b``."""

    name: str
    image_a: Word
    image_b: Word

    def __call__(self, w: Word) -> Word:
        return w.substitute([self.image_a, self.image_b])

    def then(self, other: "BraidAutomorphism") -> "BraidAutomorphism":
        """``self`` composed after ``other``: ``w -> self(other(w))``."""
        return BraidAutomorphism(f"{self.name}{other.name}", self(other.image_a), self(other.image_b))

    def abelian_matrix(self) -> np.ndarray:
        return np.array([self.image_a.exponent_sums(), self.image_b.exponent_sums()], dtype=np.int64).T

    def __eq__(self, other) -> bool:
        return (self.image_a, self.image_b) == (other.image_a, other.image_b)

    def __hash__(self):
        return hash((self.image_a, self.image_b))


SIGMA1 = BraidAutomorphism("s1", a_word * b_word * a_word.inverse(), a_word)
SIGMA2 = BraidAutomorphism("s2", a_word, a_word.inverse() * b_word.inverse())


def _saturate(G: np.ndarray) -> np.ndarray:
    """Basis of ``(Q span G) intersected with Z^N`` (columns)."""
    left = integer_kernel(G.T)
    if left.shape[1] == 0:
        return np.eye(G.shape[0], dtype=np.int64).astype(object)
    return integer_kernel(left.T)


@dataclass
class FermatBasis:
    n: int
    cover: Cover
    labels: list[tuple[int, int]]
    classes: list[Word]
    gamma: np.ndarray = field(repr=False)
    change: np.ndarray = field(repr=False)

    @property
    def genus(self) -> int:
        return len(self.classes) // 2

    def coordinates(self, w: Word) -> np.ndarray:
        """Coordinates of the class of ``w`` in ``R^ab / Gamma`` on this basis."""
        return self.vector_coordinates(self.cover.abelianize(w))

    def vector_coordinates(self, v: np.ndarray) -> np.ndarray:
        x = solve_rational(self.change, [int(c) for c in v])
        if any(c.denominator != 1 for c in x):
            raise AssertionError("coordinates are not integral; basis does not span")
        return np.array([int(c) for c in x[: len(self.classes)]], dtype=np.int64)

    def is_boundary(self, w: Word) -> bool:
        return not self.coordinates(w).any()


@lru_cache(maxsize=16)
def closed_homology_basis(n: int) -> FermatBasis:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    cover = Cover(CoverSpec(3, n, Kind.FULL))
    inv = np.array([cover.abelianize(e.word) for e in invariant_elements(n)], dtype=np.int64).T
    gamma = _saturate(inv)
    labels = [(i, j) for i in range(n - 1) for j in range(n - 2)]
    ba = b_word.commutator(a_word)
    classes = [act(ba, i, j) for i, j in labels]
    cols = [cover.abelianize(w) for w in classes]
    change = np.hstack([np.array(cols, dtype=np.int64).T.reshape(len(cover.generators), -1).astype(object), gamma])
    if change.shape[0] != change.shape[1]:
        raise AssertionError(f"basis and Gamma have {change.shape[1]} columns for rank {change.shape[0]}")
    if abs(determinant(change)) != 1:
        raise AssertionError("basis classes together with Gamma are not unimodular")
    return FermatBasis(n, cover, labels, classes, gamma, change)


def _action_matrix(basis: FermatBasis, sigma: BraidAutomorphism) -> np.ndarray:
    cols = [basis.coordinates(sigma(w)) for w in basis.classes]
    return np.array(cols, dtype=np.int64).T.reshape(len(basis.classes), len(basis.classes))


def gamma_is_invariant(basis: FermatBasis, sigma: BraidAutomorphism) -> bool:
    return all(basis.is_boundary(sigma(e.word)) for e in invariant_elements(basis.n))


def braid_action_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    basis = closed_homology_basis(n)
    return _action_matrix(basis, SIGMA1), _action_matrix(basis, SIGMA2)


@dataclass
class ClosedFormCheck:
    name: str
    ok: bool
    detail: str = ""


def braid_closed_form_checks(n: int) -> list[ClosedFormCheck]:
    """Compare the word-level braid action with the tabulated images.

    Images of basis classes are compared in ``R^ab / Gamma``; images of the
    puncture loops are compared in ``R^ab`` itself.
    """
    basis = closed_homology_basis(n)
    cover = basis.cover
    a, b = a_word, b_word
    ba = b.commutator(a)
    out = []
    for i, j in basis.labels:
        w = act(ba, i, j)
        got = basis.coordinates(SIGMA1(w))
        want = -basis.coordinates(act(ba, j + 1, i))
        out.append(ClosedFormCheck(f"s1([b,a]^a^{i}b^{j})", bool((got == want).all()),
                                   f"computed {got.tolist()} expected {want.tolist()}"))
        got = basis.coordinates(SIGMA2(w))
        want = -basis.coordinates(act(b.inverse().commutator(a.inverse()), i - j, -j))
        out.append(ClosedFormCheck(f"s2([b,a]^a^{i}b^{j})", bool((got == want).all()),
                                   f"computed {got.tolist()} expected {want.tolist()}"))
    ab = cover.abelianize
    for i in range(n):
        pairs = [
            (f"s1((b^n)^a^{i})", ab(SIGMA1(act(b**n, i))), ab(act(a**n, 0, i))),
            (f"s1((a^n)^b^{i})", ab(SIGMA1(act(a**n, 0, i))), ab(act(b**n, i + 1))),
            (f"s2((b^n)^a^{i})", ab(SIGMA2(act(b**n, i))), -ab(act((b * a) ** n, i))),
            (f"s2((a^n)^b^{i})", ab(SIGMA2(act(a**n, 0, i))), ab((a**n).conjugate((b * a) ** (-i)))),
        ]
        for name, got, want in pairs:
            out.append(ClosedFormCheck(name, bool((got == want).all()),
                                       "" if (got == want).all() else f"differs in {np.nonzero(got - want)[0].tolist()}"))
    return out


def ab_power_expansion(n: int) -> bool:
    """``(ab)^n`` against the sum of ``[b,a]^(alpha^m beta^nu)``, ``nu < m``, plus ``a^n`` and ``b^n``."""
    cover = Cover(CoverSpec(3, n, Kind.FULL))
    ba = b_word.commutator(a_word)
    rhs = cover.abelianize(a_word**n) + cover.abelianize(b_word**n)
    for m in range(1, n):
        for nu in range(m):
            rhs = rhs + cover.abelianize(act(ba, m, nu))
    return bool((cover.abelianize((a_word * b_word) ** n) == rhs).all())


def families_match_schreier(n: int) -> bool:
    """The closed-form families coincide with the computed Schreier generators."""
    cover = Cover(CoverSpec(3, n, Kind.FULL))
    A1, A2, A3 = fermat_generator_families(n)
    by_family = {
        Family.A_LAST: {g.value for g in cover.generators if g.family is Family.A_LAST},
        Family.B: {g.value for g in cover.generators if g.family is Family.B},
        Family.B_PRIME: {g.value for g in cover.generators if g.family is Family.B_PRIME},
    }
    return (set(A1) == by_family[Family.A_LAST] and set(A2) == by_family[Family.B]
            and set(A3) == by_family[Family.B_PRIME] and len(A1) + len(A2) + len(A3) == len(cover.generators))


def generator_transition(n: int) -> np.ndarray:
    cover = Cover(CoverSpec(3, n, Kind.FULL))
    return np.array([cover.abelianize(w) for _, w in power_commutator_generators(n)], dtype=np.int64).T


def fixed_by_table(n: int) -> bool:
    """Each puncture loop is fixed by the action of its tabulated deck element."""
    cover = Cover(CoverSpec(3, n, Kind.FULL))
    for e in invariant_elements(n):
        v = cover.abelianize(e.word)
        M = cover.action_of(e.fixed_by)
        if not (M @ v == v).all():
            return False
    return True


def braid_relation_holds(M1: np.ndarray, M2: np.ndarray) -> bool:
    return bool((M1 @ M2 @ M1 == M2 @ M1 @ M2).all())


def unimodular(M: np.ndarray) -> bool:
    return M.shape[0] == M.shape[1] and abs(determinant(M)) == 1


def quotient_rank(n: int) -> int:
    """Free rank of ``R^ab / Gamma``, computed independently via SNF."""
    basis = closed_homology_basis(n)
    return basis.gamma.shape[0] - smith_normal_form(basis.gamma).rank
