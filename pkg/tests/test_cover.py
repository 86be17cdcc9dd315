import random

import numpy as np
import pytest

from covhom.cover import (
    CapExceeded, Cover, CoverSpec, Family, Kind, WordNotInSubgroup, coset_label, homology_action,
)
from covhom.fermat import act, a_word, b_word
from covhom.linalg import determinant
from covhom.words import Word, parse_word, random_word
from oracles import schreier_count

from conftest import SEED

GRID = [(s, k) for s in (3, 4, 5) for k in (2, 3, 4) if k ** (s - 1) <= 1024]

# frozen from oracles.schreier_count (brute-force enumeration of gamma(t, x))
CYCLIC_COUNTS = {(3, 2): 3, (3, 3): 4, (3, 4): 5, (4, 2): 5, (4, 3): 7, (4, 4): 9, (5, 2): 7, (5, 3): 10, (5, 4): 13}


def test_coset_labels():
    assert coset_label(CoverSpec(3, 3), parse_word("x1^2*x2", 2)) == (2, 1)
    c = parse_word("x1", 2).commutator(parse_word("x2", 2))
    assert coset_label(CoverSpec(3, 3), c) == (0, 0)
    assert coset_label(CoverSpec(4, 4, Kind.CYCLIC), parse_word("x1*x2*x3^-1", 3)) == (1,)


def test_spec_validation_and_cap(monkeypatch):
    with pytest.raises(ValueError):
        CoverSpec(2, 3)
    with pytest.raises(ValueError):
        CoverSpec(3, 1)
    monkeypatch.setenv("COVHOM_MAX_ORDER", "8")
    with pytest.raises(CapExceeded):
        Cover(CoverSpec(3, 3))
    Cover(CoverSpec(3, 3), force=True)


@pytest.mark.parametrize("s,k", GRID)
def test_transversal_is_schreier(s, k):
    for kind in Kind:
        cover = Cover(CoverSpec(s, k, kind))
        reps = set(cover.transversal.values())
        assert len(reps) == cover.group.order
        for w in reps:
            letters = list(w.unit_letters())
            for cut in range(len(letters)):
                assert Word(s - 1, letters[:cut]) in reps


@pytest.mark.parametrize("s,k", GRID)
def test_schreier_counts(s, k):
    full = Cover(CoverSpec(s, k, Kind.FULL))
    assert len(full.generators) == schreier_count(s, k, "full") == (s - 2) * k ** (s - 1) + 1
    assert all(g.family is not Family.OTHER for g in full.generators)
    assert full.family_sizes() == full.expected_family_sizes()
    cyc = Cover(CoverSpec(s, k, Kind.CYCLIC))
    assert len(cyc.generators) == CYCLIC_COUNTS[(s, k)] == k * (s - 2) + 1
    assert all(g.family is not Family.OTHER for g in cyc.generators)


def test_s3_family_sizes():
    sizes = Cover(CoverSpec(3, 3)).family_sizes()
    assert (sizes["A_last"], sizes["B(1)"], sizes["Bprime(1)"]) == (3, 4, 3)
    assert len(Cover(CoverSpec(4, 2)).generators) == 17


def test_cyclic_generators_use_minus_i_minus_one():
    cover = Cover(CoverSpec(4, 3, Kind.CYCLIC))
    conj = [g for g in cover.generators if g.family is Family.CONJUGATE]
    for g in conj:
        i = g.label[0]
        assert g.value == Word(3, [(1, i), (g.x, 1), (1, -i - 1)])
    assert len(Cover(CoverSpec(4, 2, Kind.CYCLIC)).generators) == 5


def test_values_lie_in_subgroup():
    for kind in Kind:
        cover = Cover(CoverSpec(4, 3, kind))
        for g in cover.generators:
            assert not g.value.is_identity()
            assert cover.label(g.value) == cover.group.identity


def test_rewrite_examples():
    cover = Cover(CoverSpec(3, 2))
    ((g, sign),) = cover.rewrite(parse_word("x2^2", 2))
    assert sign == 1 and g.value == parse_word("x2^2", 2) and g.family is Family.A_LAST
    w = parse_word("x1*x2^2*x1^-1", 2)
    ((g, sign),) = cover.rewrite(w)
    assert sign == 1 and g.value == w
    with pytest.raises(WordNotInSubgroup):
        cover.rewrite(parse_word("x1", 2))


def test_rewrite_power_identity():
    # (a^n)^(beta^j) = sum_l [b^j, a]^(alpha^l) + a^(n-1) b^j a b^-j, abelianized
    n = 3
    cover = Cover(CoverSpec(3, n))
    a, b = a_word, b_word
    for j in range(1, n):
        lhs = cover.abelianize(act(a**n, 0, j))
        rhs = sum(cover.abelianize(act((b**j).commutator(a), lam)) for lam in range(n - 1))
        rhs = rhs + cover.abelianize(a ** (n - 1) * b**j * a * b ** (-j))
        assert (lhs == rhs).all()


@pytest.mark.parametrize("s,k", GRID)
def test_rewrite_round_trip(s, k):
    rng = random.Random(SEED + s * 10 + k)
    for kind in Kind:
        cover = Cover(CoverSpec(s, k, kind))
        for _ in range(100):
            w = random_word(rng, s - 1, 8)
            w = w * cover.representative(cover.label(w)).inverse()
            assert Cover.multiply_factors(cover.rewrite(w), s - 1) == w


@pytest.mark.parametrize("spec", [CoverSpec(3, 2), CoverSpec(3, 3), CoverSpec(4, 2), CoverSpec(4, 3, Kind.CYCLIC)])
def test_homology_action(spec):
    mats = homology_action(spec)
    N = len(Cover(spec).generators)
    I = np.eye(N, dtype=np.int64)
    for M in mats.values():
        assert abs(determinant(M)) == 1
        assert (np.linalg.matrix_power(M, spec.k) == I).all()
    for A in mats.values():
        for B in mats.values():
            assert (A @ B == B @ A).all()
    assert (Cover(spec).action_of(Cover(spec).group.identity) == I).all()


def test_homology_action_fermat_two():
    mats = homology_action(CoverSpec(3, 2))
    assert mats[1].shape == (5, 5)


def test_ab_cubed_fixed_by_alpha_beta():
    cover = Cover(CoverSpec(3, 3))
    mats = cover.homology_action()
    v = cover.abelianize((a_word * b_word) ** 3)
    assert (mats[1] @ mats[2] @ v == v).all()


@pytest.mark.parametrize("s,k", GRID)
def test_stabilized_elements(s, k):
    cover = Cover(CoverSpec(s, k))
    elems = cover.stabilized_elements
    assert len(elems) == s * k ** (s - 2)
    for e in elems[:40]:
        v = cover.abelianize(e.word)
        assert (cover.action_of(e.stabilizer) @ v == v).all()
    two_g, boundary = cover.genus_schreier()
    assert boundary == len(elems) - 1
