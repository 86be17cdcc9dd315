import numpy as np
import pytest

from covhom.cover import Cover, CoverSpec
from covhom.fermat import (
    SIGMA1, SIGMA2, BraidAutomorphism, a_word, ab_power_expansion, act, braid_action_matrices,
    braid_closed_form_checks, braid_relation_holds, closed_homology_basis, fermat_generator_families,
    fixed_by_table, gamma_is_invariant, invariant_elements, families_match_schreier, power_commutator_generators,
    generator_transition, quotient_rank, unimodular, b_word,
)
from covhom.words import parse_word
from oracles import letters_of, reduce_letters


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_family_sizes_and_schreier_match(n):
    A1, A2, A3 = fermat_generator_families(n)
    assert (len(A1), len(A2), len(A3)) == (n, (n - 1) ** 2, n)
    assert families_match_schreier(n)
    gens = {g.value for g in Cover(CoverSpec(3, n)).generators}
    assert gens == set(A1) | set(A2) | set(A3)
    assert len(gens) == n * n + 1


def test_families_reject_small_n():
    with pytest.raises(ValueError):
        fermat_generator_families(1)


def test_act_is_conjugation():
    w = parse_word("x1*x2", 2)
    assert act(w, 1, 1) == parse_word("x1*x2*x1*x2*x2^-1*x1^-1", 2)
    assert act(w) == w


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_power_commutator_generators_form_a_basis(n):
    gens = power_commutator_generators(n)
    assert len(gens) == n * n + 1
    assert unimodular(generator_transition(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_invariant_elements_and_power_expansion(n):
    elems = invariant_elements(n)
    assert len(elems) == 3 * n
    assert fixed_by_table(n)
    assert ab_power_expansion(n)


@pytest.mark.parametrize("n,size", [(2, 0), (3, 2), (4, 6), (5, 12)])
def test_basis_size(n, size):
    basis = closed_homology_basis(n)
    assert len(basis.classes) == size == quotient_rank(n)
    assert basis.genus == (n - 1) * (n - 2) // 2


def test_boundaries_are_zero():
    basis = closed_homology_basis(4)
    for e in invariant_elements(4):
        assert basis.is_boundary(e.word)
    assert not basis.is_boundary(basis.classes[0])
    coords = basis.coordinates(basis.classes[2])
    assert list(coords) == [0, 0, 1, 0, 0, 0]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_braid_action(n):
    basis = closed_homology_basis(n)
    assert gamma_is_invariant(basis, SIGMA1) and gamma_is_invariant(basis, SIGMA2)
    checks = braid_closed_form_checks(n)
    assert checks and all(c.ok for c in checks), [c.detail for c in checks if not c.ok]
    M1, M2 = braid_action_matrices(n)
    assert unimodular(M1) and unimodular(M2)
    assert braid_relation_holds(M1, M2)


def test_braid_relation_on_words():
    left = SIGMA1.then(SIGMA2).then(SIGMA1)
    right = SIGMA2.then(SIGMA1).then(SIGMA2)
    assert left == right
    assert left.image_a == b_word.inverse() * a_word.inverse()
    assert left.image_b == a_word * b_word * a_word.inverse()


def test_braid_images_by_letter_oracle():
    # substitute letter by letter and freely reduce, independent of Word algebra
    images = {1: letters_of(SIGMA1.image_a), 2: letters_of(SIGMA1.image_b)}
    w = parse_word("x1^2*x2^-1*x1", 2)
    out = []
    for x in letters_of(w):
        img = images[abs(x)]
        out += img if x > 0 else [-y for y in reversed(img)]
    assert reduce_letters(out) == letters_of(SIGMA1(w))


def test_abelian_matrices():
    M1, M2 = SIGMA1.abelian_matrix(), SIGMA2.abelian_matrix()
    assert M1.tolist() == [[0, 1], [1, 0]]
    assert M2.tolist() == [[1, -1], [0, -1]]
    assert (M1 @ M2 @ M1 == M2 @ M1 @ M2).all()


def test_non_braid_pair_fails_relation():
    swap = BraidAutomorphism("swap", b_word, a_word)
    assert swap.then(swap) == BraidAutomorphism("id", a_word, b_word)
    assert not braid_relation_holds(np.array([[1, 1], [0, 1]]), np.array([[2, 0], [0, 1]]))
