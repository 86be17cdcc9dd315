import random

import numpy as np
import pytest

from covhom.groupring import (
    FiniteAbelianGroup, RingElement, RootOfUnity, augmentation, character_value, default_prime,
    norm_element, primitive_root, regular_representation,
)
from oracles import rank_q

from conftest import SEED


def rand_elem(rng, H, modulus=None):
    return RingElement(H, {g: rng.randint(-3, 3) for g in rng.sample(H.elements, min(4, H.order))}, modulus)


def test_norm_elements():
    Z2 = FiniteAbelianGroup(2, 1)
    assert norm_element(Z2, 1) == RingElement(Z2, {(0,): 1, (1,): 1})
    H = FiniteAbelianGroup(3, 2)
    S1 = norm_element(H, 1)
    assert S1 * RingElement.basis(H, H.generator(1)) == S1
    assert augmentation(S1) == 3
    H3 = FiniteAbelianGroup(2, 3)
    S4 = norm_element(H3, "product")
    assert len(S4.coeffs) == 2
    assert S4 * RingElement.basis(H3, (1, 1, 1)) == S4
    with pytest.raises(IndexError):
        norm_element(H, 3)


def test_augmentation_ideal_and_annihilation():
    H = FiniteAbelianGroup(4, 2)
    x1 = RingElement.basis(H, H.generator(1))
    assert augmentation(x1 - 1) == 0
    for j in (1, 2):
        xj = RingElement.basis(H, H.generator(j))
        assert ((xj - 1) * norm_element(H, j)).is_zero()


def test_ring_axioms():
    rng = random.Random(SEED)
    H = FiniteAbelianGroup(3, 2)
    for modulus in (None, 7):
        for _ in range(30):
            a, b, c = (rand_elem(rng, H, modulus) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            product = augmentation(a) * augmentation(b)
            assert augmentation(a * b) == (product % modulus if modulus else product)


def test_regular_representation():
    H = FiniteAbelianGroup(3, 1)
    assert (regular_representation(RingElement.one(H)) == np.eye(3)).all()
    P = regular_representation(RingElement.basis(H, (1,)))
    assert (P == np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])).all()
    rng = random.Random(SEED)
    H2 = FiniteAbelianGroup(2, 2)
    for _ in range(20):
        a, b = rand_elem(rng, H2), rand_elem(rng, H2)
        assert (regular_representation(a * b) == regular_representation(a) @ regular_representation(b)).all()


@pytest.mark.parametrize("k,r", [(2, 2), (3, 2), (2, 3), (4, 1)])
def test_norm_rank(k, r):
    H = FiniteAbelianGroup(k, r)
    for j in list(range(1, r + 1)) + ["product"]:
        M = regular_representation(norm_element(H, j))
        assert rank_q(M.tolist()) == H.order // k


def test_norm_rank_example_frozen():
    # oracle: Fraction elimination of rep(Sigma_1) on (Z/2)^2
    M = regular_representation(norm_element(FiniteAbelianGroup(2, 2), 1))
    assert rank_q(M.tolist()) == 2


def test_characters():
    root = RootOfUnity.standard(4, 5)
    assert pow(root.zeta, 2, 5) == 4  # zeta^2 = -1
    assert character_value((1, 0), (2, 0), root) == 4
    assert all(character_value((0, 0), h, root) == 1 for h in FiniteAbelianGroup(4, 2).elements)
    rng = random.Random(SEED)
    H = FiniteAbelianGroup(4, 2)
    for _ in range(30):
        i, h1, h2 = (rng.choice(H.elements) for _ in range(3))
        assert character_value(i, H.mul(h1, h2), root) == character_value(i, h1, root) * character_value(i, h2, root) % 5
    with pytest.raises(ValueError):
        RootOfUnity(4, 5, 4)  # order 2, not 4
    with pytest.raises(ValueError):
        RootOfUnity.standard(3, 5)


def test_default_prime():
    assert default_prime(3, 9) == 13
    assert default_prime(2, 4) == 5
    assert primitive_root(13) == 2
