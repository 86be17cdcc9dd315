import random

import pytest
from hypothesis import given, strategies as st

from covhom.magnus import TruncatedSeries, commutative_image, magnus_coefficient, theta
from covhom.words import Word, parse_word, random_word
from oracles import letters_of, magnus_letters
from conftest import SEED

words3 = st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3)), max_size=6).map(lambda ls: Word(3, ls))


def test_commutator_coefficients():
    t = theta(parse_word("x1*x2*x1^-1*x2^-1", 2), 3)
    assert t.constant == 1 and t.linear_part() == (0, 0)
    assert t[(1, 2)] == 1 and t[(2, 1)] == -1
    assert t[(1, 1)] == 0 and t[(2, 2)] == 0


def test_generator_and_inverse():
    t = theta(Word.generator(2, 1, -1), 4)
    assert [t[(1,) * m] for m in range(5)] == [1, -1, 1, -1, 1]
    t = theta(Word.generator(2, 1, 3), 4)
    assert [t[(1,) * m] for m in range(5)] == [1, 3, 3, 1, 0]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_homomorphism_against_oracle(d):
    rng = random.Random(SEED + d)
    for _ in range(100):
        u, v = random_word(rng, 3, 5), random_word(rng, 3, 5)
        uv = theta(u * v, d)
        assert uv == theta(u, d) * theta(v, d)
        assert uv.coeffs == magnus_letters(letters_of(u) + letters_of(v), d)


@given(words3)
def test_inverse_multiplies_to_one(w):
    assert theta(w, 4) * theta(w.inverse(), 4) == TruncatedSeries.one(3, 4)


@given(words3)
def test_degree_one_is_exponent_sums(w):
    assert theta(w, 1).linear_part() == w.exponent_sums()


def test_second_derived_subgroup_vanishes_low_degree():
    x1, x2, x3 = (Word.generator(3, i) for i in (1, 2, 3))
    w = x1.commutator(x2).commutator(x1.commutator(x3))
    t = theta(w, 4)
    assert t.homogeneous(1) == {} and t.homogeneous(2) == {} and t.homogeneous(3) == {}
    assert t.homogeneous(4)


def test_magnus_coefficient_and_truncation():
    w = parse_word("x1*x2*x1^-1*x2^-1", 2)
    assert magnus_coefficient((1, 2), w) == 1
    assert magnus_coefficient((), w) == 1
    with pytest.raises(ValueError):
        magnus_coefficient((1, 2, 1), w, degree=2)
    with pytest.raises(ValueError):
        theta(w, 0)


def test_commutative_image():
    w = parse_word("x1*x2*x1^-1*x2^-1", 2)
    assert commutative_image(theta(w, 2)) == TruncatedSeries.one(2, 2)
    t = commutative_image(theta(parse_word("x1*x2", 2), 2))
    assert t[(1, 2)] == 1 and t[(2, 1)] == 0


def test_series_str_and_mismatch():
    assert str(theta(parse_word("x1*x2", 2), 2)) == "1 + u1 + u2 + u1*u2"
    with pytest.raises(ValueError):
        TruncatedSeries.one(2, 2) * TruncatedSeries.one(2, 3)
