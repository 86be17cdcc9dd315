from itertools import product

import numpy as np
import pytest

from covhom.alexander import HomologySpace, crowell_ranks
from covhom.characters import (
    CharacterIndex, character_indices, character_rows, decomposition_table, image_census,
    isotypic_dimension, isotypic_dimensions, verification_primes,
)
from covhom.cover import CoverSpec, Kind
from covhom.groupring import RootOfUnity
from covhom.linalg import rank_mod_p
from oracles import C_value

FULL_GRID = [(s, k) for s in (3, 4, 5) for k in (2, 3, 4) if k ** (s - 1) <= 1024]


def test_index_statistics():
    idx = CharacterIndex((1, 2), 3)
    assert (idx.i_s, idx.z, idx.c, idx.C) == (0, 1, 2, 0)
    idx = CharacterIndex((1, 1), 3)
    assert (idx.i_s, idx.z, idx.C) == (2, 0, 1)
    zero = CharacterIndex((0, 0), 3)
    assert (zero.z, zero.c, zero.C) == (3, 3, 0)


@pytest.mark.parametrize("s,k", FULL_GRID)
def test_table_against_enumeration(s, k):
    table = decomposition_table(CoverSpec(s, k))
    assert len(table) == k ** (s - 1)
    assert all(c == C_value(idx.i, k) >= 0 for idx, c in table)
    assert sum(c for _, c in table) == crowell_ranks(CoverSpec(s, k)).rank_H1


def test_table_examples():
    t = dict((idx.i, c) for idx, c in decomposition_table(CoverSpec(3, 3)))
    assert (t[(1, 1)], t[(1, 2)], t[(0, 0)]) == (1, 0, 0)
    t = {idx.i: c for idx, c in decomposition_table(CoverSpec(4, 2)) if c}
    assert t == {(1, 1, 1): 2}
    t = {idx.i for idx, c in decomposition_table(CoverSpec(3, 4)) if c}
    assert t == {(i, j) for i in range(1, 4) for j in range(1, 4) if i + j != 4}


def test_verification_primes():
    assert verification_primes(CoverSpec(3, 3)) == [13, 19]
    assert verification_primes(CoverSpec(4, 2)) == [11, 13]


@pytest.mark.parametrize("s,k", FULL_GRID)
def test_isotypic_dimensions(s, k):
    spec = CoverSpec(s, k)
    for p in verification_primes(spec):
        dims = isotypic_dimensions(spec, p)
        assert all(dims[idx.i] == idx.C for idx in character_indices(s, k))
        census = image_census(spec, p)
        assert all(census[idx.i] == idx.c for idx in character_indices(s, k))


def test_isotypic_examples():
    spec = CoverSpec(3, 3)
    assert isotypic_dimension(spec, (1, 1), 7) == 1
    assert isotypic_dimension(spec, CharacterIndex((0, 0), 3), 7) == 0
    assert sum(isotypic_dimensions(spec, 7).values()) == HomologySpace(spec, 7).dimension


@pytest.mark.parametrize("s,k", [(3, 3), (3, 4), (4, 2), (4, 3)])
def test_projectors(s, k):
    spec = CoverSpec(s, k)
    p = verification_primes(spec, 1)[0]
    V = HomologySpace(spec, p)
    root = RootOfUnity.standard(k, p)
    d = V.dimension
    total = np.zeros((d, d), dtype=np.int64)
    for i in product(range(k), repeat=s - 1):
        P = V.projector_matrix(i, root)
        assert ((P @ P) % p == P).all()
        total = (total + P) % p
        # rank of the projector is the isotypic dimension
        assert rank_mod_p(P, p) == C_value(i, k)
    assert (total == np.eye(d, dtype=np.int64)).all()


def test_action_matrices_form_a_representation():
    spec = CoverSpec(3, 4)
    V = HomologySpace(spec, 17)
    g, h = (1, 0), (2, 3)
    A, B = V.action_matrix(g), V.action_matrix(h)
    gh = V.group.mul(g, h)
    assert ((A @ B) % 17 == V.action_matrix(gh)).all()


def test_rows_and_kind_check():
    rows = character_rows(CoverSpec(4, 2))
    assert all(r.ok for r in rows)
    assert rows[-1].as_list() == [1, 1, 1, 1, 0, 1, 2, 2]
    with pytest.raises(ValueError):
        decomposition_table(CoverSpec(4, 2, Kind.CYCLIC))
