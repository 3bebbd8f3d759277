import random

import pytest
from hypothesis import given, settings, strategies as st

from orbit_atlas.errors import AmbientMismatch, ShapeMismatch, TooLarge
from orbit_atlas.field import FpMatrix, jordan_matrix, diagonal
from orbit_atlas.partitions import compositions, q_binomial, q_multinomial
from orbit_atlas.subspaces import (act_flag, act_subspace, count_fixed_flags, enumerate_flags,
                                   enumerate_subspaces, fixed_flags, fixed_subspaces,
                                   intersect_dim, intersection, span_sum,
                                   subspace_from_spanning_set)

import oracles


@pytest.mark.parametrize("n,k,p,expected", [(3, 1, 2, 7), (4, 2, 2, 35), (3, 1, 3, 13)])
def test_grassmannian_sizes_against_oracle(n, k, p, expected):
    ours = {oracles.to_frozenset(s) for s in enumerate_subspaces(n, k, p)}
    assert len(ours) == expected == len(oracles.all_subspaces(n, k, p))
    assert ours == oracles.all_subspaces(n, k, p)


@pytest.mark.parametrize("a,p,expected", [((1, 1, 1), 2, 21), ((1, 2), 2, 7), ((2, 0, 1), 3, 13)])
def test_flag_sizes_against_oracle(a, p, expected):
    ours = {tuple(oracles.to_frozenset(s) for s in f.chain) for f in enumerate_flags(a, p)}
    assert len(ours) == expected
    assert ours == set(oracles.all_flags(a, p))


def test_enumeration_is_sorted_and_valid():
    subs = enumerate_subspaces(4, 2, 3)
    assert subs == sorted(subs)
    flags = enumerate_flags((1, 2, 1), 2)
    assert all(f.is_valid() for f in flags)
    assert [f.key for f in flags] == sorted(f.key for f in flags)


def test_degenerate_enumerations():
    assert len(enumerate_subspaces(3, 0, 2)) == 1
    assert len(enumerate_subspaces(3, 3, 5)) == 1
    assert len(enumerate_flags((0, 3, 0), 2)) == 1
    with pytest.raises(TooLarge):
        enumerate_subspaces(12, 6, 3)


def test_spanning_set():
    s = subspace_from_spanning_set([[1, 1, 0], [2, 2, 0], [0, 0, 0]], 3, 3)
    assert s.dim == 1 and s.rows == ((1, 1, 0),)
    with pytest.raises(ShapeMismatch):
        subspace_from_spanning_set([[1, 0]], 3, 2)


def test_intersection_and_sum():
    a = subspace_from_spanning_set([[1, 0, 0], [0, 1, 0]], 3, 2)
    b = subspace_from_spanning_set([[0, 1, 0], [0, 0, 1]], 3, 2)
    assert intersect_dim(a, b) == 1
    assert intersection(a, b).rows == ((0, 1, 0),)
    assert span_sum(a, b).dim == 3
    with pytest.raises(AmbientMismatch):
        intersect_dim(a, subspace_from_spanning_set([[1, 0]], 2, 2))


def test_action_matches_oracle():
    rng = random.Random(1)
    group = oracles.general_linear(3, 2)
    subs = enumerate_subspaces(3, 1, 2) + enumerate_subspaces(3, 2, 2)
    for g in rng.sample(group, 20):
        m = FpMatrix(g, 2)
        for s in subs:
            assert oracles.to_frozenset(act_subspace(m, s)) == oracles.image(g, oracles.to_frozenset(s), 2)


def test_action_axiom():
    rng = random.Random(2)
    group = [FpMatrix(g, 3) for g in oracles.general_linear(2, 3)]
    lines = enumerate_subspaces(2, 1, 3)
    flags = enumerate_flags((1, 1), 3)
    for _ in range(30):
        g, h = rng.choice(group), rng.choice(group)
        for s in lines:
            assert act_subspace(g @ h, s) == act_subspace(g, act_subspace(h, s))
        for f in flags:
            assert act_flag(g @ h, f) == act_flag(g, act_flag(h, f))
    ident = FpMatrix.identity(2, 3)
    assert all(act_subspace(ident, s) == s for s in lines)


def test_fixed_point_examples():
    assert len(fixed_subspaces(jordan_matrix((2,), 1, 2), 1)) == 1
    assert len(fixed_flags(diagonal((1, 2), 3), (1, 1))) == 2
    assert len(fixed_flags(FpMatrix.identity(3, 2), (1, 1, 1))) == 21


@pytest.mark.parametrize("lam", [(1, 1, 1), (2, 1), (3,), (2, 2), (3, 1), (2, 1, 1)])
@pytest.mark.parametrize("p", [2, 3])
def test_count_fixed_flags_matches_listing(lam, p):
    g = jordan_matrix(lam, 1, p)
    for a in compositions(sum(lam)):
        assert count_fixed_flags(g, a) == len(fixed_flags(g, a))


@pytest.mark.parametrize("n,p", [(3, 2), (4, 2), (3, 3)])
def test_fixed_count_duality(n, p):
    rng = random.Random(n * p)
    for _ in range(5):
        while True:
            g = FpMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
            if g.is_invertible():
                break
        counts = [len(fixed_subspaces(g, k)) for k in range(n + 1)]
        assert counts == counts[::-1]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.sampled_from([2, 3]), st.data())
def test_cardinalities_property(n, p, data):
    k = data.draw(st.integers(0, n))
    assert len(enumerate_subspaces(n, k, p)) == q_binomial(n, k, p)
    a = data.draw(st.sampled_from(list(compositions(n))))
    assert len(enumerate_flags(a, p)) == q_multinomial(a, p)
