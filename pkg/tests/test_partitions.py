import itertools

import pytest
from hypothesis import given, strategies as st

from orbit_atlas.errors import NegativePart, WeightMismatch
from orbit_atlas.partitions import (compositions, conjugate, dominance_geq, flag_dim, grass_dim,
                                    pad, partitions, q_binomial, q_multinomial, raising,
                                    raising_witness, replay, sort_to_partition, strip)


def padded_partitions(n):
    return [pad(lam, n) for lam in partitions(n)]


def test_sort_to_partition():
    assert sort_to_partition((1, 3, 2)) == (3, 2, 1)
    assert sort_to_partition((2, 2)) == (2, 2)
    assert sort_to_partition((0, 4)) == (4, 0)


def test_dominance_examples():
    assert dominance_geq((3, 0, 0), (1, 1, 1))
    assert not dominance_geq((2, 2, 0), (3, 1, 0))
    assert dominance_geq((2, 1), (2, 1))
    assert dominance_geq((3,), (1, 1, 1))
    with pytest.raises(WeightMismatch):
        dominance_geq((2,), (1,))


def test_conjugate_examples():
    assert conjugate((3, 0, 0)) == (1, 1, 1)
    assert conjugate((2, 2)) == (2, 2)
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)


@given(st.lists(st.integers(0, 7), max_size=7))
def test_conjugate_involution(parts):
    lam = sort_to_partition(parts)
    assert conjugate(conjugate(lam)) == strip(lam)


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert len(list(compositions(5))) == 16


def test_raising_examples():
    assert raising(1, (1, 1, 1)) == (2, 1, 0)
    assert raising(1, (2, 1, 0)) == (3, 0, 0)
    with pytest.raises(NegativePart):
        raising(2, (3, 0, 0))


def test_witness_examples():
    assert raising_witness((1, 1, 1), (3, 0, 0)) == (2, 0)
    assert raising_witness((2, 2), (3, 1)) == (1,)
    assert raising_witness((3, 1, 0), (2, 2, 0)) is None
    # the naive prefix-sum exponents are not a witness
    assert replay((1, 1, 1), (2, 0)) == (3, 0, 0)
    with pytest.raises(NegativePart):
        replay((1, 1, 1), (2, 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_dominance_partial_order(n):
    P = padded_partitions(n)
    geq = {(a, b): dominance_geq(a, b) for a in P for b in P}
    for a in P:
        assert geq[a, a]
    for a, b in itertools.product(P, P):
        if a != b:
            assert not (geq[a, b] and geq[b, a])
    for a, b, c in itertools.product(P, P, P):
        if geq[a, b] and geq[b, c]:
            assert geq[a, c]


@pytest.mark.parametrize("n", range(1, 9))
def test_conjugation_reverses_dominance(n):
    P = padded_partitions(n)
    for a, b in itertools.product(P, P):
        assert dominance_geq(a, b) == dominance_geq(conjugate(b), conjugate(a))


@pytest.mark.parametrize("n", range(2, 9))
def test_raising_climbs(n):
    for lam in padded_partitions(n):
        for i in range(1, n):
            if lam[i] == 0:
                continue
            up = raising(i, lam)
            assert up != lam and dominance_geq(up, lam)


def test_q_binomial_examples():
    assert q_binomial(4, 2, 2) == 35 == 15 * 7 // 3
    assert q_binomial(7, 0, 3) == 1
    assert q_multinomial((1, 1, 1), 2) == 21


@pytest.mark.parametrize("q", [2, 3, 5])
def test_q_binomial_symmetry_and_pascal(q):
    for n in range(11):
        for k in range(n + 1):
            assert q_binomial(n, k, q) == q_binomial(n, n - k, q)
            if 0 < k < n:
                assert q_binomial(n, k, q) == (q_binomial(n - 1, k - 1, q)
                                               + q**k * q_binomial(n - 1, k, q))


def test_dimensions():
    assert grass_dim(2, 4) == 4
    assert flag_dim((1, 1, 1)) == 3
    assert flag_dim((5,)) == 0
    for n in range(1, 7):
        for a in compositions(n):
            assert (n * n - sum(x * x for x in a)) % 2 == 0
