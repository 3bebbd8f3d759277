import pytest

from orbit_atlas.errors import PreconditionViolated, TooLarge, WeightMismatch
from orbit_atlas.field import jordan_matrix, primes
from orbit_atlas.partitions import compositions, flag_dim, partitions
from orbit_atlas.skeleton import (Skeleton, enumerate_skeletons, fixed_flag_dim, fixed_grass_dim,
                                  parse_skeleton, semisimplify, skeleton_of_diagonalizable,
                                  unipotent_skeleton, verify_all_skeletons, verify_merge_split)
from orbit_atlas.subspaces import count_fixed_flags

from oracles import interpolation_degree


def test_canonical_form():
    s = parse_skeleton("3.1 2.2")
    assert s.blocks == ((3, 1), (2, 2)) and str(s) == "3.1 2.2"
    assert s == Skeleton(((2, 2), (3, 1)))
    assert s.weight == 8
    with pytest.raises(ValueError):
        Skeleton(((1, 2),))


def test_semisimplify():
    assert semisimplify(unipotent_skeleton((2, 1))).blocks == ((1, 1), (1,))
    assert semisimplify(parse_skeleton("3")).blocks == ((1,), (1,), (1,))
    s = skeleton_of_diagonalizable((2, 1))
    assert semisimplify(s) == s and s.is_semisimple


def test_fixed_dim_examples():
    assert fixed_flag_dim(skeleton_of_diagonalizable((1, 1)), (1, 1)) == 0
    assert fixed_flag_dim(unipotent_skeleton((1, 1, 1)), (1, 1, 1)) == 3
    assert fixed_flag_dim(unipotent_skeleton((3,)), (1, 1, 1)) == 0
    assert fixed_grass_dim(unipotent_skeleton((2, 2)), 2) == 2
    with pytest.raises(WeightMismatch):
        fixed_flag_dim(unipotent_skeleton((2,)), (1, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_identity_has_full_dimension(n):
    s = unipotent_skeleton((1,) * n)
    for a in compositions(n):
        assert fixed_flag_dim(s, a) == flag_dim(a)


def test_skeleton_counts():
    assert len(enumerate_skeletons(1)) == 1
    assert len(enumerate_skeletons(2)) == 3
    assert len(enumerate_skeletons(3)) == 6
    assert [len(enumerate_skeletons(n)) for n in range(4, 6)] == [14, 27]


def test_merge_split_preconditions():
    s = unipotent_skeleton((2, 1))
    assert verify_merge_split(s, (1, 2), 1, 3, 0)
    with pytest.raises(PreconditionViolated):
        verify_merge_split(s, (1, 2), 1, 2, 2)
    with pytest.raises(PreconditionViolated):
        verify_merge_split(s, (1, 2), 2, 3, 0)


def test_suite_guard():
    with pytest.raises(TooLarge):
        verify_all_skeletons(9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_suite_small(n):
    assert not any(verify_all_skeletons(n).values())


@pytest.mark.parametrize("lam", [lam for n in (1, 2, 3) for lam in partitions(n)])
def test_interpolated_degree(lam):
    n = sum(lam)
    for a in compositions(n):
        ps = primes(flag_dim(a) + 2)
        counts = [count_fixed_flags(jordan_matrix(lam, 1, p), a) for p in ps]
        assert interpolation_degree(ps, counts) == fixed_flag_dim(unipotent_skeleton(lam), a)
