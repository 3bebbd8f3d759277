import random
from fractions import Fraction

import pytest

from orbit_atlas.errors import LevelError, PreconditionViolated
from orbit_atlas.field import FpMatrix
from orbit_atlas.incidence import (build_A, check_transform, constant, delta, hat_transform,
                                   intersection_dims, invariant_dim, pi_transform, solve_epsilon,
                                   standard_pair, witness_H)
from orbit_atlas.orbits import borel_spec, random_spec
from orbit_atlas.partitions import q_binomial
from orbit_atlas.subspaces import enumerate_subspaces, intersect_dim

import oracles


def test_example_system():
    eps = solve_epsilon(4, 1, 2, 2)
    assert eps.A == [[6, 1], [0, 7]]
    assert eps.coefficients == (Fraction(-1, 42), Fraction(1, 7))
    assert check_transform(4, 1, 2, 2)


def test_A_rows_against_oracle():
    # count H ⊇ P0 with dim(P ∩ H) = j using vector sets only
    n, r, k, p = 4, 1, 2, 3
    planes = oracles.all_subspaces(n, k, p)
    for i in range(r + 1):
        pp, p0 = standard_pair(n, r, i, p)
        P, P0 = oracles.to_frozenset(pp), oracles.to_frozenset(p0)
        row = [0] * (r + 1)
        for h in planes:
            if P0 <= h:
                row[_log(len(P & h), p)] += 1
        assert build_A(n, r, k, p)[i] == row


def _log(m, p):
    d = 0
    while m > 1:
        m //= p
        d += 1
    return d


def test_intersection_dims_against_pairwise():
    n, r, k, p = 4, 2, 2, 2
    dims = intersection_dims(n, r, k, p)
    small, big = enumerate_subspaces(n, r, p), enumerate_subspaces(n, k, p)
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.randrange(len(small)), rng.randrange(len(big))
        assert dims[a, b] == intersect_dim(small[a], big[b])


def test_hat_of_constant():
    f = constant(4, 1, 2)
    h = hat_transform(f, 2)
    assert set(h.vector()) == {q_binomial(2, 1, 2)}
    with pytest.raises(LevelError):
        hat_transform(f, 0)


@pytest.mark.parametrize("n,r,k,p", [(4, 1, 2, 2), (4, 2, 2, 2), (5, 1, 2, 2), (4, 1, 2, 3)])
def test_left_inverse_on_deltas(n, r, k, p):
    eps = solve_epsilon(n, r, k, p).coefficients
    for s in enumerate_subspaces(n, r, p)[::5]:
        assert pi_transform(hat_transform(delta(s), k), r, eps) == delta(s)


def test_left_inverse_on_combinations():
    n, r, k, p = 4, 1, 2, 2
    rng = random.Random(3)
    lines = enumerate_subspaces(n, r, p)
    f = delta(lines[0]).scale(0)
    for s in rng.sample(lines, 5):
        f = f + delta(s).scale(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    assert pi_transform(hat_transform(f, k), r) == f


def test_equivariance():
    n, r, k, p = 4, 1, 2, 3
    rng = random.Random(5)
    lines = enumerate_subspaces(n, r, p)
    f = delta(lines[1]) + delta(lines[7]).scale(3)
    for _ in range(3):
        g = random_spec(rng, n, p, 1, kind="general").generators[0]
        assert hat_transform(f.act(g), k) == hat_transform(f, k).act(g)


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        build_A(4, 1, 3, 2)
    with pytest.raises(PreconditionViolated):
        build_A(4, 2, 1, 2)


@pytest.mark.parametrize("n,r,k,p", [(4, 1, 2, 2), (4, 2, 2, 2), (5, 2, 2, 2), (5, 1, 2, 3)])
def test_witness_H_exhaustive(n, r, k, p):
    small = enumerate_subspaces(n, r, p)
    p0 = small[0]
    for pp in small:
        h = witness_H(pp, p0, k)
        assert h.dim == k and p0.issubspace(h)
        assert intersect_dim(pp, h) == intersect_dim(pp, p0)


@pytest.mark.parametrize("seed", range(4))
def test_invariant_dim_two_ways(seed):
    spec = random_spec(random.Random(seed), 3, 2, 1)
    for r in range(4):
        assert invariant_dim(spec, r, "orbits") == invariant_dim(spec, r, "linear")
    spec = borel_spec(3, 2)
    assert [invariant_dim(spec, r, "linear") for r in range(4)] == [1, 3, 3, 1]
