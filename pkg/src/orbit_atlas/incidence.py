"""Incidence transform between functions on G(r, V) and on G(k, V), r <= k <= n/2.

phi sends f to f_hat(H) = sum of f(P) over r-subspaces P inside H. A left
inverse pi sends g to g_check(P) = sum over H of eps[dim(P ∩ H)] g(H), where
eps solves the triangular system A.eps = (0, ..., 0, 1) and
A[i][j] = #{H ⊇ P0 : dim(P ∩ H) = j} for any pair with dim(P ∩ P0) = i.
All scalars are exact rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .errors import ChoiceDependent, LevelError, PreconditionViolated
from .field import FpMatrix, inverse_table, nullspace_rows, rank_rows, rat_rank, rat_solve_upper_triangular
from .orbits import Grassmannian, _subspace_points, orbit_count
from .subspaces import (Subspace, act_subspace, intersect_dim, intersection, subspace_from_spanning_set)


@dataclass
class FunctionOnGrassmannian:
    n: int
    p: int
    level: int
    values: dict  # Subspace -> Fraction; missing keys are zero

    def __getitem__(self, s):
        return self.values.get(s, Fraction(0))

    def vector(self):
        return [self[s] for s in _subspace_points(self.n, self.level, self.p)]

    def __eq__(self, other):
        return ((self.n, self.p, self.level) == (other.n, other.p, other.level)
                and self.vector() == other.vector())

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        return FunctionOnGrassmannian(self.n, self.p, self.level,
                                      {s: self[s] + other[s] for s in keys})

    def scale(self, c):
        return FunctionOnGrassmannian(self.n, self.p, self.level,
                                      {s: Fraction(c) * v for s, v in self.values.items()})

    def act(self, g):
        """(g.f)(x) = f(g^-1 x)."""
        return FunctionOnGrassmannian(self.n, self.p, self.level,
                                      {act_subspace(g, s): v for s, v in self.values.items()})


def delta(s):
    return FunctionOnGrassmannian(s.n, s.p, s.dim, {s: Fraction(1)})


def constant(n, level, p, c=1):
    return FunctionOnGrassmannian(n, p, level,
                                  {s: Fraction(c) for s in _subspace_points(n, level, p)})


# ---------------------------------------------------------------------------
# intersection dimensions, vectorized


def batch_rank(mats, p):
    """Ranks over F_p of a stack of small matrices, shape (B, R, C)."""
    a = np.array(mats, dtype=np.int64) % p
    batch, nrows, ncols = a.shape
    inv = np.array(inverse_table(p), dtype=np.int64)
    used = np.zeros((batch, nrows), dtype=bool)
    rank = np.zeros(batch, dtype=np.int64)
    idx = np.arange(batch)
    for c in range(ncols):
        cand = (a[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        b = idx[has]
        pr = piv[has]
        prow = a[b, pr, :] * inv[a[b, pr, c]][:, None] % p
        a[b, pr, :] = prow
        factors = a[b, :, c].copy()
        factors[np.arange(len(b)), pr] = 0
        a[b] = (a[b] - factors[:, :, None] * prow[:, None, :]) % p
        used[b, pr] = True
        rank[b] += 1
    return rank


@lru_cache(maxsize=32)
def intersection_dims(n, r, k, p):
    """Matrix D with D[a, b] = dim(P_a ∩ H_b) over G(r) x G(k) in enumeration order."""
    small = _subspace_points(n, r, p)
    big = _subspace_points(n, k, p)
    if r == 0 or k == n:
        return np.full((len(small), len(big)), r, dtype=np.int64)
    if k == 0:
        return np.zeros((len(small), len(big)), dtype=np.int64)
    bases = np.array([s.rows for s in small], dtype=np.int64)          # (S, r, n)
    anns = np.array([nullspace_rows(h.rows, n, p) for h in big], dtype=np.int64)  # (B, n-k, n)
    prod = np.einsum("srn,bcn->sbrc", bases, anns) % p
    ranks = batch_rank(prod.reshape(-1, r, n - k), p).reshape(len(small), len(big))
    return (r - ranks).astype(np.int64)


def _check_levels(n, r, k):
    if not 0 <= r <= k <= n:
        raise LevelError(f"need 0 <= r <= k <= n, got r={r}, k={k}, n={n}")


def hat_transform(f, k):
    r, n, p = f.level, f.n, f.p
    _check_levels(n, r, k)
    small = _subspace_points(n, r, p)
    big = _subspace_points(n, k, p)
    contained = intersection_dims(n, r, k, p) == r
    fv = f.vector()
    out = {}
    for b, h in enumerate(big):
        total = sum((fv[a] for a in np.flatnonzero(contained[:, b])), Fraction(0))
        if total:
            out[h] = total
    return FunctionOnGrassmannian(n, p, k, out)


def check_levels_proof(n, r, k):
    if not 0 <= r <= k or 2 * k > n:
        raise PreconditionViolated(f"need 0 <= r <= k <= n/2, got r={r}, k={k}, n={n}")


# ---------------------------------------------------------------------------
# the triangular system


def standard_pair(n, r, i, p):
    """(P, P0) with P0 = <e_1..e_r> and P = <e_1..e_i, e_{r+1}..e_{2r-i}>."""
    e = [[int(a == b) for b in range(n)] for a in range(n)]
    p0 = subspace_from_spanning_set(e[:r], n, p)
    pp = subspace_from_spanning_set(e[:i] + e[r:2 * r - i], n, p)
    return pp, p0


def _count_row(n, r, k, p, pp, p0, dims):
    small = _subspace_points(n, r, p)
    pos = {s: a for a, s in enumerate(small)}
    through = dims[pos[p0]] == r
    meet = dims[pos[pp]]
    return [int(np.count_nonzero(through & (meet == j))) for j in range(r + 1)]


def build_A(n, r, k, p, samples=2, seed=0):
    """The (r+1) x (r+1) intersection-count matrix.

    Row i is counted for the standard pair and for `samples - 1` random pairs
    with the same intersection dimension; any disagreement raises
    ChoiceDependent.
    """
    check_levels_proof(n, r, k)
    dims = intersection_dims(n, r, k, p)
    small = _subspace_points(n, r, p)
    rng = random.Random(seed)
    rows = []
    for i in range(r + 1):
        pp, p0 = standard_pair(n, r, i, p)
        row = _count_row(n, r, k, p, pp, p0, dims)
        for _ in range(samples - 1):
            q0 = rng.choice(small)
            candidates = [s for s in small if intersect_dim(s, q0) == i]
            q = rng.choice(candidates)
            other = _count_row(n, r, k, p, q, q0, dims)
            if other != row:
                raise ChoiceDependent(f"row {i}: {row} vs {other}")
        rows.append(row)
    for i in range(r + 1):
        if any(rows[i][j] for j in range(i)):
            raise AssertionError(f"A is not upper triangular: {rows}")
        if rows[i][i] == 0:
            raise AssertionError(f"A has a zero diagonal entry: {rows}")
    return rows


def witness_H(pp, p0, k):
    """A k-subspace H with P0 ⊆ H and dim(P ∩ H) = dim(P ∩ P0).

    Uses a basis e_1..e_n adapted to P ∩ P0 ⊆ P0 and P ∩ P0 ⊆ P, and takes
    H = <e_1..e_r, e_{2r-i+1}..e_{k+r-i}>.
    """
    n, p, r = p0.n, p0.p, p0.dim
    if pp.dim != r or pp.n != n:
        raise PreconditionViolated("P and P0 must have the same dimension and ambient space")
    common = intersection(pp, p0)
    i = common.dim
    if not r <= k or k - r > n - 2 * r + i:
        raise PreconditionViolated(f"no room for H: r={r}, k={k}, n={n}, i={i}")

    basis = [list(v) for v in common.rows]

    def extend(candidates):
        for v in candidates:
            if rank_rows(basis + [list(v)], p) > len(basis):
                basis.append(list(v))

    extend(p0.rows)
    extend(pp.rows)
    extend([[int(a == b) for b in range(n)] for a in range(n)])
    chosen = basis[:r] + basis[2 * r - i:k + r - i]
    h = subspace_from_spanning_set(chosen, n, p)
    assert h.dim == k and p0.issubspace(h) and intersect_dim(pp, h) == i
    return h


@dataclass
class EpsilonVector:
    coefficients: tuple
    A: list
    n: int
    r: int
    k: int
    p: int


def solve_epsilon(n, r, k, p, samples=2):
    a = build_A(n, r, k, p, samples=samples)
    m = [0] * r + [1]
    return EpsilonVector(tuple(rat_solve_upper_triangular(a, m)), a, n, r, k, p)


def pi_transform(g, r, eps=None):
    """The left inverse of hat_transform, level k -> level r."""
    n, p, k = g.n, g.p, g.level
    check_levels_proof(n, r, k)
    if eps is None:
        eps = solve_epsilon(n, r, k, p).coefficients
    dims = intersection_dims(n, r, k, p)
    gv = g.vector()
    out = {}
    for a, s in enumerate(_subspace_points(n, r, p)):
        total = sum((eps[d] * v for d, v in zip(dims[a], gv) if v), Fraction(0))
        if total:
            out[s] = total
    return FunctionOnGrassmannian(n, p, r, out)


def check_transform(n, r, k, p, samples=2):
    """pi(phi(delta_P)) == delta_P for every r-subspace P, checked as the
    exact matrix identity (eps table) . (containment)^T = I."""
    eps = solve_epsilon(n, r, k, p, samples=samples).coefficients
    scale = lcm(*(e.denominator for e in eps))
    ints = [int(e * scale) for e in eps]
    dims = intersection_dims(n, r, k, p)
    contained = (dims == r).astype(np.int64)
    bound = max(abs(c) for c in ints) * dims.shape[1]
    if bound < 2**62:
        weights = np.array(ints, dtype=np.int64)[dims]
    else:
        weights = np.array(ints, dtype=object)[dims]
        contained = contained.astype(object)
    product = weights @ contained.T
    target = np.eye(len(dims), dtype=np.int64) * scale
    return bool(np.array_equal(product, target))


def invariant_dim(spec, r, method="orbits"):
    """dim of the G-invariant functions on G(r, V).

    "orbits" counts orbits; "linear" computes |G(r)| - rank of the stacked
    (permutation - identity) matrices of the generators over Q.
    """
    if method == "orbits":
        return orbit_count(spec, Grassmannian(r)).orbit_count
    if method != "linear":
        raise ValueError(f"unknown method {method!r}")
    points = _subspace_points(spec.n, r, spec.p)
    pos = {s: a for a, s in enumerate(points)}
    rows = []
    for g in spec.generators:
        for a, s in enumerate(points):
            row = [0] * len(points)
            row[a] -= 1
            row[pos[act_subspace(g, s, check=False)]] += 1
            if any(row):
                rows.append(row)
    return len(points) - rat_rank(rows)
