"""Orbit counting for finitely generated subgroups of GL(n, F_p).

Three independent counts are available:

* ``orbit_count``: breadth-first search over points using the generators only;
* ``burnside_count``: average number of fixed points over the full group,
  which needs the group closure;
* ``fibered_count``: orbit counts of stabilizers on the fibres of the
  forgetful map between two flag varieties, summed over coarse orbits.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (CapExceeded, NonIntegerAverage, NotARefinement, NotPrime, ShapeMismatch,
                     Singular)
from .field import FpMatrix, is_prime, mat_inv, mat_mul, nullspace_rows
from .partitions import (compositions, dominance_geq, q_binomial, raising_witness,
                         sort_to_partition, pad)
from .subspaces import Flag, act_flag, act_subspace, enumerate_flags, enumerate_subspaces

DEFAULT_CAP = 10**6
_CHUNK = 1 << 16


@dataclass(frozen=True)
class GroupSpec:
    p: int
    n: int
    generators: tuple = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        gens = tuple(g if isinstance(g, FpMatrix) else FpMatrix(g, self.p, ncols=self.n)
                     for g in self.generators)
        for g in gens:
            if g.p != self.p or g.shape != (self.n, self.n):
                raise ShapeMismatch(f"generator {g} is not {self.n}x{self.n} over F_{self.p}")
            if not g.is_invertible():
                raise Singular(f"generator {g} is not invertible")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["p"]), int(data["n"]),
                   tuple(FpMatrix(m, int(data["p"]), ncols=int(data["n"]))
                         for m in data["generators"]))

    def to_dict(self):
        return {"p": self.p, "n": self.n, "generators": [g.tolist() for g in self.generators]}


@dataclass(frozen=True)
class Grassmannian:
    k: int

    def composition(self, n):
        return (self.k, n - self.k)

    def points(self, n, p):
        return _subspace_points(n, self.k, p)

    def act(self, g, x):
        return act_subspace(g, x, check=False)

    def subspaces(self, x):
        return (x,)

    def __str__(self):
        return f"G({self.k})"


@dataclass(frozen=True)
class FlagVariety:
    composition_: tuple

    def composition(self, n=None):
        return self.composition_

    def points(self, n, p):
        if sum(self.composition_) != n:
            raise ShapeMismatch(f"composition {self.composition_} does not sum to {n}")
        return _flag_points(self.composition_, p)

    def act(self, g, x):
        return act_flag(g, x, check=False)

    def subspaces(self, x):
        return x.chain

    def __str__(self):
        return "Fl(" + ",".join(map(str, self.composition_)) + ")"


@lru_cache(maxsize=64)
def _subspace_points(n, k, p):
    return tuple(enumerate_subspaces(n, k, p))


@lru_cache(maxsize=64)
def _flag_points(a, p):
    return tuple(enumerate_flags(a, p))


@dataclass
class OrbitReport:
    orbit_count: int
    orbit_sizes: tuple
    representatives: tuple
    labels: tuple = field(repr=False, default=())  # orbit index of each point

    @property
    def total(self):
        return sum(self.orbit_sizes)


@dataclass
class GroupClosure:
    p: int
    n: int
    array: np.ndarray  # (order, n, n), identity first

    @property
    def order(self):
        return len(self.array)

    @property
    def elements(self):
        return [FpMatrix.from_numpy(a, self.p) for a in self.array]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        target = g.to_numpy() if isinstance(g, FpMatrix) else np.asarray(g)
        return bool(np.any(np.all(self.array == target, axis=(1, 2))))


# ---------------------------------------------------------------------------
# closure


def _key_weights(n, p):
    if p ** (n * n) >= 2**62:
        return None
    return np.array([p**i for i in range(n * n)], dtype=np.int64)


def group_closure(spec, cap=DEFAULT_CAP):
    """All products of the generators, by breadth-first search.

    Raises CapExceeded as soon as more than `cap` distinct elements are known.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    n, p = spec.n, spec.p
    ident = np.eye(n, dtype=np.int64)[None]
    gens = [g.to_numpy() for g in spec.generators]
    weights = _key_weights(n, p)
    if weights is None:
        return _closure_slow(spec, cap)
    visited = (ident.reshape(1, -1) @ weights)
    chunks = [ident]
    frontier = ident
    total = 1
    while len(frontier) and gens:
        cand = np.concatenate([(frontier @ g) % p for g in gens])
        keys = cand.reshape(len(cand), -1) @ weights
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, visited, assume_unique=True)
        frontier = cand[idx[fresh]]
        total += len(frontier)
        if total > cap:
            raise CapExceeded(cap, total)
        visited = np.union1d(visited, keys[fresh])
        chunks.append(frontier)
    return GroupClosure(p, n, np.concatenate(chunks))


def _closure_slow(spec, cap):
    n, p = spec.n, spec.p
    ident = np.eye(n, dtype=np.int64)
    gens = [g.to_numpy() for g in spec.generators]
    seen = {ident.tobytes()}
    elements = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = (x @ g) % p
            b = y.tobytes()
            if b not in seen:
                seen.add(b)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(cap, len(elements))
                queue.append(y)
    return GroupClosure(p, n, np.stack(elements))


def _fixed_mask(closure, s):
    """Boolean vector: which group elements map subspace s onto itself."""
    k, n, p = s.dim, s.n, s.p
    if k in (0, n):
        return np.ones(closure.order, dtype=bool)
    basis = np.array(s.rows, dtype=np.int64)
    ann = np.array(nullspace_rows(s.rows, n, p), dtype=np.int64)
    out = np.empty(closure.order, dtype=bool)
    for start in range(0, closure.order, _CHUNK):
        block = closure.array[start:start + _CHUNK]
        t = (ann[None] @ block @ basis.T) % p
        out[start:start + _CHUNK] = ~t.any(axis=(1, 2))
    return out


def _point_mask(closure, space, x, cache):
    mask = None
    for s in space.subspaces(x):
        if s not in cache:
            cache[s] = _fixed_mask(closure, s)
        mask = cache[s] if mask is None else mask & cache[s]
    return mask


def stabilizer(closure, point, space=None):
    """Subgroup of the closure fixing `point` (a Subspace or Flag)."""
    if space is None:
        space = FlagVariety(point.composition) if isinstance(point, Flag) else Grassmannian(point.dim)
    mask = _point_mask(closure, space, point, {})
    return GroupClosure(closure.p, closure.n, closure.array[mask])


def fixed_point_counts(closure, space):
    """|X_g| for every element g of the closure, in closure order."""
    counts = np.zeros(closure.order, dtype=np.int64)
    cache = {}
    for x in space.points(closure.n, closure.p):
        counts += _point_mask(closure, space, x, cache)
    return counts


def burnside_count(spec, space, cap=DEFAULT_CAP, closure=None):
    if closure is None:
        closure = group_closure(spec, cap)
    total = int(fixed_point_counts(closure, space).sum())
    q, r = divmod(total, closure.order)
    if r:
        raise NonIntegerAverage(f"{total} fixed points over a group of order {closure.order}")
    return q


# ---------------------------------------------------------------------------
# orbit search


def _orbits(points, generators, act):
    index = {x: i for i, x in enumerate(points)}
    labels = [-1] * len(points)
    sizes = []
    reps = []
    for i, x in enumerate(points):
        if labels[i] >= 0:
            continue
        label = len(sizes)
        labels[i] = label
        queue = [x]
        for y in queue:
            for g in generators:
                z = act(g, y)
                j = index[z]
                if labels[j] < 0:
                    labels[j] = label
                    queue.append(z)
        sizes.append(len(queue))
        reps.append(x)  # points are sorted, so the first hit is the least
    return OrbitReport(len(sizes), tuple(sizes), tuple(reps), tuple(labels))


def orbit_count(spec, space):
    return _orbits(space.points(spec.n, spec.p), spec.generators, space.act)


def refinement_positions(fine, coarse):
    """Indices into the fine chain that give the coarse chain."""
    fine, coarse = tuple(fine), tuple(coarse)
    if sum(fine) != sum(coarse):
        raise NotARefinement(f"{fine} and {coarse} have different weights")
    fsums, total = [], 0
    for a in fine:
        total += a
        fsums.append(total)
    positions, ptr, total = [], 0, 0
    for c in coarse:
        total += c
        while ptr < len(fsums) and fsums[ptr] != total:
            ptr += 1
        if ptr == len(fsums):
            raise NotARefinement(f"{coarse} is not obtained from {fine} by merging adjacent terms")
        positions.append(ptr)
    return tuple(positions)


def coarsenings(a):
    """Every composition obtained from `a` by merging runs of adjacent terms."""
    a = tuple(a)
    r = len(a)
    for mask in range(1 << max(r - 1, 0)):
        out, cur = [], a[0] if a else 0
        for i in range(1, r):
            if mask >> (i - 1) & 1:
                cur += a[i]
            else:
                out.append(cur)
                cur = a[i]
        if a:
            out.append(cur)
        yield tuple(out)


def fibered_count(spec, fine, coarse):
    """N(G, Fl_fine) as a sum over coarse orbit representatives y of
    N(Stab_G(y), fibre over y).

    Stabilizer generators come from Schreier's lemma applied to the coarse
    orbit search, so no group closure is needed.
    """
    fine, coarse = tuple(fine), tuple(coarse)
    positions = refinement_positions(fine, coarse)
    n, p = spec.n, spec.p
    fibres = defaultdict(list)
    for f in _flag_points(fine, p):
        fibres[Flag(coarse, tuple(f.chain[i] for i in positions))].append(f)
    ident = FpMatrix.identity(n, p)
    seen = set()
    total = 0
    for y in _flag_points(coarse, p):
        if y in seen:
            continue
        transversal = {y: ident}
        queue = [y]
        schreier = set()
        for x in queue:
            tx = transversal[x]
            for s in spec.generators:
                z = act_flag(s, x, check=False)
                sx = mat_mul(s, tx)
                if z not in transversal:
                    transversal[z] = sx
                    queue.append(z)
                else:
                    h = mat_mul(mat_inv(transversal[z]), sx)
                    if h != ident:
                        schreier.add(h)
        seen.update(queue)
        gens = sorted(schreier, key=lambda m: m.rows)
        total += _orbits(fibres[y], gens, lambda g, x: act_flag(g, x, check=False)).orbit_count
    return total


# ---------------------------------------------------------------------------
# theorem checks


def verify_grassfin(spec, cap=DEFAULT_CAP):
    """Grassmannian orbit counts for every k, with duality and monotonicity checks."""
    n, p = spec.n, spec.p
    counts = [orbit_count(spec, Grassmannian(k)).orbit_count for k in range(n + 1)]
    try:
        closure = group_closure(spec, cap)
    except CapExceeded:
        closure = None
    burnside = None
    if closure is not None:
        burnside = [burnside_count(spec, Grassmannian(k), closure=closure) for k in range(n + 1)]
    fibered = [fibered_count(spec, (k, n - k), (n,)) for k in range(n + 1)]
    duality = [k for k in range(n + 1) if counts[k] != counts[n - k]]
    sizes = [q_binomial(n, k, p) for k in range(n + 1)]
    monotone = [(j, k) for j in range(n + 1) for k in range(n + 1)
                if sizes[j] <= sizes[k] and counts[j] > counts[k]]
    agreement = fibered == counts and (burnside is None or burnside == counts)
    return {
        "counts": counts,
        "burnside": burnside,
        "fibered": fibered,
        "group_order": None if closure is None else closure.order,
        "duality_violations": duality,
        "monotonicity_violations": monotone,
        "agreement": agreement,
        "passed": not duality and not monotone and agreement,
    }


def dominates(a, b):
    """P(a) >= P(b), decided through a raising-operator witness."""
    r = max(len(a), len(b))
    return raising_witness(pad(sort_to_partition(b), r), pad(sort_to_partition(a), r)) is not None


def verify_flag_theorems(spec, cap=DEFAULT_CAP, cross_check=True):
    """Permutation invariance and dominance monotonicity of flag orbit counts,
    optionally cross-checked by Burnside and fibered counting."""
    n = spec.n
    comps = list(compositions(n))
    counts = {a: orbit_count(spec, FlagVariety(a)).orbit_count for a in comps}
    perm = [(a, b) for a in comps for b in comps
            if sorted(a) == sorted(b) and counts[a] != counts[b]]
    monotone = []
    pairs = 0
    for a in comps:
        for b in comps:
            if dominates(a, b):
                pairs += 1
                # witness search and the prefix-sum test must agree
                assert dominance_geq(sort_to_partition(a), sort_to_partition(b))
                if counts[a] > counts[b]:
                    monotone.append((a, b))
    burnside = fibered = None
    disagreements = []
    closure = None
    if cross_check:
        try:
            closure = group_closure(spec, cap)
        except CapExceeded:
            closure = None
        if closure is not None:
            burnside = {a: burnside_count(spec, FlagVariety(a), closure=closure) for a in comps}
            disagreements += [("burnside", a) for a in comps if burnside[a] != counts[a]]
        fibered = {}
        for a in comps:
            for c in coarsenings(a):
                fibered[(a, c)] = fibered_count(spec, a, c)
                if fibered[(a, c)] != counts[a]:
                    disagreements.append(("fibered", a, c))
    return {
        "counts": {",".join(map(str, a)): v for a, v in counts.items()},
        "comparable_pairs": pairs,
        "permutation_violations": perm,
        "monotonicity_violations": monotone,
        "group_order": None if closure is None else closure.order,
        "burnside_checked": burnside is not None,
        "fibered_checked": 0 if fibered is None else len(fibered),
        "disagreements": disagreements,
        "passed": not perm and not monotone and not disagreements,
    }


# ---------------------------------------------------------------------------
# random specs


def random_invertible(rng, n, p, upper=False):
    while True:
        rows = [[rng.randrange(p) if (not upper or j >= i) else 0 for j in range(n)]
                for i in range(n)]
        if upper:
            for i in range(n):
                rows[i][i] = rng.randrange(1, p)
        m = FpMatrix(rows, p, ncols=n)
        if m.is_invertible():
            return m


def random_spec(rng, n, p, ngens, kind="mixed"):
    """A GroupSpec with `ngens` random generators.

    kind: "general" (uniform invertible), "borel" (upper triangular) or
    "mixed" (each generator picks one of the two at random). Triangular
    generators keep the group small enough for non-trivial orbit structure.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    gens = []
    for _ in range(ngens):
        upper = kind == "borel" or (kind == "mixed" and rng.random() < 0.5)
        gens.append(random_invertible(rng, n, p, upper=upper))
    return GroupSpec(p, n, tuple(gens))


def borel_spec(n, p):
    """Generators of the invertible upper triangular matrices of GL(n, F_p)."""
    gens = []
    for i in range(n - 1):
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[i][i + 1] = 1
        gens.append(FpMatrix(rows, p))
    if p > 2:
        z = next(x for x in range(2, p) if all(pow(x, (p - 1) // q, p) != 1
                                               for q in _prime_factors(p - 1)))
        for i in range(n):
            rows = [[int(a == b) for b in range(n)] for a in range(n)]
            rows[i][i] = z
            gens.append(FpMatrix(rows, p))
    return GroupSpec(p, n, tuple(gens))


def general_linear_spec(n, p):
    """Two-or-so generators of GL(n, F_p): the Borel generators plus a
    cyclic permutation matrix, which together with the Borel subgroup
    generates everything."""
    b = borel_spec(n, p)
    perm = FpMatrix([[int(j == (i + 1) % n) for j in range(n)] for i in range(n)], p)
    return GroupSpec(p, n, b.generators + (perm,))


def _prime_factors(m):
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out
