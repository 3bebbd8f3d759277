"""Fixed-locus dimensions of flag varieties from conjugacy-class skeletons.

A skeleton is a multiset of Jordan-type partitions, one per distinct
eigenvalue; the eigenvalues themselves are not recorded. Dimensions are
computed after replacing each unipotent-type block by the semisimple type of
its conjugate partition. For a semisimple element with eigenspace
multiplicities mu, a fixed flag is a direct sum of flags in the eigenspaces,
so the fixed locus is a disjoint union of products of flag varieties indexed
by integer matrices with row sums a and column sums mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import PreconditionViolated, TooLarge, WeightMismatch
from .partitions import (compositions, conjugate, dominance_geq, flag_dim, grass_dim,
                         partitions, sort_to_partition, strip)

MAX_SKELETON_WEIGHT = 8


@dataclass(frozen=True)
class Skeleton:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(strip(b) for b in self.blocks)
        for b in blocks:
            if not b or any(x <= 0 for x in b) or list(b) != sorted(b, reverse=True):
                raise ValueError(f"invalid block {b}")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, reverse=True)))

    @property
    def weight(self):
        return sum(sum(b) for b in self.blocks)

    @property
    def is_semisimple(self):
        return all(max(b) == 1 for b in self.blocks)

    def multiplicities(self):
        """Eigenspace dimensions of the semisimple reduction, decreasing."""
        return tuple(sorted((len(b) for b in semisimplify(self).blocks), reverse=True))

    def __str__(self):
        return " ".join(".".join(map(str, b)) for b in self.blocks)


def skeleton_of_diagonalizable(multiplicities):
    if any(m <= 0 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    return Skeleton(tuple((1,) * m for m in multiplicities))


def unipotent_skeleton(lam):
    return Skeleton((strip(lam),))


def parse_skeleton(text):
    """'2.2 3.1' -> blocks (2,2) and (3,1)."""
    blocks = text.split() if isinstance(text, str) else list(text)
    return Skeleton(tuple(sort_to_partition(int(x) for x in b.split(".")) for b in blocks))


def semisimplify(s):
    out = []
    for b in s.blocks:
        out.extend((1,) * m for m in conjugate(b))
    return Skeleton(tuple(out))


@lru_cache(maxsize=None)
def _min_square_sum(rows, cols):
    """min of sum b_ij^2 over nonnegative integer b with given margins."""
    if not cols:
        return 0 if not any(rows) else None
    first, rest = cols[0], cols[1:]
    best = None
    for column in _bounded_splits(first, rows):
        remaining = tuple(r - x for r, x in zip(rows, column))
        sub = _min_square_sum(remaining, rest)
        if sub is None:
            continue
        val = sub + sum(x * x for x in column)
        if best is None or val < best:
            best = val
    return best


def _bounded_splits(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    rest_cap = sum(bounds[1:])
    for x in range(max(0, total - rest_cap), min(total, bounds[0]) + 1):
        for tail in _bounded_splits(total - x, bounds[1:]):
            yield (x,) + tail


def fixed_flag_dim(s, a):
    """dim (Fl_a(V))_g for any g with skeleton s."""
    a = tuple(a)
    if sum(a) != s.weight:
        raise WeightMismatch(f"composition {a} does not match skeleton weight {s.weight}")
    mu = s.multiplicities()
    squares = _min_square_sum(a, mu)
    return (sum(m * m for m in mu) - squares) // 2


def fixed_grass_dim(s, k):
    return fixed_flag_dim(s, (k, s.weight - k))


def verify_dual(s):
    n = s.weight
    dims = [fixed_grass_dim(s, k) for k in range(n + 1)]
    return all(dims[j] <= dims[k]
               for j in range(n + 1) for k in range(n + 1)
               if grass_dim(j, n) <= grass_dim(k, n))


def verify_perm_invariance(s, a):
    base = fixed_flag_dim(s, a)
    return all(fixed_flag_dim(s, b) == base for b in set(permutations(a)))


def verify_merge_split(s, a, i, b, c):
    """Replacing (a_i, a_{i+1}) by (b, c) with b + c = a_i + a_{i+1} and
    bc <= a_i a_{i+1} cannot raise the fixed-locus dimension. i is 1-based."""
    a = tuple(a)
    if not 1 <= i <= len(a) - 1:
        raise PreconditionViolated(f"index {i} out of range for {a}")
    x, y = a[i - 1], a[i]
    if b < 0 or c < 0 or b + c != x + y or b * c > x * y:
        raise PreconditionViolated(f"(b, c) = ({b}, {c}) is not admissible for ({x}, {y})")
    refined = a[:i - 1] + (b, c) + a[i + 1:]
    return fixed_flag_dim(s, refined) <= fixed_flag_dim(s, a)


def enumerate_skeletons(n):
    """All skeletons of weight n: multisets of positive partitions summing to n."""
    if n < 1:
        raise ValueError("n must be positive")
    items = [lam for m in range(n, 0, -1) for lam in partitions(m)]
    items.sort(reverse=True)
    out = []

    def go(start, remaining, chosen):
        if remaining == 0:
            out.append(Skeleton(tuple(chosen)))
            return
        for idx in range(start, len(items)):
            lam = items[idx]
            if sum(lam) <= remaining:
                go(idx, remaining - sum(lam), chosen + [lam])

    go(0, n, [])
    return sorted(set(out), key=lambda s: s.blocks, reverse=True)


def admissible_splits(a):
    """Every (i, b, c) accepted by verify_merge_split for composition a."""
    for i in range(1, len(a)):
        x, y = a[i - 1], a[i]
        for b in range(x + y + 1):
            c = x + y - b
            if b * c <= x * y:
                yield i, b, c


def verify_all_skeletons(n, max_len=None):
    """Run the dual, permutation, merge-split and dominance checks on every
    skeleton of weight n. Returns a dict of check name -> list of failures."""
    if n > MAX_SKELETON_WEIGHT:
        raise TooLarge(f"skeleton checks are limited to n <= {MAX_SKELETON_WEIGHT}")
    comps = [c for c in compositions(n) if max_len is None or len(c) <= max_len]
    failures = {"dual": [], "perm_invariance": [], "merge_split": [], "dominance": []}
    for s in enumerate_skeletons(n):
        if not verify_dual(s):
            failures["dual"].append(str(s))
        for a in comps:
            if not verify_perm_invariance(s, a):
                failures["perm_invariance"].append((str(s), a))
            for i, b, c in admissible_splits(a):
                if not verify_merge_split(s, a, i, b, c):
                    failures["merge_split"].append((str(s), a, i, b, c))
        dims = {a: fixed_flag_dim(s, a) for a in compositions(n)}
        for a, da in dims.items():
            for b, db in dims.items():
                if dominance_geq(sort_to_partition(a), sort_to_partition(b)) and da > db:
                    failures["dominance"].append((str(s), a, b))
    return failures
