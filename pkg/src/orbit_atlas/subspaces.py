"""Subspaces and flags of F_p^n in canonical form, and the GL action on them.

Conventions: a subspace is the row space of its basis, stored in reduced row
echelon form. A matrix g acts on column vectors, so on a basis row v it acts
as v -> v g^T. Enumerations are sorted lexicographically by RREF entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import AmbientMismatch, ShapeMismatch, Singular, TooLarge, ModulusMismatch
from .field import FpMatrix, rank_rows, reduce_vector, rref_rows, unipotent_type
from .partitions import q_binomial, q_multinomial

MAX_POINTS = 10**7


@dataclass(frozen=True)
class Subspace:
    n: int
    p: int
    rows: tuple  # RREF basis, one tuple per row

    @property
    def dim(self):
        return len(self.rows)

    @property
    def ambient_dim(self):
        return self.n

    @property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    @property
    def basis(self):
        return FpMatrix(self.rows, self.p, ncols=self.n)

    def contains_vector(self, v):
        return not any(reduce_vector(v, self.rows, self.pivots, self.p))

    def issubspace(self, other):
        return all(other.contains_vector(r) for r in self.rows)

    def __lt__(self, other):
        return (self.dim, self.rows) < (other.dim, other.rows)

    def __repr__(self):
        return f"Subspace(n={self.n}, p={self.p}, rows={[list(r) for r in self.rows]})"


def _make(n, p, rows):
    red, _ = rref_rows(rows, p)
    return Subspace(n, p, tuple(tuple(r) for r in red))


def zero_subspace(n, p):
    return Subspace(n, p, ())


def full_space(n, p):
    return Subspace(n, p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def subspace_from_spanning_set(vectors, n, p):
    vectors = [list(v) for v in vectors]
    if any(len(v) != n for v in vectors):
        raise ShapeMismatch(f"vectors must have length {n}")
    return _make(n, p, vectors)


def _check_size(count):
    if count > MAX_POINTS:
        raise TooLarge(f"{count} points exceed the bound {MAX_POINTS}")


def iter_rref(n, k, p):
    """Yield every k x n RREF matrix of rank k over F_p (as row tuples)."""
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        slots = [(i, j) for i, c in enumerate(pivots)
                 for j in range(c + 1, n) if j not in pivset]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), x in zip(slots, values):
                rows[i][j] = x
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(n, k, p):
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    _check_size(q_binomial(n, k, p))
    return sorted(Subspace(n, p, rows) for rows in iter_rref(n, k, p))


@dataclass(frozen=True)
class Flag:
    composition: tuple
    chain: tuple  # Subspace V_1 ⊆ ... ⊆ V_r = V

    @property
    def key(self):
        return tuple(s.rows for s in self.chain)

    def __lt__(self, other):
        return self.key < other.key

    def is_valid(self):
        prev = None
        total = 0
        for a, s in zip(self.composition, self.chain):
            total += a
            if s.dim != total:
                return False
            if prev is not None and not prev.issubspace(s):
                return False
            prev = s
        return len(self.chain) == len(self.composition)

    def __repr__(self):
        return f"Flag({self.composition}, dims={[s.dim for s in self.chain]})"


@lru_cache(maxsize=1 << 16)
def _extensions(base, step, p):
    """All subspaces W' ⊇ base with dim W' = dim base + step."""
    n = base.n
    piv = set(base.pivots)
    free = [j for j in range(n) if j not in piv]
    out = []
    for urows in iter_rref(len(free), step, p):
        lifted = []
        for u in urows:
            v = [0] * n
            for j, x in zip(free, u):
                v[j] = x
            lifted.append(v)
        out.append(_make(n, p, [list(r) for r in base.rows] + lifted))
    return tuple(out)


def enumerate_flags(composition, p):
    composition = tuple(composition)
    if any(a < 0 for a in composition):
        raise ValueError("composition terms must be nonnegative")
    n = sum(composition)
    _check_size(q_multinomial(composition, p))
    chains = [()]
    current = [zero_subspace(n, p)]
    for a in composition:
        new_chains, new_current = [], []
        for chain, base in zip(chains, current):
            for ext in _extensions(base, a, p):
                new_chains.append(chain + (ext,))
                new_current.append(ext)
        chains, current = new_chains, new_current
    chains.sort(key=lambda c: tuple(s.rows for s in c))
    return [Flag(composition, c) for c in chains]


def intersect_dim(a, b):
    if a.n != b.n or a.p != b.p:
        raise AmbientMismatch("subspaces live in different spaces")
    return a.dim + b.dim - rank_rows(list(a.rows) + list(b.rows), a.p)


def intersection(a, b):
    """a ∩ b via the Zassenhaus trick."""
    if a.n != b.n or a.p != b.p:
        raise AmbientMismatch("subspaces live in different spaces")
    n = a.n
    rows = [list(r) + list(r) for r in a.rows] + [list(r) + [0] * n for r in b.rows]
    red, _ = rref_rows(rows, a.p)
    return _make(n, a.p, [r[n:] for r in red if not any(r[:n])])


def span_sum(a, b):
    if a.n != b.n or a.p != b.p:
        raise AmbientMismatch("subspaces live in different spaces")
    return _make(a.n, a.p, [list(r) for r in a.rows + b.rows])


# ---------------------------------------------------------------------------
# the action


@lru_cache(maxsize=4096)
def _invertible(g):
    return g.is_invertible()


def _check_action(g, n, p):
    if g.p != p:
        raise ModulusMismatch(f"F_{g.p} matrix acting on F_{p}^{n}")
    if g.shape != (n, n):
        raise ShapeMismatch(f"{g.shape} matrix acting on F_{p}^{n}")
    if not _invertible(g):
        raise Singular("acting matrix is not invertible")


def _image_rows(g, rows, p):
    return [[sum(x * y for x, y in zip(grow, v)) % p for grow in g.rows] for v in rows]


def act_subspace(g, s, check=True):
    if check:
        _check_action(g, s.n, s.p)
    return _make(s.n, s.p, _image_rows(g, s.rows, s.p))


def act_flag(g, f, check=True):
    return Flag(f.composition, tuple(act_subspace(g, s, check) for s in f.chain))


def is_fixed(g, s):
    """True iff g maps s onto itself."""
    piv = s.pivots
    for img in _image_rows(g, s.rows, s.p):
        if any(reduce_vector(img, s.rows, piv, s.p)):
            return False
    return True


def fixed_subspaces(g, k):
    n = g.nrows
    _check_action(g, n, g.p)
    return [s for s in enumerate_subspaces(n, k, g.p) if is_fixed(g, s)]


def fixed_flags(g, composition):
    n = g.nrows
    _check_action(g, n, g.p)
    memo = {}

    def fixed(s):
        if s not in memo:
            memo[s] = is_fixed(g, s)
        return memo[s]

    return [f for f in enumerate_flags(composition, g.p) if all(fixed(s) for s in f.chain)]


# ---------------------------------------------------------------------------
# counting fixed flags without listing them


def quotient_map(g, s):
    """Matrix of the map induced by g on F_p^n / s, on the basis of non-pivot e_j."""
    p = s.p
    piv = s.pivots
    free = [j for j in range(s.n) if j not in set(piv)]
    cols = []
    for f in free:
        image = [g.rows[i][f] for i in range(s.n)]
        red = reduce_vector(image, s.rows, piv, p)
        cols.append([red[j] for j in free])
    m = len(free)
    return FpMatrix([[cols[c][r] for c in range(m)] for r in range(m)], p, ncols=m)


def _is_unipotent(g):
    n = g.nrows
    nil = g - FpMatrix.identity(n, g.p)
    return (nil ** n).rank() == 0 if n else True


def count_fixed_flags(g, composition):
    """Number of flags of the given shape fixed by g.

    Recurses over the first step of the flag: each g-stable first subspace W
    is found by brute-force filtering, then the flags of V/W fixed by the
    induced map are counted. For unipotent g the quotient problem depends only
    on the Jordan type, which is used as a memo key.
    """
    _check_action(g, g.nrows, g.p)
    memo = {}
    stable_cache = {}

    def stable(h, k, key):
        ck = (key, k)
        if key is not None and ck in stable_cache:
            return stable_cache[ck]
        n = h.nrows
        _check_size(q_binomial(n, k, h.p))
        out = [Subspace(n, h.p, rows) for rows in iter_rref(n, k, h.p)]
        out = [s for s in out if is_fixed(h, s)]
        if key is not None:
            stable_cache[ck] = out
        return out

    def go(h, comp):
        if len(comp) <= 1:
            return 1
        key = unipotent_type(h) if _is_unipotent(h) else None
        if key is not None and (key, comp) in memo:
            return memo[(key, comp)]
        total = 0
        for w in stable(h, comp[0], key):
            total += go(quotient_map(h, w), comp[1:])
        if key is not None:
            memo[(key, comp)] = total
        return total

    return go(g, tuple(composition))
