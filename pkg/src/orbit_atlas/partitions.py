"""Partitions and compositions of an integer.

Both are plain tuples of nonnegative ints. A partition is weakly decreasing and
may carry trailing zeros; a composition is any tuple. Raising operators use
1-based slot indices to match the usual R_i notation.
"""

from __future__ import annotations

from itertools import accumulate

from .errors import NegativePart, PreconditionViolated, WeightMismatch


def is_partition(t):
    return all(x >= 0 for x in t) and all(a >= b for a, b in zip(t, t[1:]))


def partitions(n, max_part=None):
    """Partitions of n with positive parts, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def compositions(n, length=None):
    """Compositions of n. Positive terms unless `length` is given, in which
    case all length-`length` tuples of naturals summing to n."""
    if length is None:
        if n == 0:
            yield ()
            return
        for first in range(1, n + 1):
            for rest in compositions(n - first):
                yield (first,) + rest
        return
    if length == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in compositions(n - first, length - 1):
            yield (first,) + rest


def pad(t, length):
    t = tuple(t)
    if len(t) > length:
        if any(t[length:]):
            raise ValueError(f"{t} has nonzero terms beyond length {length}")
        return t[:length]
    return t + (0,) * (length - len(t))


def strip(t):
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def sort_to_partition(a):
    """P(a): the decreasing rearrangement, zeros kept."""
    return tuple(sorted(a, reverse=True))


def dominance_geq(lhs, rhs):
    if sum(lhs) != sum(rhs):
        raise WeightMismatch(f"{lhs} and {rhs} have different weights")
    r = max(len(lhs), len(rhs))
    return all(x >= y for x, y in zip(accumulate(pad(lhs, r)), accumulate(pad(rhs, r))))


def conjugate(lam):
    """Transpose of the Young diagram, without trailing zeros."""
    top = max(lam, default=0)
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, top + 1))


def raising(i, lam):
    """R_i(λ) = P(λ_1, ..., λ_i + 1, λ_{i+1} - 1, ..., λ_r), 1-based i."""
    lam = tuple(lam)
    if not 1 <= i <= len(lam) - 1:
        raise PreconditionViolated(f"slot {i} out of range for {lam}")
    if lam[i] == 0:
        raise NegativePart(f"R_{i} would make slot {i + 1} of {lam} negative")
    t = list(lam)
    t[i - 1] += 1
    t[i] -= 1
    return sort_to_partition(t)


def replay(mu, exponents):
    """Apply R_1^{a_1}, then R_2^{a_2}, ... to mu."""
    cur = tuple(mu)
    for i, a in enumerate(exponents, start=1):
        for _ in range(a):
            cur = raising(i, cur)
    return cur


def raising_witness(mu, lam):
    """Exponents (a_1, ..., a_{r-1}) with R_{r-1}^{a_{r-1}} ... R_1^{a_1}(mu) = lam,
    or None when lam does not dominate mu.

    Exponents are not unique and have no known closed form, so this is a
    depth-first search. R_1 is applied first; any state not dominated by lam
    is pruned, which bounds each exponent since raising strictly climbs the
    dominance order. The result is replayed before being returned.
    """
    if sum(mu) != sum(lam):
        raise WeightMismatch(f"{mu} and {lam} have different weights")
    r = max(len(mu), len(lam), 1)
    mu, lam = pad(mu, r), pad(lam, r)
    if not is_partition(mu) or not is_partition(lam):
        raise ValueError("both arguments must be partitions")
    if not dominance_geq(lam, mu):
        return None

    def search(cur, i):
        if i == r:
            return () if cur == lam else None
        a = 0
        while True:
            found = search(cur, i + 1)
            if found is not None:
                return (a,) + found
            if cur[i] == 0:
                return None
            cur = raising(i, cur)
            if not dominance_geq(lam, cur):
                return None
            a += 1

    w = search(mu, 1)
    if w is not None and replay(mu, w) != lam:
        raise AssertionError(f"witness {w} does not replay {mu} -> {lam}")
    return w


# ---------------------------------------------------------------------------
# q-analogs and classical dimensions


def q_integer(m, q):
    return sum(q**i for i in range(m))


def q_factorial(m, q):
    out = 1
    for i in range(1, m + 1):
        out *= q_integer(i, q)
    return out


def q_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def q_multinomial(a, q):
    out = 1
    total = 0
    for x in a:
        total += x
        out *= q_binomial(total, x, q)
    return out


def grass_dim(k, n):
    return k * (n - k)


def flag_dim(a):
    n = sum(a)
    return (n * n - sum(x * x for x in a)) // 2
