"""Exact arithmetic over prime fields and the rationals.

Matrices store plain Python ints reduced mod p; ``FieldElement`` exists for
scalar work and for callers that want operator overloading on residues.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ModulusMismatch, NotPrime, ShapeMismatch, Singular, ZeroDiagonal

# Rational scalars are stdlib fractions: arbitrary precision, always reduced.
Rational = Fraction


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def primes(count):
    """The first `count` primes."""
    out = []
    c = 2
    while len(out) < count:
        if is_prime(c):
            out.append(c)
        c += 1
    return out


@lru_cache(maxsize=None)
def inverse_table(p):
    return tuple([0] + [pow(a, -1, p) for a in range(1, p)])


class FieldElement:
    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"F_{self.modulus} vs F_{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.modulus).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class PrimeField:
    """Context for arithmetic in F_p."""

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def __call__(self, value):
        return FieldElement(value, self.p)

    def elements(self):
        return [FieldElement(a, self.p) for a in range(self.p)]

    def matrix(self, rows):
        return FpMatrix(rows, self.p)

    def identity(self, n):
        return FpMatrix.identity(n, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def field_new(p):
    return PrimeField(p)


# ---------------------------------------------------------------------------
# row-reduction kernels on lists of int rows


def rref_rows(rows, p):
    """Reduced row echelon form of `rows` (list of int lists) over F_p.

    Returns (nonzero rows, pivot columns). The input is not modified.
    """
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    inv = inverse_table(p)
    ncols = len(m[0])
    pivots = []
    top = 0
    for c in range(ncols):
        piv = None
        for i in range(top, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        row = m[top]
        s = inv[row[c]]
        if s != 1:
            row = [x * s % p for x in row]
            m[top] = row
        for i in range(len(m)):
            if i != top:
                f = m[i][c]
                if f:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
        pivots.append(c)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rank_rows(rows, p):
    return len(rref_rows(rows, p)[1])


def reduce_vector(v, basis, pivots, p):
    """Residue of `v` modulo the row space of an RREF `basis`."""
    v = [x % p for x in v]
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def nullspace_rows(rows, ncols, p):
    """Basis (as rows) of {x : rows . x = 0}."""
    red, pivots = rref_rows(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(red, pivots):
            x[c] = -row[f] % p
        out.append(x)
    return out


# ---------------------------------------------------------------------------


class FpMatrix:
    """Dense immutable matrix over F_p."""

    __slots__ = ("rows", "p", "nrows", "ncols", "_hash")

    def __init__(self, rows, p, ncols=None):
        rows = tuple(tuple(int(x) % p for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.rows = rows
        self.p = p
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def identity(cls, n, p):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p, ncols=n)

    @classmethod
    def zeros(cls, nrows, ncols, p):
        return cls([[0] * ncols for _ in range(nrows)], p, ncols=ncols)

    @classmethod
    def from_numpy(cls, arr, p):
        return cls(arr.tolist(), p, ncols=arr.shape[1])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        return [x for r in self.rows for x in r]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_numpy(self):
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def tolist(self):
        return [list(r) for r in self.rows]

    @property
    def T(self):
        return FpMatrix(list(zip(*self.rows)) if self.nrows else [], self.p,
                        ncols=self.nrows)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        _check_same(self, other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return FpMatrix([[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)],
                        self.p, ncols=self.ncols)

    def __sub__(self, other):
        _check_same(self, other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return FpMatrix([[x - y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)],
                        self.p, ncols=self.ncols)

    def __pow__(self, e):
        if self.nrows != self.ncols:
            raise ShapeMismatch("power of a non-square matrix")
        if e < 0:
            return mat_inv(self) ** (-e)
        out = FpMatrix.identity(self.nrows, self.p)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def rank(self):
        return rank_rows(self.rows, self.p)

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self):
        return mat_inv(self)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"FpMatrix({[list(r) for r in self.rows]}, p={self.p})"


def _check_same(a, b):
    if a.p != b.p:
        raise ModulusMismatch(f"F_{a.p} vs F_{b.p}")


def mat_mul(a, b):
    _check_same(a, b)
    if a.ncols != b.nrows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    p = a.p
    cols = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    out = [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in a.rows]
    return FpMatrix(out, p, ncols=b.ncols)


def rref(m):
    """Return (reduced matrix with zero rows trimmed, rank, pivot columns)."""
    red, pivots = rref_rows(m.rows, m.p)
    return FpMatrix(red, m.p, ncols=m.ncols), len(pivots), pivots


def mat_inv(m):
    if m.nrows != m.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)]
    red, pivots = rref_rows(aug, m.p)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise Singular("matrix is not invertible")
    return FpMatrix([r[n:] for r in red], m.p, ncols=n)


def jordan_block(size, eigenvalue, p):
    return FpMatrix([[eigenvalue if i == j else int(j == i + 1) for j in range(size)]
                     for i in range(size)], p)


def jordan_matrix(partition, eigenvalue, p):
    """Block diagonal J_λ(z): one Jordan block per positive part."""
    sizes = [s for s in partition if s > 0]
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for s in sizes:
        for i in range(s):
            rows[off + i][off + i] = eigenvalue
            if i + 1 < s:
                rows[off + i][off + i + 1] = 1
        off += s
    return FpMatrix(rows, p, ncols=n)


def diagonal(values, p):
    n = len(values)
    return FpMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], p)


def unipotent_type(m):
    """Jordan type of a unipotent matrix, from ranks of powers of m - I."""
    n = m.nrows
    nil = m - FpMatrix.identity(n, m.p)
    ranks = [n]
    power = FpMatrix.identity(n, m.p)
    while ranks[-1] > 0:
        power = power @ nil
        r = power.rank()
        if r == ranks[-1]:
            raise ValueError("matrix is not unipotent")
        ranks.append(r)
    # number of blocks of size >= j is ranks[j-1] - ranks[j]
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j in range(len(at_least), 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exact)
    return tuple(parts)


# ---------------------------------------------------------------------------
# rationals


def rat_solve_upper_triangular(a, m):
    """Back substitution for an upper triangular system a.x = m over Q."""
    n = len(a)
    if len(m) != n or any(len(row) != n for row in a):
        raise ShapeMismatch("system is not square")
    a = [[Fraction(x) for x in row] for row in a]
    m = [Fraction(x) for x in m]
    for i in range(n):
        if a[i][i] == 0:
            raise ZeroDiagonal(f"diagonal entry {i} is zero")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = m[i] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    return x


def rat_rank(rows):
    """Rank of a rational matrix by exact elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
