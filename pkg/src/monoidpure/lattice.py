"""Exact integer lattice arithmetic.

Lattices are subgroups of Z^q stored by a canonical row-style Hermite normal
form: pivots strictly move right, pivots are positive, and entries above a
pivot lie in ``[0, pivot)``.  Two generating sets span the same lattice iff
their HNF bases are identical, which is what makes ``Lattice`` hashable.

Everything is plain Python ``int`` (arbitrary precision); nothing here touches
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContainmentError, DimensionError

IntVector = tuple[int, ...]

INFINITE = math.inf


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError(f"row {r} does not have {cols} entries")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[IntVector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )


def _row_reduce(rows: list[list[int]], ncols: int, reduce_above: bool = True) -> int:
    """In-place unimodular row reduction on the first ``ncols`` columns.

    Rows may be longer than ``ncols`` (augmented columns are carried along but
    never pivoted on).  Returns the rank; rows ``[rank:]`` are zero on the
    first ``ncols`` columns afterwards.
    """
    r = 0
    n = len(rows)
    for col in range(ncols):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if rows[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[piv] = rows[piv], rows[r]
            p = rows[r]
            clean = True
            for i in range(r + 1, n):
                a = rows[i][col]
                if a:
                    f = a // p[col]
                    if f:
                        ri = rows[i]
                        for j in range(len(ri)):
                            ri[j] -= f * p[j]
                    if rows[i][col]:
                        clean = False
            if clean:
                break
        if rows[r][col] == 0:
            continue
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
        if reduce_above:
            p = rows[r]
            for i in range(r):
                f = rows[i][col] // p[col]
                if f:
                    ri = rows[i]
                    for j in range(len(ri)):
                        ri[j] -= f * p[j]
        r += 1
    return r


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> list[IntVector]:
    """Canonical row HNF of the integer span of ``rows`` (zero rows dropped)."""
    work = [list(map(int, v)) for v in rows]
    rank = _row_reduce(work, ncols)
    return [tuple(v) for v in work[:rank]]


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^q given by its canonical HNF basis."""

    ambient_dim: int
    basis: tuple[IntVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def basis_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.basis, cols=self.ambient_dim)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(b) if x) for b in self.basis]

    def coordinates(self, v: Sequence[int]) -> IntVector | None:
        """Integer coordinates of ``v`` in the basis, or None if v is not in L."""
        _check_dim(self, v)
        rest = list(v)
        coords = []
        for b, p in zip(self.basis, self.pivots()):
            c, rem = divmod(rest[p], b[p])
            if rem:
                return None
            coords.append(c)
            if c:
                for j in range(p, len(rest)):
                    rest[j] -= c * b[j]
        if any(rest):
            return None
        return tuple(coords)

    def rational_coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Rational coordinates of ``v`` in the basis, or None if v is off the span."""
        _check_dim(self, v)
        rest = [Fraction(x) for x in v]
        coords = []
        for b, p in zip(self.basis, self.pivots()):
            c = rest[p] / b[p]
            coords.append(c)
            if c:
                for j in range(p, len(rest)):
                    rest[j] -= c * b[j]
        if any(rest):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def in_span(self, v: Sequence) -> bool:
        return self.rational_coordinates(v) is not None

    def combine(self, coords: Sequence) -> tuple:
        """The vector with the given coordinates (ints or Fractions)."""
        out = [0] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                for j, x in enumerate(b):
                    out[j] += c * x
        return tuple(out)


def _check_dim(L: Lattice, v: Sequence) -> None:
    if len(v) != L.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {L.ambient_dim}")


def hnf_basis(vectors: Iterable[Sequence[int]], ambient_dim: int | None = None) -> Lattice:
    """The lattice spanned by ``vectors``.

    >>> hnf_basis([(2, 0), (1, 1), (0, 1)]).basis
    ((1, 0), (0, 1))
    """
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise DimensionError("ambient_dim is required for an empty generating set")
        ambient_dim = len(vectors[0])
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector {v} is not of dimension {ambient_dim}")
    return Lattice(ambient_dim, tuple(hermite_normal_form(vectors, ambient_dim)))


def lattice_membership(L: Lattice, v: Sequence[int]) -> bool:
    return v in L


def integer_left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """A Z-basis (HNF) of {y in Z^k : sum_i y_i * rows[i] = 0}."""
    k = len(rows)
    work = [list(map(int, r)) + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    rank = _row_reduce(work, ncols, reduce_above=False)
    kernel = [tuple(r[ncols:]) for r in work[rank:]]
    return hermite_normal_form(kernel, k)


def sublattice_orthogonal_to(L: Lattice, normals: Sequence[Sequence[int]]) -> Lattice:
    """{z in L : <z, n> = 0 for every n in normals}."""
    if not normals:
        return L
    products = [[sum(b[j] * n[j] for j in range(L.ambient_dim)) for n in normals] for b in L.basis]
    ker = integer_left_kernel(products, len(normals))
    return hnf_basis([L.combine(y) for y in ker], L.ambient_dim)


def is_sublattice(L_big: Lattice, L_small: Lattice) -> bool:
    return L_big.ambient_dim == L_small.ambient_dim and all(b in L_big for b in L_small.basis)


def _relative_coordinates(L_big: Lattice, L_small: Lattice) -> list[IntVector]:
    if L_big.ambient_dim != L_small.ambient_dim:
        raise DimensionError("lattices live in different ambient dimensions")
    rows = []
    for b in L_small.basis:
        c = L_big.coordinates(b)
        if c is None:
            raise ContainmentError(f"basis vector {b} of the small lattice is not in the big one")
        rows.append(c)
    return rows


def determinant(rows: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def lattice_index(L_big: Lattice, L_small: Lattice) -> int | float:
    """[L_big : L_small]; ``INFINITE`` when the ranks differ."""
    coords = _relative_coordinates(L_big, L_small)
    if L_small.rank < L_big.rank:
        return INFINITE
    return abs(determinant(coords))


def elementary_divisors(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form, in divisibility order."""
    current = [tuple(r) for r in rows]
    width = ncols
    while True:
        h = hermite_normal_form(current, width)
        if not h:
            return []
        t = [tuple(h[i][j] for i in range(len(h))) for j in range(width)]
        width = len(h)
        current = hermite_normal_form(t, width)
        if all(current[i][j] == 0 for i in range(len(current)) for j in range(width) if i != j):
            diag = [abs(current[i][i]) for i in range(len(current))]
            break
    # diag(a, b) ~ diag(gcd, lcm) enforces the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                g = math.gcd(a, b)
                if a != g:
                    diag[i], diag[j] = g, a * b // g
                    changed = True
    return diag


def prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.add(n)
    return out


def torsion_primes_of_quotient(L_big: Lattice, L_small: Lattice) -> set[int]:
    """Primes p such that L_big / L_small has p-torsion.

    The free part of a rank-deficient quotient is ignored.
    """
    coords = _relative_coordinates(L_big, L_small)
    primes: set[int] = set()
    for d in elementary_divisors(coords, L_big.rank):
        primes |= prime_factors(d)
    return primes
