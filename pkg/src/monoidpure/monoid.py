"""Affine monoids M = Z_{>=0} g_1 + ... + Z_{>=0} g_u inside Z^q_{>=0}.

Membership is an exact nonnegative-integer feasibility problem.  The solver
splits the generators into ``r = rank(M)`` linearly independent "tail"
generators and ``u - r`` free ones.  All but the last free coefficient are
enumerated depth-first (bounded by coordinatewise dominance); the last free
coefficient ranges over an interval intersected with an arithmetic progression
that is found in closed form, and the tail coefficients then follow by solving
a square system.  So a monoid with ``u = r + 1`` (the common desk-scale case)
answers membership in O(r^2) arithmetic regardless of the degree of the query.
"""

from __future__ import annotations

import functools
import math
import warnings
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    DimensionError,
    MonoidError,
    NegativeCoordinateError,
    RedundantGeneratorError,
    ZeroGeneratorError,
)
from .lattice import IntVector, Lattice, determinant, hnf_basis

MODULE_GENERATOR_BUDGET = 2_000_000
MEMO_CAPACITY = 200_000


@functools.total_ordering
class RatVector:
    """A point of (1/den) Z^q kept with its contextual denominator.

    Equality and hashing go through the reduced form, so ``(1/2)(2, 2)`` and
    ``(1, 1)`` compare equal while each still remembers its own denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[int], den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be a positive integer")
        self.num = tuple(int(x) for x in num)
        self.den = int(den)

    @classmethod
    def from_fractions(cls, coords: Iterable, den: int | None = None) -> RatVector:
        coords = [Fraction(c) for c in coords]
        lcm = 1
        for c in coords:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        if den is None:
            den = lcm
        elif den % lcm:
            raise ValueError(f"denominator {den} cannot represent {coords}")
        return cls([int(c * den) for c in coords], den)

    def reduced(self) -> RatVector:
        g = self.den
        for x in self.num:
            g = math.gcd(g, x)
        return RatVector([x // g for x in self.num], self.den // g)

    def with_denominator(self, den: int) -> RatVector:
        return RatVector.from_fractions(self.fractions(), den)

    def numerator_for(self, m: int) -> IntVector | None:
        """The integer vector m * self, or None when it is not integral."""
        out = []
        for x in self.num:
            q, r = divmod(x * m, self.den)
            if r:
                return None
            out.append(q)
        return tuple(out)

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_integral(self) -> bool:
        return all(x % self.den == 0 for x in self.num)

    def degree(self) -> Fraction:
        return Fraction(sum(self.num), self.den)

    def __len__(self):
        return len(self.num)

    def _key(self):
        r = self.reduced()
        return r.num, r.den

    def __eq__(self, other):
        if not isinstance(other, RatVector):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, RatVector):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other: RatVector) -> RatVector:
        d = self.den * other.den // math.gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return RatVector([x * a + y * b for x, y in zip(self.num, other.num)], d)

    def __sub__(self, other: RatVector) -> RatVector:
        return self + RatVector([-y for y in other.num], other.den)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.fractions()) + ")"

    def __repr__(self):
        return f"RatVector({list(self.num)}, {self.den})"


Vectorish = Union[RatVector, Sequence[int]]


def degree(v) -> Fraction | int:
    """Coordinate sum; the single grading used throughout."""
    if isinstance(v, RatVector):
        return v.degree()
    return sum(v)


class _Solver:
    """Nonnegative integer solutions of sum c_i g_i = v for a fixed list g."""

    def __init__(self, generators: Sequence[IntVector], dim: int):
        self.gens = [tuple(g) for g in generators]
        self.dim = dim
        order = sorted(range(len(self.gens)), key=lambda i: (sum(self.gens[i]), self.gens[i]))
        tail: list[int] = []
        for i in order:
            if hnf_basis([self.gens[j] for j in tail + [i]], dim).rank == len(tail) + 1:
                tail.append(i)
        self.tail = tail
        self.free = [i for i in reversed(order) if i not in tail]
        self.rank = len(tail)
        # pivot columns where the tail matrix restricts to an invertible square block
        cols: list[int] = []
        for j in range(dim):
            trial = cols + [j]
            block = [[self.gens[t][c] for c in trial] for t in tail]
            if hnf_basis(block, len(trial)).rank == len(trial):
                cols = trial
            if len(cols) == self.rank:
                break
        self.cols = cols
        square = [[self.gens[t][c] for c in cols] for t in tail]
        det = int(determinant(square))
        # adjugate as the integer matrix det * inverse (row-vector convention)
        adj = [[0] * self.rank for _ in range(self.rank)]
        for i in range(self.rank):
            for j in range(self.rank):
                minor = [row[:j] + row[j + 1:] for k, row in enumerate(square) if k != i]
                adj[j][i] = (-1) ** (i + j) * int(determinant(minor))
        if det < 0:
            det = -det
            adj = [[-x for x in row] for row in adj]
        self.det = det
        self.adj = adj  # square^{-1} = adj / det
        self.memo: dict = {}

    def _tail_numer(self, w: Sequence[int]) -> list[int]:
        # det * y, where y * square = w restricted to the pivot columns
        wc = [w[c] for c in self.cols]
        return [sum(self.adj[j][i] * wc[j] for j in range(self.rank)) for i in range(self.rank)]

    def _check_tail(self, ynum: Sequence[int], w: Sequence[int]) -> bool:
        for j in range(self.dim):
            if sum(ynum[i] * self.gens[t][j] for i, t in enumerate(self.tail)) != self.det * w[j]:
                return False
        return True

    def _solve_tail(self, w: Sequence[int]) -> list[int] | None:
        ynum = self._tail_numer(w)
        if any(y < 0 or y % self.det for y in ynum):
            return None
        if not self._check_tail(ynum, w):
            return None
        return [y // self.det for y in ynum]

    def _solve_last_free(self, f: int, w: Sequence[int]) -> tuple[int, list[int]] | None:
        """Find c >= 0 and tail coefficients with c*g_f + tail = w."""
        gf = self.gens[f]
        y0 = self._tail_numer(w)
        if not self._check_tail(y0, w):
            return None  # w is off the span (g_f is always on it)
        gnum = self._tail_numer(gf)
        D = self.det
        lo, hi = 0, None
        for j in range(self.dim):
            if gf[j]:
                b = w[j] // gf[j]
                hi = b if hi is None else min(hi, b)
        if hi is None:
            hi = 0
        residue, modulus = 0, 1
        for a, g in zip(y0, gnum):
            # need a - c*g >= 0 and a - c*g = 0 mod D
            if g > 0:
                hi = min(hi, a // g)
            elif g < 0:
                lo = max(lo, _ceil_div(a, g))
            elif a < 0:
                return None
            sol = _solve_linear_congruence(g, a, D)
            if sol is None:
                return None
            combined = _crt(residue, modulus, *sol)
            if combined is None:
                return None
            residue, modulus = combined
            if lo > hi:
                return None
        if lo > hi:
            return None
        c = lo + (residue - lo) % modulus
        if c > hi:
            return None
        return c, [(a - c * g) // D for a, g in zip(y0, gnum)]

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        v = tuple(v)
        if len(v) != self.dim:
            raise DimensionError(f"vector {v} is not of dimension {self.dim}")
        if any(x < 0 for x in v):
            return None
        key = (0, v)
        if key in self.memo:
            return self.memo[key]
        coeffs = self._search(0, v)
        if coeffs is None:
            result = None
        else:
            full = [0] * len(self.gens)
            for i, c in coeffs.items():
                full[i] = c
            result = tuple(full)
        self._remember(key, result)
        return result

    def _remember(self, key, value):
        if len(self.memo) >= MEMO_CAPACITY:
            self.memo.clear()
        self.memo[key] = value

    def _search(self, depth: int, w: tuple[int, ...]) -> dict[int, int] | None:
        nfree = len(self.free)
        if nfree == 0:
            y = self._solve_tail(w)
            return None if y is None else dict(zip(self.tail, y))
        if depth == nfree - 1:
            res = self._solve_last_free(self.free[depth], w)
            if res is None:
                return None
            c, y = res
            out = dict(zip(self.tail, y))
            out[self.free[depth]] = c
            return out
        f = self.free[depth]
        g = self.gens[f]
        cmax = min(w[j] // g[j] for j in range(self.dim) if g[j])
        for c in range(cmax, -1, -1):
            rest = tuple(w[j] - c * g[j] for j in range(self.dim))
            k = (depth + 1, rest)
            if k in self.memo and self.memo[k] is None:
                continue
            sub = self._search(depth + 1, rest)
            if sub is not None:
                sub[f] = c
                return sub
            self._remember(k, None)
        return None


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _solve_linear_congruence(g: int, a: int, n: int) -> tuple[int, int] | None:
    """Solutions c of c*g = a (mod n) as (residue, modulus)."""
    d = math.gcd(g, n)
    if a % d:
        return None
    n2 = n // d
    if n2 == 1:
        return 0, 1
    return (a // d) * pow(g // d, -1, n2) % n2, n2


def _crt(r1: int, n1: int, r2: int, n2: int) -> tuple[int, int] | None:
    g = math.gcd(n1, n2)
    if (r2 - r1) % g:
        return None
    lcm = n1 // g * n2
    if n1 // g == 1:
        return r2 % lcm, lcm
    t = ((r2 - r1) // g) * pow(n1 // g, -1, n2 // g) % (n2 // g)
    return (r1 + n1 * t) % lcm, lcm


class WindowElement(NamedTuple):
    vector: IntVector
    coefficients: tuple[int, ...]


class AffineMonoid:
    """Validated affine monoid with cached lattice data.

    Construction rejects zero generators, negative coordinates and
    non-minimal generating sets (the error carries the witness combination).
    """

    def __init__(self, generators: Iterable[Sequence[int]], name: str | None = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise MonoidError("a monoid needs at least one generator")
        q = len(gens[0])
        if q == 0:
            raise MonoidError("ambient dimension must be positive")
        for i, g in enumerate(gens):
            if len(g) != q:
                raise DimensionError(f"generator {i} {g} is not of dimension {q}")
            if any(x < 0 for x in g):
                raise NegativeCoordinateError(f"generator {i} {g} has a negative coordinate")
            if not any(g):
                raise ZeroGeneratorError(f"generator {i} is zero")
        for i, g in enumerate(gens):
            others = [j for j in range(len(gens)) if j != i]
            sol = _Solver([gens[j] for j in others], q).solve(g)
            if sol is not None:
                witness = {others[k]: c for k, c in enumerate(sol) if c}
                combo = " + ".join(f"{c}*{gens[j]}" for j, c in sorted(witness.items()))
                raise RedundantGeneratorError(i, witness, f"generator {i} {g} = {combo}")
        self.name = name
        self.ambient_dim = q
        self.generators: tuple[IntVector, ...] = tuple(gens)
        self.lattice: Lattice = hnf_basis(gens, q)
        self.rank = self.lattice.rank
        self.degrees = tuple(sum(g) for g in gens)
        self._solver = _Solver(gens, q)

    @property
    def u(self) -> int:
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, AffineMonoid) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"AffineMonoid({[list(g) for g in self.generators]})"

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """A witness coefficient vector for v in M, or None."""
        return self._solver.solve(v)

    def member(self, v: Vectorish) -> bool:
        if isinstance(v, RatVector):
            if len(v) != self.ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in dimension {self.ambient_dim}")
            if not v.is_integral():
                return False
            v = tuple(x // v.den for x in v.num)
        return self.solve(v) is not None

    __contains__ = member

    def combine(self, coefficients: Sequence[int]) -> IntVector:
        out = [0] * self.ambient_dim
        for c, g in zip(coefficients, self.generators):
            if c:
                for j, x in enumerate(g):
                    out[j] += c * x
        return tuple(out)


def validate(generators: Iterable[Sequence[int]], name: str | None = None) -> AffineMonoid:
    return AffineMonoid(generators, name=name)


def member(M: AffineMonoid, v: Vectorish) -> bool:
    return M.member(v)


def module_generator_numerators(M: AffineMonoid, m: int, budget: int = MODULE_GENERATOR_BUDGET) -> list[IntVector]:
    """Sorted distinct vectors r_1 g_1 + ... + r_u g_u with 0 <= r_i < m."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m ** M.u > budget:
        warnings.warn(
            f"enumerating {m}^{M.u} = {m ** M.u} residue vectors exceeds the budget {budget}",
            RuntimeWarning,
            stacklevel=2,
        )
    points = {tuple([0] * M.ambient_dim)}
    for g in M.generators:
        step = set()
        for p in points:
            for r in range(m):
                step.add(tuple(x + r * y for x, y in zip(p, g)))
        points = step
    return sorted(points)


def module_generators(M: AffineMonoid, m: int, budget: int = MODULE_GENERATOR_BUDGET) -> list[RatVector]:
    """The residue set D_m; every element of (1/m)M is d + sigma, d in D_m, sigma in M."""
    return sorted(RatVector(b, m) for b in module_generator_numerators(M, m, budget))


def graded_window(M: AffineMonoid, degree_bound) -> list[WindowElement]:
    """Every element of M of degree <= degree_bound, with one witness each.

    Ordered by (degree, vector).
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    bound = Fraction(degree_bound)
    zero = tuple([0] * M.ambient_dim)
    found = {zero: tuple([0] * M.u)}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            coeffs = found[v]
            for i, g in enumerate(M.generators):
                w = tuple(a + b for a, b in zip(v, g))
                if w in found or sum(w) > bound:
                    continue
                c = list(coeffs)
                c[i] += 1
                found[w] = tuple(c)
                nxt.append(w)
        frontier = nxt
    return [WindowElement(v, found[v]) for v in sorted(found, key=lambda v: (sum(v), v))]


def lattice_points_of_simplex(lower: Sequence[int], total: int) -> Iterable[IntVector]:
    """Integer z with z >= lower coordinatewise and sum(z) <= total."""
    slack = total - sum(lower)
    if slack < 0:
        return
    for extra in _compositions(len(lower), slack):
        yield tuple(a + b for a, b in zip(lower, extra))


def _compositions(q: int, slack: int):
    if q == 1:
        for s in range(slack + 1):
            yield (s,)
        return
    for first in range(slack + 1):
        for rest in _compositions(q - 1, slack - first):
            yield (first,) + rest


__all__ = [
    "AffineMonoid",
    "RatVector",
    "WindowElement",
    "degree",
    "graded_window",
    "member",
    "module_generators",
    "module_generator_numerators",
    "validate",
]
