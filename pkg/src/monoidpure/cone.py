"""The rational cone C(M): facets, faces, Hilbert bases, polytopes, volume.

Facet normals are found by dual enumeration: every facet of C(M) is spanned
by ``rank - 1`` linearly independent generators, and for each such subset the
normal line inside span(M) is one integer kernel computation away.  Normals
are stored as primitive integer vectors of span(M) together with a scale
``g`` = the generator of their value group on ZM, so ``<x, n>/g`` is the
ZM-primitive functional.

Polytopes are H-described inside the real span of a carrier lattice and are
handled in the coordinates of that lattice, where the relative volume is just
the Euclidean one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InputError, Undecided
from .lattice import (
    IntVector,
    Lattice,
    determinant,
    hnf_basis,
    integer_left_kernel,
    sublattice_orthogonal_to,
)
from .monoid import AffineMonoid, lattice_points_of_simplex

HILBERT_BUDGET = 200_000


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


@dataclass(frozen=True)
class Cone:
    """C(M) = {x : <x, n_i> >= 0 for all i}, irredundant."""

    ambient_dim: int
    normals: tuple[IntVector, ...]
    scales: tuple[int, ...]
    # for each normal, the generator indices on its facet
    facet_generators: tuple[frozenset, ...]

    @property
    def s(self) -> int:
        return len(self.normals)

    def value(self, i: int, x: Sequence) -> Fraction:
        """ZM-primitive functional of facet ``i`` evaluated at x."""
        return Fraction(_dot(x, self.normals[i])) / self.scales[i]

    def contains(self, x: Sequence) -> bool:
        return all(_dot(x, n) >= 0 for n in self.normals)


@dataclass(frozen=True)
class FaceDescriptor:
    tight_normals: frozenset
    generator_indices: frozenset
    dim: int

    def sort_key(self):
        return (self.dim, sorted(self.generator_indices))


def supporting_hyperplanes(M: AffineMonoid) -> Cone:
    r = M.rank
    B = M.lattice.basis
    facets: dict[frozenset, IntVector] = {}
    for subset in itertools.combinations(range(M.u), r - 1):
        chosen = [M.generators[i] for i in subset]
        if chosen and hnf_basis(chosen, M.ambient_dim).rank < r - 1:
            continue
        products = [[_dot(b, g) for g in chosen] for b in B]
        ker = integer_left_kernel(products, len(chosen))
        if len(ker) != 1:
            continue
        n = _primitive(M.lattice.combine(ker[0]))
        values = [_dot(g, n) for g in M.generators]
        if all(v <= 0 for v in values):
            n = tuple(-x for x in n)
            values = [-v for v in values]
        elif not all(v >= 0 for v in values):
            continue
        tight = frozenset(i for i, v in enumerate(values) if v == 0)
        facets.setdefault(tight, n)
    items = sorted(facets.items(), key=lambda kv: (sorted(kv[0]), kv[1]))
    normals, scales = [], []
    for _, n in items:
        g = 0
        for b in B:
            g = math.gcd(g, _dot(b, n))
        normals.append(n)
        scales.append(g)
    return Cone(M.ambient_dim, tuple(normals), tuple(scales), tuple(t for t, _ in items))


def _face_from_generators(M: AffineMonoid, cone: Cone, gens: frozenset) -> FaceDescriptor:
    tight = frozenset(i for i, fg in enumerate(cone.facet_generators) if gens <= fg)
    closure = frozenset(
        j for j in range(M.u) if all(j in cone.facet_generators[i] for i in tight)
    )
    dim = hnf_basis([M.generators[j] for j in closure], M.ambient_dim).rank
    return FaceDescriptor(tight, closure, dim)


def face_lattice(M: AffineMonoid, cone: Cone | None = None) -> list[FaceDescriptor]:
    """All faces of C(M), from the full cone down to {0}, in (dim, generators) order."""
    cone = cone or supporting_hyperplanes(M)
    top = _face_from_generators(M, cone, frozenset(range(M.u)))
    seen = {top.generator_indices: top}
    queue = [top]
    while queue:
        face = queue.pop()
        for i in range(cone.s):
            if i in face.tight_normals:
                continue
            sub = _face_from_generators(
                M, cone, face.generator_indices & cone.facet_generators[i]
            )
            if sub.generator_indices not in seen:
                seen[sub.generator_indices] = sub
                queue.append(sub)
    return sorted(seen.values(), key=FaceDescriptor.sort_key)


def minimal_face(M: AffineMonoid, cone: Cone, points: Iterable[Sequence]) -> FaceDescriptor:
    """Smallest face of C(M) containing every point (points must lie in C(M))."""
    points = list(points)
    tight = frozenset(
        i for i, n in enumerate(cone.normals) if all(_dot(p, n) == 0 for p in points)
    )
    gens = frozenset(j for j in range(M.u) if all(j in cone.facet_generators[i] for i in tight))
    return _face_from_generators(M, cone, gens)


def full_face(M: AffineMonoid, cone: Cone) -> FaceDescriptor:
    return _face_from_generators(M, cone, frozenset(range(M.u)))


def face_lattice_of_generators(M: AffineMonoid, face: FaceDescriptor) -> Lattice:
    """Z(M cap F), spanned by the generators lying on F."""
    return hnf_basis([M.generators[j] for j in sorted(face.generator_indices)], M.ambient_dim)


def ambient_face_lattice(M: AffineMonoid, cone: Cone, face: FaceDescriptor) -> Lattice:
    """ZM cap QF."""
    return sublattice_orthogonal_to(M.lattice, [cone.normals[i] for i in sorted(face.tight_normals)])


def hilbert_basis_saturation(
    M: AffineMonoid,
    face: FaceDescriptor | None = None,
    *,
    cone: Cone | None = None,
    lattice: str = "ambient",
    budget: int = HILBERT_BUDGET,
) -> list[IntVector]:
    """Hilbert basis of L cap F for a face F of C(M).

    ``lattice="ambient"`` uses L = ZM cap QF; ``lattice="face"`` uses
    L = Z(M cap F), the face monoid's own group.  For the full cone the two
    agree.  Candidates are enumerated up to the degree bound
    sum of the ``dim F`` largest extreme-ray degrees (an irreducible element
    is either a ray generator or lies in a half-open parallelepiped of
    ``dim F`` independent rays); raises ``Undecided`` above ``budget``.
    """
    cone = cone or supporting_hyperplanes(M)
    face = face or full_face(M, cone)
    if face.dim == 0:
        return []
    if lattice == "ambient":
        L = ambient_face_lattice(M, cone, face)
    elif lattice == "face":
        L = face_lattice_of_generators(M, face)
    else:
        raise ValueError(f"unknown lattice choice {lattice!r}")
    ray_degrees = []
    for f in face_lattice(M, cone):
        if f.dim == 1 and f.generator_indices <= face.generator_indices:
            ray_degrees.append(min(M.degrees[j] for j in f.generator_indices))
    ray_degrees.sort(reverse=True)
    bound = sum(ray_degrees[: face.dim])
    support = sorted({c for j in face.generator_indices for c, x in enumerate(M.generators[j]) if x})
    k = len(support)
    if math.comb(bound + k, k) > budget:
        raise Undecided(
            f"Hilbert basis search needs {math.comb(bound + k, k)} candidates (budget {budget})",
            budget="hilbert_budget",
        )
    tight = [cone.normals[i] for i in face.tight_normals]
    others = [cone.normals[i] for i in range(cone.s) if i not in face.tight_normals]
    members = []
    for small in lattice_points_of_simplex([0] * k, bound):
        if not any(small):
            continue
        x = [0] * M.ambient_dim
        for c, val in zip(support, small):
            x[c] = val
        x = tuple(x)
        if any(_dot(x, n) for n in tight) or any(_dot(x, n) < 0 for n in others):
            continue
        if x in L:
            members.append(x)
    members.sort(key=lambda v: (sum(v), v))
    basis: list[IntVector] = []
    for x in members:
        if not any(
            all(_dot(d, n) >= 0 for n in others)
            for d in (tuple(a - b for a, b in zip(x, h)) for h in basis)
        ):
            basis.append(x)
    return basis


# ---------------------------------------------------------------- polytopes


@dataclass(frozen=True)
class HalfSpace:
    """<x, normal> <= bound, or < bound when strict."""

    normal: IntVector
    bound: Fraction
    strict: bool = False

    def satisfied(self, x: Sequence) -> bool:
        v = _dot(x, self.normal)
        return v < self.bound if self.strict else v <= self.bound


@dataclass(frozen=True)
class Polytope:
    """Bounded H-polytope inside the real span of ``lattice``."""

    constraints: tuple[HalfSpace, ...]
    lattice: Lattice
    _vertices: list = field(default=None, compare=False, repr=False, hash=False)

    def contains(self, x: Sequence) -> bool:
        if not self.lattice.in_span(x):
            return False
        return all(h.satisfied(x) for h in self.constraints)

    def closure(self) -> Polytope:
        return Polytope(tuple(HalfSpace(h.normal, h.bound) for h in self.constraints), self.lattice)

    def _in_coordinates(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        # <y B, n> = y . (B n)
        out = []
        for h in self.constraints:
            out.append((tuple(Fraction(_dot(b, h.normal)) for b in self.lattice.basis), Fraction(h.bound)))
        return out

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertices of the closure, in lattice coordinates."""
        if self._vertices is None:
            object.__setattr__(self, "_vertices", _vertices(self._in_coordinates(), self.lattice.rank))
        return self._vertices

    def vertices_ambient(self) -> list[tuple[Fraction, ...]]:
        return [self.lattice.combine(v) for v in self.vertices()]

    def is_bounded(self) -> bool:
        return _is_bounded([a for a, _ in self._in_coordinates()], self.lattice.rank)

    def maximize(self, objective: Sequence) -> Fraction:
        """max of <x, objective> over the closure."""
        verts = self.vertices_ambient()
        if not verts:
            raise InputError("empty polytope")
        return max(Fraction(_dot(v, objective)) for v in verts)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def _vertices(cons, r: int) -> list[tuple[Fraction, ...]]:
    if r == 0:
        return [()] if all(b >= 0 for _, b in cons) else []
    found = set()
    for subset in itertools.combinations(range(len(cons)), r):
        y = _solve([list(cons[i][0]) for i in subset], [cons[i][1] for i in subset])
        if y is None:
            continue
        if all(_dot(a, y) <= b for a, b in cons):
            found.add(tuple(y))
    return sorted(found)


def _is_bounded(normals: list[Sequence[Fraction]], r: int) -> bool:
    if r == 0:
        return True
    rows = [[Fraction(x) for x in a] for a in normals]
    if _rank(rows) < r:
        return False
    # an unbounded direction would be an extreme ray of {y : a . y <= 0}
    for subset in itertools.combinations(range(len(rows)), r - 1):
        sub = [rows[i] for i in subset]
        if _rank(sub) < r - 1:
            continue
        d = _null_vector(sub, r)
        for sign in (1, -1):
            dd = [sign * x for x in d]
            if all(_dot(a, dd) <= 0 for a in rows):
                return False
    return True


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _null_vector(rows: list[list[Fraction]], r: int) -> list[Fraction]:
    """A nonzero vector orthogonal to r - 1 independent rows in Q^r."""
    for j in range(r):
        trial = rows + [[Fraction(int(i == j)) for i in range(r)]]
        if _rank(trial) == r:
            return _solve(trial, [Fraction(0)] * (r - 1) + [Fraction(1)])
    raise AssertionError("rows are not independent")


def _affine_dim(points: list[Sequence[Fraction]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _simplices(verts, tight_sets, vertex_ids: frozenset, dim: int, cache: dict) -> list[tuple[int, ...]]:
    """Triangulate a face (given by its vertex ids) by coning from its least vertex."""
    key = vertex_ids
    if key in cache:
        return cache[key]
    ids = sorted(vertex_ids)
    if dim == 0:
        out = [(ids[0],)]
    else:
        apex = ids[0]
        facets = set()
        all_cons = set().union(*(tight_sets[i] for i in ids))
        for c in sorted(all_cons):
            sub = frozenset(i for i in ids if c in tight_sets[i])
            if apex in sub or sub == vertex_ids or len(sub) < dim:
                continue
            if _affine_dim([verts[i] for i in sorted(sub)]) == dim - 1:
                facets.add(sub)
        out = []
        for f in sorted(facets, key=sorted):
            for s in _simplices(verts, tight_sets, f, dim - 1, cache):
                out.append((apex,) + s)
    cache[key] = out
    return out


def triangulate(P: Polytope) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Full-dimensional simplices (in lattice coordinates) covering the closure of P."""
    r = P.lattice.rank
    verts = P.vertices()
    if not verts or _affine_dim(verts) < r:
        return []
    if r == 0:
        return [tuple(verts)]
    cons = P._in_coordinates()
    tight = [frozenset(k for k, (a, b) in enumerate(cons) if _dot(a, v) == b) for v in verts]
    simplices = _simplices(verts, tight, frozenset(range(len(verts))), r, {})
    return [tuple(verts[i] for i in s) for s in simplices]


def relative_volume(P: Polytope, L: Lattice | None = None) -> Fraction:
    """Volume of P normalized so a fundamental domain of L has volume one.

    Strict inequalities only change a measure-zero boundary and are ignored.
    """
    if not P.is_bounded():
        raise InputError("polytope is unbounded")
    if L is not None and L != P.lattice:
        if L.ambient_dim != P.lattice.ambient_dim:
            raise DimensionError("lattices live in different ambient dimensions")
        if not all(L.in_span(b) for b in P.lattice.basis):
            raise InputError("polytope does not lie in the span of the lattice")
        if P.lattice.rank < L.rank:
            return Fraction(0)
        # same span: change coordinates to an L-basis
        P = Polytope(P.constraints, L)
    r = P.lattice.rank
    if r == 0:
        return Fraction(1) if P.vertices() else Fraction(0)
    total = Fraction(0)
    for simplex in triangulate(P):
        base = simplex[0]
        total += abs(Fraction(determinant([[a - b for a, b in zip(v, base)] for v in simplex[1:]])))
    return total / math.factorial(r)


def box_polytope(functionals: Sequence[tuple[IntVector, int]], upper: Sequence, lattice: Lattice,
                 strict_upper: bool = False) -> Polytope:
    """{x : 0 <= <x, n>/g <= upper} for the given (normal, scale) pairs."""
    cons = []
    for (n, g), ub in zip(functionals, upper):
        cons.append(HalfSpace(tuple(-x for x in n), Fraction(0)))
        cons.append(HalfSpace(tuple(n), Fraction(ub) * g, strict_upper))
    return Polytope(tuple(cons), lattice)


def delta_region(M: AffineMonoid, cone: Cone | None = None) -> Polytope:
    """The half-open box {0 <= <x, n_i>/g_i < 1} of the ZM-primitive facet functionals.

    Meaningful for normal M (caller certifies); bounded because C(M) is pointed.
    """
    cone = cone or supporting_hyperplanes(M)
    P = box_polytope(list(zip(cone.normals, cone.scales)), [1] * cone.s, M.lattice, strict_upper=True)
    if not P.is_bounded():
        raise InputError("the region is unbounded (cone is not pointed)")
    return P
