"""Pure translations and the invariants built on them.

A translation ``alpha + M`` with ``m * alpha`` in M sits purely inside
``(1/m)M`` exactly when every lattice point of ``(1/m)M - alpha`` lies in M.
``V_m`` collects those alpha.  Everything downstream (A(M), seminormality,
the pure prime face, threshold, ratio and signature) is read off V_m.

Two independent routes decide a single translation:

* ``bounded``: search integers z in ZM \\ M with ``z + alpha >= 0``,
  ``|z + alpha| <= (m-1)/m * sum |gamma_i|`` and ``m z + m alpha`` in M.  A
  violation ``beta - alpha`` can always be pushed down to ``d - alpha`` with
  d a module generator of (1/m)M, and those satisfy exactly these bounds.
* ``generators``: run over all module generators d of (1/m)M and check
  ``d - alpha`` directly.  Exponential in the number of generators; kept as
  the cross-check.

``compute_Vm`` walks V_m from 0 by adding ``gamma_i / m`` one step at a time.
This reaches every element because any split ``alpha = beta + eta`` inside
(1/m)M keeps both parts in V_m.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cone import (
    Cone,
    FaceDescriptor,
    HalfSpace,
    Polytope,
    ambient_face_lattice,
    delta_region,
    face_lattice,
    face_lattice_of_generators,
    hilbert_basis_saturation,
    minimal_face,
    relative_volume,
    supporting_hyperplanes,
)
from .errors import PreconditionError, Undecided
from .lattice import IntVector, torsion_primes_of_quotient
from .monoid import (
    AffineMonoid,
    RatVector,
    graded_window,
    lattice_points_of_simplex,
    module_generator_numerators,
)

NEG_INF = -math.inf
UNION_TERM_BUDGET = 50_000


def _as_ratvector(alpha, dim: int) -> RatVector:
    if isinstance(alpha, RatVector):
        v = alpha
    else:
        v = RatVector.from_fractions([Fraction(x) for x in alpha])
    if len(v) != dim:
        raise PreconditionError(f"alpha has {len(v)} coordinates, monoid lives in dimension {dim}")
    return v


def _scaled(M: AffineMonoid, m: int, alpha) -> tuple[RatVector, IntVector]:
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    alpha = _as_ratvector(alpha, M.ambient_dim)
    a = alpha.numerator_for(m)
    if a is None or not M.member(a):
        raise PreconditionError(f"{alpha} is not in (1/{m})M")
    return alpha, a


@functools.lru_cache(maxsize=64)
def _numerators(M: AffineMonoid, m: int) -> tuple[IntVector, ...]:
    return tuple(module_generator_numerators(M, m))


def purity_violation(M: AffineMonoid, m: int, alpha) -> IntVector | None:
    """Smallest-degree z in ZM \\ M with z + alpha in (1/m)M, or None when pure."""
    alpha, a = _scaled(M, m, alpha)
    fr = alpha.fractions()
    bound = Fraction((m - 1) * sum(M.degrees), m) - sum(fr)
    lower = [math.ceil(-x) for x in fr]
    for z in lattice_points_of_simplex(lower, math.floor(bound)):
        if z not in M.lattice:
            continue
        if not M.member(tuple(m * x + y for x, y in zip(z, a))):
            continue
        if not M.member(z):
            return z
    return None


def is_pure_translation(M: AffineMonoid, m: int, alpha, method: str = "bounded") -> bool:
    """Whether ``alpha + M`` is a pure submodule of ``(1/m)M``."""
    if method == "bounded":
        return purity_violation(M, m, alpha) is None
    if method == "generators":
        alpha, a = _scaled(M, m, alpha)
        for d in _numerators(M, m):
            diff = [x - y for x, y in zip(d, a)]
            if any(x % m for x in diff):
                continue
            z = tuple(x // m for x in diff)
            if z in M.lattice and not M.member(z):
                return False
        return True
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class PureTranslationSet:
    m: int
    elements: tuple[RatVector, ...]

    @property
    def max_degree(self) -> Fraction | None:
        return max((a.degree() for a in self.elements), default=None)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, alpha) -> bool:
        return alpha in self.elements

    def numerators(self) -> list[IntVector]:
        """The set m V_m as integer vectors."""
        return [a.numerator_for(self.m) for a in self.elements]


def is_in_A(M: AffineMonoid, m: int) -> bool:
    """Whether (1/m)M cap ZM = M."""
    if m < 2:
        raise PreconditionError(f"A(M) only contains integers m > 1, got {m}")
    return is_pure_translation(M, m, (0,) * M.ambient_dim)


def compute_Vm(M: AffineMonoid, m: int, method: str = "bfs") -> PureTranslationSet:
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    if method not in ("bfs", "candidates"):
        raise ValueError(f"unknown method {method!r}")
    return _compute_Vm(M, m, method)


@functools.lru_cache(maxsize=256)
def _compute_Vm(M: AffineMonoid, m: int, method: str) -> PureTranslationSet:
    zero = (0,) * M.ambient_dim
    if m > 1 and not is_in_A(M, m):
        return PureTranslationSet(m, ())
    if method == "candidates":
        found = [
            d for d in _numerators(M, m)
            if is_pure_translation(M, m, RatVector(d, m))
        ]
    else:
        seen = {zero}
        frontier = [zero]
        found = [zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in M.generators:
                    b = tuple(x + y for x, y in zip(a, g))
                    if b in seen:
                        continue
                    seen.add(b)
                    if is_pure_translation(M, m, RatVector(b, m)):
                        found.append(b)
                        nxt.append(b)
            frontier = nxt
    return PureTranslationSet(m, tuple(sorted(RatVector(a, m) for a in found)))


# ---------------------------------------------------------- seminormality


@dataclass(frozen=True)
class SeminormalityCertificate:
    verdict: str
    witness_prime: int
    bad_primes: frozenset
    detail: IntVector | None = None

    def __bool__(self):
        return self.verdict == "seminormal"


def bad_primes(M: AffineMonoid, cone: Cone | None = None) -> set[int]:
    """Primes dividing the torsion of (ZM cap QF) / Z(M cap F) for some face F."""
    cone = cone or supporting_hyperplanes(M)
    primes: set[int] = set()
    for face in face_lattice(M, cone):
        if face.dim == 0:
            continue
        primes |= torsion_primes_of_quotient(
            ambient_face_lattice(M, cone, face), face_lattice_of_generators(M, face)
        )
    return primes


def _next_prime_outside(excluded: set[int]) -> int:
    p = 2
    while True:
        if p not in excluded and all(p % d for d in range(2, math.isqrt(p) + 1)):
            return p
        p += 1


def decide_seminormal(M: AffineMonoid) -> SeminormalityCertificate:
    bad = bad_primes(M)
    p = _next_prime_outside(bad)
    z = purity_violation(M, p, (0,) * M.ambient_dim)
    if z is None:
        return SeminormalityCertificate("seminormal", p, frozenset(bad))
    return SeminormalityCertificate("not_seminormal", p, frozenset(bad), z)


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    witness: IntVector | None = None
    hilbert_basis: tuple[IntVector, ...] = ()

    def __bool__(self):
        return self.normal


def decide_normal(M: AffineMonoid, budget: int | None = None) -> NormalityVerdict:
    """M is normal iff every Hilbert basis element of C(M) cap ZM lies in M.

    Raises ``Undecided`` if the Hilbert basis search exceeds its budget.
    """
    kwargs = {} if budget is None else {"budget": budget}
    hb = tuple(hilbert_basis_saturation(M, **kwargs))
    for h in hb:
        if not M.member(h):
            return NormalityVerdict(False, h, hb)
    return NormalityVerdict(True, None, hb)


# -------------------------------------------------------- pure prime face


@dataclass(frozen=True)
class PurePrimeFace:
    face: FaceDescriptor | None
    mpdim: float | int
    evidence: tuple[tuple[int, tuple[IntVector, ...]], ...]
    verified: bool
    witness_prime: int | None = None
    unwitnessed: tuple[IntVector, ...] = ()

    @property
    def seminormal(self) -> bool:
        return self.face is not None


def _witnessed(M: AffineMonoid, h: IntVector, m_budget: int, known: set) -> int | None:
    """Some m <= m_budget with h in m V_m, or None."""
    if h in known:
        return 0
    for m in range(2, m_budget + 1):
        if is_in_A(M, m) and is_pure_translation(M, m, RatVector(h, m)):
            return m
    return None


def pure_prime_face(
    M: AffineMonoid, m_budget: int = 99, t_budget: int = 6, hilbert_budget: int | None = None
) -> PurePrimeFace:
    """The face F_M with M \\ P(M) = M cap F_M.

    Elements of m V_m for m = w, w^2, ... (w the seminormality witness prime)
    are accumulated until the smallest face containing them repeats.  The
    candidate is then verified by locating every Hilbert basis element of
    M cap F in some m V_m with m <= m_budget.
    """
    cert = decide_seminormal(M)
    if not cert:
        return PurePrimeFace(None, NEG_INF, (), True)
    w = cert.witness_prime
    cone = supporting_hyperplanes(M)
    evidence = []
    union: set[IntVector] = set()
    previous = None
    face = None
    for t in range(1, max(t_budget, 1) + 1):
        V = compute_Vm(M, w ** t)
        nums = tuple(V.numerators())
        evidence.append((w ** t, nums))
        union.update(nums)
        face = minimal_face(M, cone, union)
        if previous is not None and face == previous:
            break
        previous = face
    missing = []
    if face.dim > 0:
        kwargs = {} if hilbert_budget is None else {"budget": hilbert_budget}
        for h in hilbert_basis_saturation(M, face, cone=cone, lattice="face", **kwargs):
            if _witnessed(M, h, m_budget, union) is None:
                missing.append(h)
    return PurePrimeFace(face, face.dim, tuple(evidence), not missing, w, tuple(missing))


# ------------------------------------------------------------- threshold


@dataclass(frozen=True)
class ThresholdResult:
    """mpt(M): exact, a lower bound with its trace, or -inf."""

    value: Fraction | float
    exact: bool
    trace: tuple[tuple[int, Fraction], ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.value != NEG_INF


def pure_threshold(M: AffineMonoid, t_budget: int = 6, hilbert_budget: int | None = None) -> ThresholdResult:
    cert = decide_seminormal(M)
    if not cert:
        return ThresholdResult(NEG_INF, True)
    if decide_normal(M, hilbert_budget):
        return ThresholdResult(delta_region(M).maximize([1] * M.ambient_dim), True)
    w = cert.witness_prime
    trace = []
    for t in range(1, t_budget + 1):
        m = w ** t
        trace.append((m, compute_Vm(M, m).max_degree))
    return ThresholdResult(trace[-1][1], False, tuple(trace))


# ----------------------------------------------------------- B_m regions


def _box_union_volume(uppers: list[tuple[Fraction, ...]], volume_of) -> Fraction:
    """Volume of a union of boxes {0 <= f_j <= c_j} by inclusion-exclusion.

    Boxes dominated by another box are dropped first; intersections of boxes
    are boxes with the componentwise minimum, so equal terms merge.
    """
    uppers = sorted(set(uppers), reverse=True)
    kept = []
    for c in uppers:
        if not any(all(x <= y for x, y in zip(c, k)) for k in kept):
            kept.append(c)
    terms: dict[tuple, int] = {}
    for c in kept:
        new = {c: 1}
        for d, coef in terms.items():
            key = tuple(min(x, y) for x, y in zip(c, d))
            new[key] = new.get(key, 0) - coef
        for key, coef in new.items():
            terms[key] = terms.get(key, 0) + coef
        terms = {k: v for k, v in terms.items() if v}
        if len(terms) > UNION_TERM_BUDGET:
            raise Undecided(
                f"union volume needs more than {UNION_TERM_BUDGET} inclusion-exclusion terms",
                budget="union_terms",
            )
    return sum((coef * volume_of(c) for c, coef in terms.items()), Fraction(0))


@dataclass
class BRegion:
    """B_m = union over alpha in V_m of (alpha - F) cap F, inside span(F)."""

    m: int
    face: FaceDescriptor
    normals: tuple[IntVector, ...]
    pieces: list[tuple[RatVector, tuple[Fraction, ...]]]
    lattice: object
    _volume: Fraction | None = field(default=None, repr=False)

    def polytope(self, upper: Sequence[Fraction]) -> Polytope:
        cons = []
        for n, c in zip(self.normals, upper):
            cons.append(HalfSpace(tuple(-x for x in n), Fraction(0)))
            cons.append(HalfSpace(n, Fraction(c)))
        return Polytope(tuple(cons), self.lattice)

    def polytopes(self) -> list[Polytope]:
        return [self.polytope(c) for _, c in self.pieces]

    def contains(self, x: Sequence) -> bool:
        return any(P.contains(x) for P in self.polytopes())

    def union_volume(self) -> Fraction:
        """Volume of the union relative to Z(M cap F)."""
        if self._volume is None:
            if not self.pieces:
                self._volume = Fraction(0)
            elif self.lattice.rank == 0:
                self._volume = Fraction(1)
            else:
                self._volume = _box_union_volume(
                    [c for _, c in self.pieces], lambda c: relative_volume(self.polytope(c))
                )
        return self._volume


def b_region(M: AffineMonoid, m: int, face: FaceDescriptor | None = None) -> BRegion:
    """The pieces {x in F : alpha - x in F} for alpha in V_m (default F = F_M)."""
    if m > 1 and not is_in_A(M, m):
        raise PreconditionError(f"{m} is not in A(M)")
    cone = supporting_hyperplanes(M)
    if face is None:
        face = pure_prime_face(M).face
        if face is None:
            raise PreconditionError("monoid is not seminormal")
    normals = tuple(cone.normals[i] for i in range(cone.s) if i not in face.tight_normals)
    tight = [cone.normals[i] for i in face.tight_normals]
    L = face_lattice_of_generators(M, face)
    pieces = []
    for alpha in compute_Vm(M, m):
        fr = alpha.fractions()
        if any(sum(a * b for a, b in zip(fr, n)) for n in tight):
            continue
        pieces.append((alpha, tuple(sum((a * b for a, b in zip(fr, n)), Fraction(0)) for n in normals)))
    return BRegion(m, face, normals, pieces, L)


# ------------------------------------------------------ ratio, signature


@dataclass(frozen=True)
class RatioResult:
    mpr: Fraction | None
    mpr_exact: bool
    mps: Fraction
    count_trace: tuple[tuple[int, int, Fraction], ...] = ()
    volume_trace: tuple[tuple[int, Fraction], ...] = ()


def pure_ratio_signature(
    M: AffineMonoid, t_budget: int = 6, hilbert_budget: int | None = None
) -> RatioResult:
    """(mpr, mps): exact volumes for normal M, two traces otherwise.

    For non-normal M the counts |V_m| / m^mpdim estimate mpr, and the exact
    volume of B_m at the last m bounds vol(B(M)) from below.
    """
    cert = decide_seminormal(M)
    if not cert:
        return RatioResult(None, True, Fraction(0))
    if decide_normal(M, hilbert_budget):
        v = relative_volume(delta_region(M).closure(), M.lattice)
        return RatioResult(v, True, v)
    face_info = pure_prime_face(M, t_budget=t_budget, hilbert_budget=hilbert_budget)
    s = face_info.mpdim
    w = cert.witness_prime
    counts = []
    for t in range(1, t_budget + 1):
        m = w ** t
        n = len(compute_Vm(M, m))
        counts.append((m, n, Fraction(n, m ** s)))
    m_last = counts[-1][0]
    vol = b_region(M, m_last, face_info.face).union_volume()
    return RatioResult(counts[-1][2], False, Fraction(0), tuple(counts), ((m_last, vol),))


# ---------------------------------------------------------- free monoids


def kunz_free_test(M: AffineMonoid, hilbert_budget: int | None = None) -> bool:
    """Whether M is free, i.e. isomorphic to Z^r_{>=0}.

    Structural: exactly rank-many generators (then they are a basis of ZM) and
    M normal.  Cross-checked against |V_m| = m^rank at the smallest m in A(M).
    """
    structural = M.u == M.rank and bool(decide_normal(M, hilbert_budget))
    m = next((k for k in range(2, 50) if is_in_A(M, k)), None)
    if m is not None:
        counted = len(compute_Vm(M, m)) == m ** M.rank
        if counted != structural:
            raise AssertionError(
                f"free-monoid test disagrees with |V_{m}| count on {M.generators}"
            )
    return structural


# ------------------------------------------------------------ ring bounds


@dataclass(frozen=True)
class RingBounds:
    """Arithmetic bounds on the monoid ring; None means no information."""

    a_i_upper: Fraction | None
    reg_upper: Fraction | None
    beta_upper: Fraction | None
    depth_lower: int | None
    estimate: bool

    @property
    def reg_upper_int(self) -> int | None:
        return None if self.reg_upper is None else math.floor(self.reg_upper)

    @property
    def a_i_upper_int(self) -> int | None:
        return None if self.a_i_upper is None else math.floor(self.a_i_upper)

    @property
    def beta_upper_int(self) -> int | None:
        return None if self.beta_upper is None else math.floor(self.beta_upper)


def ring_bounds_report(
    M: AffineMonoid,
    threshold: ThresholdResult | None = None,
    face: PurePrimeFace | None = None,
) -> RingBounds:
    """a_i <= -mpt, reg <= rank - mpt, beta(I) <= rank + sum(|g|-1) - mpt - 1, depth >= mpdim.

    A lower-bound estimate of mpt still yields valid (weaker) upper bounds.
    """
    threshold = threshold or pure_threshold(M)
    face = face or pure_prime_face(M)
    estimate = not threshold.exact or not face.verified
    if not threshold.is_finite:
        return RingBounds(None, None, None, None, estimate)
    mpt = Fraction(threshold.value)
    return RingBounds(
        -mpt,
        M.rank - mpt,
        M.rank + sum(d - 1 for d in M.degrees) - mpt - 1,
        int(face.mpdim),
        estimate,
    )


# ---------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleResult:
    """``pure`` is a refutation when False; when True it only covers the window."""

    pure: bool
    conclusive: bool
    witness: IntVector | None = None
    gamma: IntVector | None = None

    def __bool__(self):
        return self.pure


@functools.lru_cache(maxsize=64)
def _window_set(M: AffineMonoid, bound: int) -> tuple[frozenset, tuple[IntVector, ...]]:
    els = tuple(e.vector for e in graded_window(M, bound))
    return frozenset(els), els


def brute_force_purity_oracle(M: AffineMonoid, m: int, alpha, window_bound: int) -> OracleResult:
    """Exhaustive check of ``gamma + beta - alpha in M  =>  beta - alpha in M``.

    beta runs over (1/m)M and gamma over M, both up to degree window_bound.
    Membership is read off an explicitly enumerated window of M, so the
    answer does not depend on the membership solver.
    """
    alpha = _as_ratvector(alpha, M.ambient_dim)
    a = alpha.numerator_for(m)
    if a is None:
        raise PreconditionError(f"{alpha} is not in (1/{m})M")
    big = max(m * window_bound, 2 * window_bound + 1, sum(a))
    members, ordered = _window_set(M, big)
    if a not in members:
        raise PreconditionError(f"{alpha} is not in (1/{m})M")
    gammas = [g for g in ordered if sum(g) <= window_bound]
    for b in ordered:
        if sum(b) > m * window_bound:
            break
        diff = [x - y for x, y in zip(b, a)]
        if any(x % m for x in diff):
            continue
        z = tuple(x // m for x in diff)
        if z in members:
            continue
        for g in gammas:
            if tuple(x + y for x, y in zip(z, g)) in members:
                return OracleResult(False, True, z, g)
    return OracleResult(True, False)
