from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from conftest import CORPUS, D23, D123, E, FREE, G, N, NORMAL, V22, V32, Z2, Z3
from monoidpure import RatVector
from monoidpure.cone import delta_region, face_lattice, supporting_hyperplanes
from monoidpure.errors import PreconditionError
from monoidpure.monoid import module_generators
from monoidpure.purity import (
    NEG_INF,
    _box_union_volume,
    b_region,
    brute_force_purity_oracle,
    compute_Vm,
    decide_normal,
    decide_seminormal,
    is_in_A,
    is_pure_translation,
    kunz_free_test,
    pure_prime_face,
    pure_ratio_signature,
    pure_threshold,
    purity_violation,
    ring_bounds_report,
)

F = Fraction


def rv(*coords):
    return RatVector.from_fractions([Fraction(c) for c in coords])


def delta_points(M, m):
    """Independent oracle for normal M: (1/m)ZM inside the half-open box."""
    P = delta_region(M)
    top = m * P.maximize([1] * M.ambient_dim)
    out = set()
    for y in itertools.product(range(int(top) + 1), repeat=M.ambient_dim):
        if sum(y) < top and y in M.lattice:
            x = RatVector(y, m)
            if P.contains(x.fractions()):
                out.add(x)
    return out


# -------------------------------------------------------------- examples


def test_half_integral_translation_of_g_is_pure():
    assert is_pure_translation(G, 2, rv(F(3, 2), F(3, 2)))
    assert is_pure_translation(G, 2, rv(F(3, 2), F(3, 2)), method="generators")


def test_e_off_axis_translation_is_not_pure():
    alpha = rv(F(1, 3), F(1, 3))
    assert not is_pure_translation(E, 3, alpha)
    assert not is_pure_translation(E, 3, alpha, method="generators")
    assert purity_violation(E, 3, alpha) == (1, 0)


def test_precondition():
    with pytest.raises(PreconditionError):
        is_pure_translation(E, 2, rv(F(1, 2), 0))
    with pytest.raises(PreconditionError):
        is_in_A(E, 1)


def test_vm_of_e():
    assert list(compute_Vm(E, 3)) == [rv(0, 0), rv(F(2, 3), 0)]
    assert set(compute_Vm(E, 5)) == {rv(0, 0), rv(F(2, 5), 0), rv(F(4, 5), 0)}
    assert len(compute_Vm(E, 2)) == 0


def test_vm_of_diagonal():
    assert set(compute_Vm(D23, 2)) == {rv(0, 0), rv(1, 0), rv(0, F(3, 2)), rv(1, F(3, 2))}


@pytest.mark.parametrize("M", CORPUS, ids=lambda M: M.name)
@pytest.mark.parametrize("m", [2, 3])
def test_bfs_and_candidate_enumerations_agree(M, m):
    assert compute_Vm(M, m) == compute_Vm(M, m, method="candidates")


@pytest.mark.parametrize("M", [E, G, V22, D23, Z2, N], ids=lambda M: M.name)
@pytest.mark.parametrize("m", [2, 3, 4])
def test_two_purity_routes_agree_on_all_module_generators(M, m):
    for d in module_generators(M, m):
        assert is_pure_translation(M, m, d) == is_pure_translation(M, m, d, method="generators"), d


@pytest.mark.parametrize("M", NORMAL, ids=lambda M: M.name)
@pytest.mark.parametrize("m", [2, 3])
def test_normal_vm_is_delta_lattice_points(M, m):
    assert set(compute_Vm(M, m)) == delta_points(M, m)


@pytest.mark.parametrize("m", [3, 5, 7])
def test_veronese_counts(m):
    assert len(compute_Vm(V22, m)) == (m * m + 1) // 2


@pytest.mark.parametrize("M", FREE, ids=lambda M: M.name)
def test_free_counts(M):
    for m in (2, 3):
        assert len(compute_Vm(M, m)) == m ** M.rank


# ------------------------------------------------------ seminormal, normal


def test_seminormal_certificates():
    c = decide_seminormal(E)
    assert c and c.witness_prime == 3 and c.bad_primes == {2}
    c = decide_seminormal(N)
    assert not c and c.detail == (0, 1) and c.witness_prime == 2
    z = c.detail
    assert N.member(tuple(2 * x for x in z)) and N.member(tuple(3 * x for x in z)) and not N.member(z)


@pytest.mark.parametrize("M", NORMAL, ids=lambda M: M.name)
def test_normal_members_are_seminormal_and_normal(M):
    assert decide_seminormal(M)
    assert decide_normal(M)


def test_e_not_normal():
    v = decide_normal(E)
    assert not v and v.witness == (1, 0)


def test_g_is_normal():
    # ZM = {x + y = 0 mod 3}, so (1, 1) is not even in the group
    assert decide_normal(G)
    assert (1, 1) not in G.lattice


def test_a_of_normal_is_everything():
    for M in (V22, G, Z2):
        assert all(is_in_A(M, m) for m in range(2, 12))


# --------------------------------------------------------- face, mpt, mpr


def test_pure_prime_face_of_e():
    f = pure_prime_face(E)
    assert f.verified and f.mpdim == 1
    assert f.face.generator_indices == frozenset({0})
    assert (2, 0) in dict(f.evidence)[3]


@pytest.mark.parametrize("M", NORMAL, ids=lambda M: M.name)
def test_pure_prime_face_of_normal_is_full_cone(M):
    f = pure_prime_face(M)
    assert f.verified and f.mpdim == M.rank
    assert f.face.generator_indices == frozenset(range(M.u))


def test_pure_prime_face_non_seminormal():
    assert pure_prime_face(N).mpdim == NEG_INF


@pytest.mark.parametrize("M, value", [(D23, 5), (D123, 6), (V22, 2), (V32, 3), (Z3, 3), (G, 6)])
def test_exact_thresholds(M, value):
    r = pure_threshold(M)
    assert r.exact and r.value == value


def test_threshold_trace_of_e():
    r = pure_threshold(E, t_budget=4)
    assert not r.exact
    assert [v for _, v in r.trace] == [F(2, 3), F(8, 9), F(26, 27), F(80, 81)]


def test_threshold_non_seminormal():
    assert pure_threshold(N).value == NEG_INF


def test_ratio_signature():
    assert pure_ratio_signature(V22).mps == F(1, 2)
    assert pure_ratio_signature(Z2).mps == 1
    r = pure_ratio_signature(E, t_budget=3)
    assert r.mps == 0 and not r.mpr_exact
    assert [c for _, c, _ in r.count_trace] == [2, 5, 14]
    assert r.volume_trace == ((27, F(13, 27)),)


def test_b_region_of_e():
    B = b_region(E, 3)
    assert [a for a, _ in B.pieces] == [rv(0, 0), rv(F(2, 3), 0)]
    assert B.contains((F(1, 3), 0)) and not B.contains((F(5, 6), 0))
    assert B.union_volume() == F(1, 3)


def test_b_region_union_on_square():
    face = face_lattice(Z2)[-1]
    B = b_region(Z2, 2, face)
    assert len(B.pieces) == 4
    assert B.union_volume() == F(1, 4)


def test_b_region_union_with_overlaps():
    # boxes [0,1]x[0,2] and [0,2]x[0,1] overlap in the unit square
    assert _box_union_volume([(1, 2), (2, 1)], lambda c: F(c[0] * c[1])) == 3


def test_kunz():
    assert [kunz_free_test(M) for M in FREE] == [True] * len(FREE)
    assert not kunz_free_test(E)
    assert not kunz_free_test(V22)
    assert not kunz_free_test(N)


def test_ring_bounds():
    r = ring_bounds_report(E)
    assert r.estimate and r.depth_lower == 1
    assert r.reg_upper == 2 - F(728, 729) and r.reg_upper_int == 1
    r = ring_bounds_report(V22)
    assert not r.estimate and r.reg_upper == 0
    r = ring_bounds_report(Z3)
    assert r.reg_upper == 0 and r.depth_lower == 3 and r.a_i_upper == -3
    assert ring_bounds_report(N).reg_upper is None


# ---------------------------------------------------------------- oracle


def test_oracle_examples():
    assert brute_force_purity_oracle(G, 2, rv(F(3, 2), F(3, 2)), 8).pure
    r = brute_force_purity_oracle(E, 3, rv(F(1, 3), F(1, 3)), 6)
    assert not r and r.conclusive and r.witness == (1, 0)
    assert brute_force_purity_oracle(E, 3, rv(0, 0), 6).pure


def test_supporting_hyperplanes_cached_inputs_unchanged():
    # computing invariants must not mutate monoids used as cache keys
    before = (E.generators, supporting_hyperplanes(E))
    compute_Vm(E, 9)
    assert before == (E.generators, supporting_hyperplanes(E))


@pytest.mark.parametrize("M", [D23, D123, Z3], ids=lambda M: M.name)
def test_regularity_bound_is_tight_for_weighted_polynomial_rings(M):
    # k[M] is a polynomial ring in variables of degrees d_i, whose regularity is
    # sum(1 - d_i); the bound rank - mpt must meet it, and may be negative
    assert ring_bounds_report(M).reg_upper == sum(1 - d for d in M.degrees)
