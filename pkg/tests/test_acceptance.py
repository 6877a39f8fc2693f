"""Acceptance gate: every criterion at its stated tolerance and time limit.

Each criterion is split into named parts; the terminal summary prints one
PASS/FAIL line per criterion listing any failed parts.  Monoids are rebuilt
and caches cleared inside timed sections so timings are cold.
"""

from __future__ import annotations

import sys
import time
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

import invariant_checks as ic
from conftest import ACCEPTANCE
from monoidpure import AffineMonoid, RatVector
from monoidpure import purity
from monoidpure.monoid import graded_window
from monoidpure.plot import PLOT_DEGREE, render_svg
from monoidpure.purity import (
    b_region,
    compute_Vm,
    decide_normal,
    decide_seminormal,
    is_in_A,
    kunz_free_test,
    pure_prime_face,
    pure_ratio_signature,
    pure_threshold,
    ring_bounds_report,
)

F = Fraction


def fresh(name):
    gens = {
        "E": [(2, 0), (1, 1), (0, 1)],
        "G": [(2, 1), (1, 2)],
        "V(2,2)": [(2, 0), (1, 1), (0, 2)],
        "V(3,2)": [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)],
        "D(2,3)": [(2, 0), (0, 3)],
        "D(1,2,3)": [(1, 0, 0), (0, 2, 0), (0, 0, 3)],
        "D(2)": [(2,)],
        "Z1": [(1,)],
        "Z2": [(1, 0), (0, 1)],
        "Z3": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        "N": [(1, 0), (0, 2), (0, 3)],
    }[name]
    return AffineMonoid(gens, name=name)


NORMAL = ["G", "V(2,2)", "V(3,2)", "D(2,3)", "D(1,2,3)", "D(2)", "Z1", "Z2", "Z3"]
FREE = ["D(2,3)", "D(1,2,3)", "D(2)", "Z1", "Z2", "Z3"]
CORPUS = ["E"] + NORMAL + ["N"]


def cold():
    purity._compute_Vm.cache_clear()
    purity._numerators.cache_clear()
    purity._window_set.cache_clear()


def record(key, name: str, ok: bool) -> bool:
    ACCEPTANCE.setdefault(key, []).append((name, bool(ok)))
    return bool(ok)


def check_all(key, parts: dict[str, bool]) -> None:
    for name, ok in parts.items():
        record(key, name, ok)
    failed = [n for n, ok in parts.items() if not ok]
    assert not failed, f"criterion {key}: {failed}"


def timed(fn):
    cold()
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_criterion_1_a_of_e_is_odd():
    E = fresh("E")
    verdicts, secs = timed(lambda: {m: is_in_A(E, m) for m in range(2, 26)})
    check_all(1, {
        "is_in_A(E, m) == m odd for 2..25": all(v == (m % 2 == 1) for m, v in verdicts.items()),
        f"under 1 s ({secs:.3f} s)": secs < 1,
    })


def test_criterion_2_vm_of_e():
    E = fresh("E")
    parts = {}
    for m in (3, 5, 7, 9):
        got = set(compute_Vm(E, m).numerators())
        parts[f"mV_{m} = even axis points below {m}"] = got == {(a, 0) for a in range(0, m, 2)}
    sizes = {m: len(compute_Vm(E, m)) for m in range(3, 26, 2)}
    parts["|V_m| = ceil(m/2) for odd m <= 25"] = all(s == (m + 1) // 2 for m, s in sizes.items())
    check_all(2, parts)


def test_criterion_3_thresholds():
    def run():
        out = {}
        for name, d in (("D(2,3)", 5), ("D(1,2,3)", 6), ("D(2)", 2)):
            r = pure_threshold(fresh(name))
            out[f"mpt {name} = {d} exact"] = r.exact and r.value == d
        r = pure_threshold(fresh("V(2,2)"))
        out["mpt V(2,2) = 2 exact"] = r.exact and r.value == 2
        r = pure_threshold(fresh("E"), t_budget=6)
        values = [v for _, v in r.trace]
        out["E trace monotone"] = values == sorted(values)
        out["E trace end in [1 - 1/3^6, 1]"] = 1 - F(1, 3 ** 6) <= r.value <= 1 and not r.exact
        return out

    parts, secs = timed(run)
    parts[f"under 10 s ({secs:.2f} s)"] = secs < 10
    check_all(3, parts)


def test_criterion_4_pure_prime_face():
    f = pure_prime_face(fresh("E"))
    parts = {
        "E: F_M = ray(1,0)": f.face is not None and f.face.generator_indices == frozenset({0}),
        "E: mpdim 1": f.mpdim == 1,
        "E: verified": f.verified,
    }
    for name in NORMAL:
        M = fresh(name)
        g = pure_prime_face(M)
        parts[f"{name}: full cone, mpdim = rank"] = (
            g.face.generator_indices == frozenset(range(M.u)) and g.mpdim == M.rank and g.verified
        )
    check_all(4, parts)


def test_criterion_5_ratio_signature():
    E = fresh("E")
    r = pure_ratio_signature(E, t_budget=6)
    m_final = r.count_trace[-1][0]
    vol = r.volume_trace[-1][1]
    check_all(5, {
        f"E: |mpr trace - 1/2| <= 1/{m_final}": abs(r.mpr - F(1, 2)) <= F(1, m_final),
        "E: b-region volume >= (1 - 1/m)/2": vol >= (1 - F(1, m_final)) / 2
        and vol == b_region(E, m_final).union_volume(),
        "V(2,2): mps = 1/2 exact": pure_ratio_signature(fresh("V(2,2)")).mps == F(1, 2),
        "Z2: mps = 1 exact": pure_ratio_signature(fresh("Z2")).mps == 1,
    })


def test_criterion_6_seminormality():
    parts = {}
    c, secs = timed(lambda: decide_seminormal(fresh("E")))
    parts["E seminormal, prime 3, bad primes {2}"] = bool(c) and c.witness_prime == 3 and c.bad_primes == {2}
    parts[f"E under 1 s ({secs:.3f} s)"] = secs < 1
    c, secs = timed(lambda: decide_seminormal(fresh("N")))
    parts["N not seminormal, z = (0,1)"] = not c and c.detail == (0, 1)
    parts[f"N under 1 s ({secs:.3f} s)"] = secs < 1
    for name in NORMAL:
        c, secs = timed(lambda: decide_seminormal(fresh(name)))
        parts[f"{name} seminormal in {secs:.3f} s"] = bool(c) and secs < 1
    check_all(6, parts)


def test_criterion_7_normality():
    parts = {name: bool(decide_normal(fresh(name))) for name in ["V(2,2)", "D(2,3)", "D(1,2,3)", "D(2)", "Z1", "Z2", "Z3"]}
    parts = {f"{k} normal": v for k, v in parts.items()}
    parts["E not normal"] = not decide_normal(fresh("E"))
    check_all(7, parts)


def test_criterion_7_g_not_normal_with_witness():
    v = decide_normal(fresh("G"))
    check_all(7, {"G not normal, Hilbert witness (1,1)": not v and v.witness == (1, 1)})


def test_criterion_8_kunz():
    parts = {f"{name} free": kunz_free_test(fresh(name)) for name in FREE}
    parts["E not free"] = not kunz_free_test(fresh("E"))
    parts["V(2,2) not free"] = not kunz_free_test(fresh("V(2,2)"))
    parts["|V_2(Z2)| = 4"] = len(compute_Vm(fresh("Z2"), 2)) == 4
    check_all(8, parts)


def test_criterion_8_kunz_false_on_g():
    check_all(8, {"G not free": not kunz_free_test(fresh("G"))})


def test_criterion_9_property_suites():
    def run():
        out = {}
        for name in CORPUS:
            try:
                ic.run_all(fresh(name))
                out[name] = True
            except AssertionError as exc:
                out[f"{name}: {exc}"] = False
        return out

    parts, secs = timed(run)
    parts[f"under 60 s ({secs:.1f} s)"] = secs < 60
    check_all(9, parts)


def _plotted(svg, tag, cls):
    ns = "{http://www.w3.org/2000/svg}"
    return {
        (F(e.get("data-x")), F(e.get("data-y")))
        for e in ET.fromstring(svg).iter(ns + tag)
        if e.get("class") == cls
    }


def test_criterion_10_pictures():
    G, E = fresh("G"), fresh("E")
    alpha = (F(3, 2), F(3, 2))
    svg_g = render_svg(G, 2, alpha)
    win_g = {tuple(map(F, w.vector)) for w in graded_window(G, PLOT_DEGREE)}
    shifted = {(x + alpha[0], y + alpha[1]) for x, y in win_g if x + y + sum(alpha) <= PLOT_DEGREE}
    svg_e = render_svg(E, 3)
    win_e = {tuple(map(F, w.vector)) for w in graded_window(E, PLOT_DEGREE)}
    check_all(10, {
        "G: circles = M window": _plotted(svg_g, "circle", "monoid") == win_g,
        "G: crosses = alpha + M window": _plotted(svg_g, "g", "translate") == shifted,
        "G: alpha is a pure translation": RatVector.from_fractions(alpha) in compute_Vm(G, 2),
        "G: V_2 marks = V_2": _plotted(svg_g, "rect", "vm") == {a.fractions() for a in compute_Vm(G, 2)},
        "E: circles = M window": _plotted(svg_e, "circle", "monoid") == win_e,
        "E: V_3 marks = V_3": _plotted(svg_e, "rect", "vm") == {a.fractions() for a in compute_Vm(E, 3)},
        "SVG deterministic": svg_g == render_svg(fresh("G"), 2, alpha),
    })


def test_ring_bounds_depth_within_rank():
    parts = {}
    for name in CORPUS:
        M = fresh(name)
        r = ring_bounds_report(M)
        parts[f"{name}: depth bound <= rank"] = r.depth_lower is None or r.depth_lower <= M.rank
    check_all("ring bounds", parts)


def test_ring_bounds_reg_nonnegative():
    parts = {}
    for name in CORPUS:
        r = ring_bounds_report(fresh(name))
        parts[f"{name}: reg bound >= 0"] = r.reg_upper is None or r.reg_upper >= 0
    check_all("ring bounds", parts)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
