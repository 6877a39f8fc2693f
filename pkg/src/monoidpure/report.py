"""Monoid input files, orchestration, and the JSON report document.

A report is one JSON object on one line (JSON Lines), keys sorted.

Rationals are written as ``"p/q"`` strings (always with a slash) and the
non-seminormal marker as ``"-inf"``, so a report decodes back to exactly the
values that were computed.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Callable

from .errors import InputError, MonoidError, Undecided
from .monoid import AffineMonoid
from .purity import (
    NEG_INF,
    compute_Vm,
    decide_normal,
    decide_seminormal,
    kunz_free_test,
    pure_prime_face,
    pure_ratio_signature,
    pure_threshold,
    ring_bounds_report,
)

SCHEMA_VERSION = 1
BUDGET_ENV = "MONOIDPURE_BUDGETS"
_RATIONAL = re.compile(r"^-?\d+/\d+$")


@dataclass(frozen=True)
class Budgets:
    m_budget: int = 99
    t_budget: int = 6
    hilbert_budget: int = 200_000
    window_bound: int = 12

    def updated(self, values: dict[str, Any], where: str) -> Budgets:
        known = {f.name for f in fields(self)}
        clean = {}
        for key, val in values.items():
            if key not in known:
                raise InputError(f"{where}: unknown budget {key!r}")
            if isinstance(val, bool) or not isinstance(val, int) or val <= 0:
                raise InputError(f"{where}: budget {key!r} must be a positive integer, got {val!r}")
            clean[key] = val
        return replace(self, **clean)


def env_budgets(environ=None) -> dict[str, int]:
    """Parse ``MONOIDPURE_BUDGETS="m_budget=50,t_budget=4"``."""
    raw = (environ if environ is not None else os.environ).get(BUDGET_ENV, "").strip()
    out = {}
    if not raw:
        return out
    for item in raw.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"{BUDGET_ENV}: expected key=value, got {item!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise InputError(f"{BUDGET_ENV}: {key.strip()} is not an integer: {val!r}") from None
    return out


@dataclass(frozen=True)
class MonoidFile:
    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]
    name: str | None = None
    budgets: Budgets = field(default_factory=Budgets)

    def monoid(self) -> AffineMonoid:
        return AffineMonoid(self.generators, name=self.name)

    def to_dict(self) -> dict:
        d = {"ambient_dim": self.ambient_dim, "generators": [list(g) for g in self.generators]}
        if self.name is not None:
            d["name"] = self.name
        d["budgets"] = asdict(self.budgets)
        return d


def parse_monoid_text(text: str, source: str = "<input>", environ=None) -> MonoidFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("ambient_dim", "generators"):
        if key not in data:
            raise InputError(f"{source}: missing field {key!r}")
    extra = set(data) - {"ambient_dim", "generators", "name", "budgets", "schema_version"}
    if extra:
        raise InputError(f"{source}: unknown field(s) {sorted(extra)}")
    q = data["ambient_dim"]
    if isinstance(q, bool) or not isinstance(q, int) or q <= 0:
        raise InputError(f"{source}: field 'ambient_dim' must be a positive integer")
    gens = data["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError(f"{source}: field 'generators' must be a nonempty list")
    rows = []
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in g):
            raise InputError(f"{source}: generators[{i}] must be a list of integers")
        if len(g) != q:
            raise InputError(f"{source}: generators[{i}] has length {len(g)}, ambient_dim is {q}")
        rows.append(tuple(g))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError(f"{source}: field 'name' must be a string")
    budgets = Budgets().updated(env_budgets(environ), BUDGET_ENV)
    file_budgets = data.get("budgets", {})
    if not isinstance(file_budgets, dict):
        raise InputError(f"{source}: field 'budgets' must be an object")
    budgets = budgets.updated(file_budgets, f"{source}: budgets")
    mf = MonoidFile(q, tuple(rows), name, budgets)
    try:
        mf.monoid()
    except MonoidError as exc:
        raise InputError(f"{source}: generators: {exc}") from exc
    return mf


def parse_monoid_file(path, environ=None) -> MonoidFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_monoid_text(text, str(path), environ)


# ------------------------------------------------------------ encoding


def encode(value):
    """Map computed values onto JSON-native ones."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if value == NEG_INF:
            return "-inf"
        raise TypeError(f"refusing to serialize float {value!r}")
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def decode(value):
    if isinstance(value, str):
        if _RATIONAL.match(value):
            return Fraction(value)
        if value == "-inf":
            return NEG_INF
        return value
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


@dataclass
class ReportDocument:
    """Everything computed for one monoid, in decoded (Fraction-valued) form."""

    input: dict
    fields: dict
    provenance: dict
    timing: dict = field(default_factory=dict, compare=False)
    schema_version: int = SCHEMA_VERSION

    def to_json(self, include_timing: bool = True) -> str:
        doc = {
            "schema_version": self.schema_version,
            "input": encode(self.input),
            "report": encode(self.fields),
            "provenance": encode(self.provenance),
        }
        if include_timing:
            doc["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        doc = json.loads(text)
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {version!r}")
        return cls(
            decode(doc["input"]),
            decode(doc["report"]),
            decode(doc["provenance"]),
            dict(doc.get("timing", {})),
            version,
        )

    def all_exact(self) -> bool:
        return all(v == "exact" for v in self.provenance.values())


# ---------------------------------------------------------- orchestration


def _vm_field(M, m):
    V = compute_Vm(M, m)
    value = {"m": m, "size": len(V), "elements": [list(a.fractions()) for a in V]}
    return value, "exact"


def _seminormal_field(M):
    c = decide_seminormal(M)
    return {
        "verdict": c.verdict,
        "witness_prime": c.witness_prime,
        "bad_primes": sorted(c.bad_primes),
        "detail": None if c.detail is None else list(c.detail),
    }, "exact"


def _normal_field(M, b: Budgets):
    v = decide_normal(M, b.hilbert_budget)
    return {
        "value": v.normal,
        "witness": None if v.witness is None else list(v.witness),
        "hilbert_basis": [list(h) for h in v.hilbert_basis],
    }, "exact"


def _face_field(M, b: Budgets):
    f = pure_prime_face(M, b.m_budget, b.t_budget, b.hilbert_budget)
    if f.face is None:
        return {"mpdim": NEG_INF, "generator_indices": None, "tight_normals": None,
                "verified": True, "evidence": []}, "exact"
    value = {
        "mpdim": f.mpdim,
        "generator_indices": sorted(f.face.generator_indices),
        "tight_normals": sorted(f.face.tight_normals),
        "verified": f.verified,
        "unwitnessed": [list(h) for h in f.unwitnessed],
        "evidence": [{"m": m, "mV_m": [list(a) for a in sorted(nums)]} for m, nums in f.evidence],
    }
    return value, "exact" if f.verified else f"estimate(m_budget={b.m_budget})"


def _mpt_field(M, b: Budgets):
    r = pure_threshold(M, b.t_budget, b.hilbert_budget)
    value = {"value": r.value, "kind": "exact" if r.exact else "lower_bound",
             "trace": [[m, d] for m, d in r.trace]}
    return value, "exact" if r.exact else f"estimate(t_budget={b.t_budget})"


def _ratio_field(M, b: Budgets):
    r = pure_ratio_signature(M, b.t_budget, b.hilbert_budget)
    value = {
        "mpr": r.mpr,
        "mpr_kind": "exact" if r.mpr_exact else "estimate",
        "mps": r.mps,
        "count_trace": [list(t) for t in r.count_trace],
        "volume_lower_bound": [list(t) for t in r.volume_trace],
    }
    return value, "exact" if r.mpr_exact else f"estimate(t_budget={b.t_budget})"


def _kunz_field(M, b: Budgets):
    return kunz_free_test(M, b.hilbert_budget), "exact"


def _bounds_field(M, b: Budgets):
    thr = pure_threshold(M, b.t_budget, b.hilbert_budget)
    face = pure_prime_face(M, b.m_budget, b.t_budget, b.hilbert_budget)
    r = ring_bounds_report(M, thr, face)
    value = {
        "a_i_upper": r.a_i_upper,
        "reg_upper": r.reg_upper,
        "reg_upper_int": r.reg_upper_int,
        "beta_upper": r.beta_upper,
        "beta_upper_int": r.beta_upper_int,
        "depth_lower": r.depth_lower,
    }
    return value, "estimate(mpt lower bound)" if r.estimate else "exact"


def run_report(mf: MonoidFile, vm: tuple[int, ...] = (), only: tuple[str, ...] | None = None) -> ReportDocument:
    """Compute the requested report fields; budget overflow becomes ``undecided``."""
    M = mf.monoid()
    b = mf.budgets
    tasks: dict[str, Callable[[], tuple[Any, str]]] = {
        "rank": lambda: (M.rank, "exact"),
        "seminormal": lambda: _seminormal_field(M),
        "normal": lambda: _normal_field(M, b),
        "mpt": lambda: _mpt_field(M, b),
        "pure_prime_face": lambda: _face_field(M, b),
        "ratio": lambda: _ratio_field(M, b),
        "kunz_free": lambda: _kunz_field(M, b),
        "ring_bounds": lambda: _bounds_field(M, b),
    }
    for m in vm:
        tasks[f"V_{m}"] = lambda m=m: _vm_field(M, m)
    if only is not None:
        tasks = {k: v for k, v in tasks.items() if k in only or k.startswith("V_")}
    values, provenance, timing = {}, {}, {}
    for key, task in tasks.items():
        start = time.perf_counter()
        try:
            values[key], provenance[key] = task()
        except Undecided as exc:
            values[key] = None
            provenance[key] = f"undecided({exc.budget or exc.reason})"
        timing[key] = time.perf_counter() - start
    return ReportDocument(mf.to_dict(), values, provenance, timing)
