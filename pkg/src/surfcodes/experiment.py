"""Sweeps over surfaces in P^3: build the codes, compute exact distances, check the bounds.

A sweep is described by an :class:`ExperimentConfig` (JSON-serialisable) and
produces one :class:`InstanceRecord` per (surface, r).  Output is a pure
function of the config, so two runs with the same seed give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BETA_MODES, REPORT_KEYS, evaluate_all
from .codes import DEFAULT_BUDGET, build_code, min_distance
from .errors import BudgetExceeded, SurfcodesError
from .gf import field_from_q
from .invariants import HypothesisFlags, PicardOne, invariants_from_p3
from .projective import (
    HomogeneousPolynomial,
    SurfaceP3,
    check_smoothness,
    fermat,
    monomials,
    parse_polynomial,
    zero_set_array,
)

# flag sources that count as machine-checked for the soundness exit status
GATING_SOURCES = ("verified", "derived")
DISTANCE_KEYS = tuple(k for k in REPORT_KEYS if k != "DimensionLB")


@dataclass
class ExperimentConfig:
    fields: list[int] = field(default_factory=lambda: [2, 4, 5, 7])
    degrees: list[int] = field(default_factory=lambda: [3, 4, 5])
    r_values: list[int] = field(default_factory=lambda: [1, 2])
    corpus: bool = True
    random_surfaces: int = 0  # per (q, d)
    random_fields: list[int] = field(default_factory=lambda: [3, 4, 5, 7])
    random_degrees: list[int] = field(default_factory=lambda: [3, 4])
    random_min_points: int = 10  # points off x0 = 0 required of a random surface
    files: list[str] = field(default_factory=list)
    seed: int = 0
    max_ext: int = 2
    budget: int = DEFAULT_BUDGET
    max_qk: int | None = None
    format: str = "csv"
    beta_modes: list[str] = field(default_factory=lambda: list(BETA_MODES))
    p3_picard_literal: bool = True
    # surface id -> source ("literature" | "asserted") for NS(X) = Z·L
    picard_one: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("fields", "degrees", "r_values"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")
        if min(self.r_values) < 1:
            raise ValueError("r must be >= 1")
        if self.format not in ("csv", "json", "markdown"):
            raise ValueError("format must be csv, json or markdown")
        if self.random_surfaces < 0 or self.budget < 1 or self.max_ext < 1:
            raise ValueError("random_surfaces >= 0, budget >= 1 and max_ext >= 1 required")
        unknown = set(self.beta_modes) - set(BETA_MODES)
        if unknown:
            raise ValueError(f"unknown beta modes {sorted(unknown)}")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys {sorted(extra)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


@dataclass
class InstanceRecord:
    surface_id: str
    q: int
    d: int
    r: int
    seed: int
    version: str
    status: str = "ok"
    n: int | None = None
    k: int | None = None
    dim_L: int | None = None
    injective: bool | None = None
    distance: int | None = None
    distance_method: str = ""
    smoothness: str = ""
    provenance: dict = field(default_factory=dict)
    bounds: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def bound(self, key: str) -> dict | None:
        for b in self.bounds:
            if b["key"] == key:
                return b
        return None

    def bound_value(self, key: str) -> int | None:
        b = self.bound(key)
        return None if b is None or not b["applicable"] else b["value"]


# -- surface sources -------------------------------------------------------

def corpus_surfaces(fields, degrees) -> list[tuple[str, SurfaceP3]]:
    """Fermat surfaces, skipping characteristics that divide the degree."""
    out = []
    for d in degrees:
        for q in fields:
            F = field_from_q(q)
            if d % F.p == 0:
                continue
            name = f"fermat-d{d}-q{q}"
            out.append((name, SurfaceP3(fermat(F, d), absolutely_irreducible_asserted=True, name=name)))
    return out


def random_sparse_surface(F, d: int, rng: np.random.Generator, terms: int) -> HomogeneousPolynomial:
    mons = monomials(4, d)
    idx = rng.choice(len(mons), size=terms, replace=False)
    coeffs = rng.integers(1, F.q, size=terms)
    return HomogeneousPolynomial(F, 4, {mons[i]: F.from_code(int(c)) for i, c in zip(sorted(idx), coeffs)}, d)


def find_random_surfaces(q: int, d: int, count: int, seed: int, max_ext: int = 2,
                         min_points: int = 1, max_tries: int = 2000) -> list[tuple[str, SurfaceP3]]:
    """Seeded search for sparse surfaces passing the smoothness check with >= min_points points off x0 = 0."""
    F = field_from_q(q)
    rng = np.random.default_rng([seed, q, d])
    found = []
    for attempt in range(max_tries):
        if len(found) == count:
            break
        f = random_sparse_surface(F, d, rng, int(rng.integers(4, 8)))
        if f.degree != d or f.is_zero():
            continue
        pts = zero_set_array(f)
        if np.count_nonzero(pts[:, 0]) < min_points:
            continue
        status = check_smoothness(f, max_ext)
        if status.kind != "verified":
            continue
        name = f"random-d{d}-q{q}-s{seed}-{attempt}"
        found.append((name, SurfaceP3(f, status, name=name)))
    return found


def collect_surfaces(cfg: ExperimentConfig) -> list[tuple[str, SurfaceP3]]:
    out = []
    if cfg.corpus:
        out += corpus_surfaces(cfg.fields, cfg.degrees)
    if cfg.random_surfaces:
        for d in cfg.random_degrees:
            for q in cfg.random_fields:
                out += find_random_surfaces(q, d, cfg.random_surfaces, cfg.seed, cfg.max_ext,
                                            cfg.random_min_points)
    for path in cfg.files:
        f = parse_polynomial(Path(path).read_text())
        name = Path(path).stem
        out.append((name, SurfaceP3(f, name=name)))
    return out


# -- the sweep -------------------------------------------------------------

def _flags_for(cfg: ExperimentConfig, name: str, base: HypothesisFlags) -> HypothesisFlags:
    prov = dict(base.provenance)
    pic = None
    if name in cfg.picard_one:
        pic = PicardOne(True, 1)
        prov["picard_one"] = cfg.picard_one[name]
    return HypothesisFlags(canonical_class=base.canonical_class, picard_one=pic, provenance=prov)


def run_instance(cfg: ExperimentConfig, name: str, X: SurfaceP3, r: int) -> InstanceRecord:
    rec = InstanceRecord(name, X.field.q, X.degree, r, cfg.seed, __version__)
    rec.smoothness = str(X.smoothness)
    if not X.smoothness.is_smooth:
        rec.status = f"skipped: smoothness {X.smoothness}"
        return rec
    try:
        C = build_code(X, r)
    except SurfcodesError as exc:
        rec.status = f"error: {type(exc).__name__}: {exc}"
        return rec
    rec.n, rec.k = C.n, C.k
    rec.dim_L, rec.injective = C.provenance["dim_L"], C.provenance["injective"]

    base = invariants_from_p3(X.degree, 1, X.field.q, C.n)
    flags = _flags_for(cfg, name, base.hypotheses)
    inv = replace(base, hypotheses=flags)
    rec.provenance = {"smoothness": "verified" if X.smoothness.kind == "verified" else X.smoothness.kind,
                      "n_points": "verified", **flags.provenance}
    reports = evaluate_all(inv, r, beta_modes=cfg.beta_modes)
    if not cfg.p3_picard_literal:
        reports = [b for b in reports if b.theorem_id != "P3PicardOne"]
    rec.bounds = [b.to_dict() for b in reports]

    if cfg.max_qk is not None and X.field.q ** C.k > cfg.max_qk:
        rec.distance_method = "skipped: q^k above max_qk"
    else:
        try:
            rec.distance, method = min_distance(C, cfg.budget)
            rec.distance_method = f"exact:{method}"
        except BudgetExceeded as exc:
            rec.distance_method = "BudgetExceeded"
            rec.status = f"ok: {exc}"
    _check_soundness(rec)
    return rec


def _gating(rec: InstanceRecord, b: dict) -> bool:
    if rec.provenance.get("smoothness") != "verified":
        return False
    return all(rec.provenance.get(flag, "asserted") in GATING_SOURCES for flag in b["assumptions_used"])


def _check_soundness(rec: InstanceRecord) -> None:
    if rec.distance is not None:
        for b in rec.bounds:
            if b["key"] in DISTANCE_KEYS and b["applicable"] and rec.distance < b["value"]:
                msg = f"{b['key']}: d={rec.distance} < {b['value']}"
                (rec.violations if _gating(rec, b) else rec.warnings).append(msg)
    dim = rec.bound("DimensionLB")
    if dim and dim["applicable"] and rec.injective and rec.k < dim["value"]:
        rec.violations.append(f"DimensionLB: k={rec.k} < {dim['value']}")


def run_experiment(cfg: ExperimentConfig) -> list[InstanceRecord]:
    records = []
    for name, X in collect_surfaces(cfg):
        if X.smoothness.kind == "unknown":
            try:
                X.smoothness = check_smoothness(X, cfg.max_ext)
            except SurfcodesError as exc:
                for r in cfg.r_values:
                    rec = InstanceRecord(name, X.field.q, X.degree, r, cfg.seed, __version__)
                    rec.status = f"error: {type(exc).__name__}: {exc}"
                    records.append(rec)
                continue
        for r in cfg.r_values:
            records.append(run_instance(cfg, name, X, r))
    return records


def sound(records) -> bool:
    return not any(rec.violations for rec in records)


# -- output ----------------------------------------------------------------

BASE_COLUMNS = ("seed", "version", "surface_id", "q", "d", "r", "n", "k", "dim_L", "injective",
                "smoothness", "status", "distance", "distance_method")
TAIL_COLUMNS = ("violations", "warnings", "provenance")


def columns() -> list[str]:
    return list(BASE_COLUMNS) + list(REPORT_KEYS) + list(TAIL_COLUMNS)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _row(rec: InstanceRecord) -> list[str]:
    base = [_cell(getattr(rec, c) if c != "surface_id" else rec.surface_id) for c in BASE_COLUMNS]
    vals = [_cell(rec.bound_value(k)) for k in REPORT_KEYS]
    tail = [";".join(rec.violations), ";".join(rec.warnings),
            ";".join(f"{k}={v}" for k, v in sorted(rec.provenance.items()))]
    return base + vals + tail


def emit(records, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns())
        for rec in records:
            w.writerow(_row(rec))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([asdict(r) for r in records], indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        cols = columns()
        lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        for rec in records:
            lines.append("| " + " | ".join(c.replace("|", "/") for c in _row(rec)) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def records_from_json(text: str) -> list[InstanceRecord]:
    return [InstanceRecord(**d) for d in json.loads(text)]
