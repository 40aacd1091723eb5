"""The analysis report: assembly, JSON round trip and an SVG view of the value plane.

A report is a document made of JSON-native sections.  Complex numbers are
stored as [re, im] pairs and exact rationals as "p/q" strings, so the
serialized text is lossless and ``from_json(to_json(r)) == r`` holds exactly.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from . import __version__, geometry
from .geometry import Face
from .nondeg import FaceVerdict, SearchOptions, check_newton_nondegenerate
from .parser import format_polynomial
from .polynomial import DegenerateInputError, MixedPolynomial
from .probe import (
    CriticalOptions,
    ProbeResult,
    RadiusSchedule,
    ValueCluster,
    bad_face_critical_values,
    critical_values,
    estimate_Kinf,
    estimate_S,
    kos_settles,
    nearest_distance,
)
from .regularity import DEFAULT_TOL

SCHEMA_VERSION = 1
PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not_applicable"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    radii: Tuple[float, ...] = (1e1, 1e2, 1e3, 1e4, 1e5)
    tol: float = DEFAULT_TOL
    cluster_tol: float = 1e-3
    value_tol: float = 1e-2
    torus_margin: float = 1e-3
    starts: int = 400
    nondeg_starts: int = 1000
    critical_phases: int = 256
    bound_phases: int = 1024
    out: Optional[str] = None
    svg: Optional[str] = None
    timings: bool = False

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if min(self.tol, self.cluster_tol, self.value_tol, self.torus_margin) <= 0:
            raise ValueError("all tolerances must be positive")
        if len(self.radii) < 2 or any(b <= a for a, b in zip(self.radii, self.radii[1:])) or self.radii[0] <= 0:
            raise ValueError("radii must be at least two strictly increasing positive numbers")
        if self.starts < 1 or self.nondeg_starts < 1:
            raise ValueError("start budgets must be positive")

    def schedule(self) -> RadiusSchedule:
        return RadiusSchedule(
            radii=self.radii, starts=self.starts, tol=self.tol,
            cluster_tol=self.cluster_tol, value_tol=self.value_tol, seed=self.seed,
        )

    def search(self) -> SearchOptions:
        return SearchOptions(starts=self.nondeg_starts, seed=self.seed, tol=self.tol, torus_margin=self.torus_margin)

    def critical(self, phases: Optional[int] = None) -> CriticalOptions:
        return CriticalOptions(
            phases=phases or self.critical_phases, tol=self.tol, value_tol=self.value_tol, seed=self.seed
        )

    def echo(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "radii": list(self.radii),
            "tol": self.tol,
            "cluster_tol": self.cluster_tol,
            "value_tol": self.value_tol,
            "torus_margin": self.torus_margin,
            "starts": self.starts,
            "nondeg_starts": self.nondeg_starts,
            "critical_phases": self.critical_phases,
            "bound_phases": self.bound_phases,
        }


@dataclass
class AnalysisReport:
    input: Dict[str, Any]
    geometry: Optional[Dict[str, Any]] = None
    flags: Optional[Dict[str, Any]] = None
    nondegeneracy: Optional[Dict[str, Any]] = None
    critical_values: Optional[Dict[str, Any]] = None
    bound_set: Optional[Dict[str, Any]] = None
    s_estimate: Optional[Dict[str, Any]] = None
    kinf_estimate: Optional[Dict[str, Any]] = None
    checks: Optional[List[Dict[str, Any]]] = None
    config: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    seed: int = 0
    timings: Optional[Dict[str, float]] = None

    def to_dict(self) -> Dict[str, Any]:
        out = {"schema": SCHEMA_VERSION}
        for fd in fields(self):
            value = getattr(self, fd.name)
            if value is not None:
                out[fd.name] = value
        return out


# -- encoding helpers --------------------------------------------------------


def cplx(c) -> List[float]:
    c = complex(c)
    return [_finite(c.real), _finite(c.imag)]


def _finite(x: float):
    x = float(x)
    return x if math.isfinite(x) else None


def rational(q) -> Optional[str]:
    if q is None:
        return None
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def face_entry(F: Face) -> Dict[str, Any]:
    entry = {
        "vertices": [list(v) for v in F.vertices],
        "dim": F.dim,
        "functional": None if F.functional is None else list(F.functional),
        "level": rational(F.level),
    }
    if F.witness is not None:
        entry["witness"] = list(F.witness)
    return entry


def cluster_entry(c: ValueCluster, members: bool = True) -> Dict[str, Any]:
    entry = {
        "center": cplx(c.center),
        "radius": _finite(c.radius),
        "classification": c.classification,
        "drifts": [_finite(d) for d in c.drifts],
        "kos_trace": [_finite(k) for k in c.kos_trace],
        "radii": [m.radius for m in c.members],
    }
    if members:
        entry["members"] = [
            {"radius": m.radius, "z": [cplx(x) for x in m.z], "value": cplx(m.value), "kos": _finite(m.kos)}
            for m in c.members
        ]
    return entry


def verdict_entry(v: FaceVerdict) -> Dict[str, Any]:
    w = v.witness
    return {
        "mode": v.mode,
        "status": v.status,
        "witness": None if w is None else {
            "z": [cplx(x) for x in w.z],
            "theta": w.theta,
            "lambda": w.lam,
            "residual": w.residual,
            "value": cplx(w.value),
        },
        "budget": {"starts": v.search_budget.starts, "iterations": v.search_budget.iterations, "seed": v.search_budget.seed},
    }


def values_of(section: Optional[Dict[str, Any]], key: str = "clusters") -> np.ndarray:
    """Complex centers of the clusters stored in a report section."""
    if not section:
        return np.zeros(0, dtype=complex)
    return np.array([complex(*c["center"]) for c in section.get(key, [])], dtype=complex)


# -- sections ------------------------------------------------------------------


def input_section(f: MixedPolynomial, text: Optional[str] = None) -> Dict[str, Any]:
    return {"expression": text if text is not None else format_polynomial(f), "formatted": format_polynomial(f), "n": f.n}


def geometry_section(f: MixedPolynomial) -> Dict[str, Any]:
    G0 = geometry.newton_polyhedron(f)
    Q = geometry.support_hull(f) if any(any(p) for p in f.support_points()) else None
    return {
        "support": sorted(list(p) for p in f.support_points()),
        "gamma0": {"dim": G0.dim, "vertices": [list(v) for v in G0.vertices], "faces": [face_entry(F) for F in G0.faces]},
        "gamma_plus": [face_entry(F) for F in geometry.gamma_plus(f)],
        "support_hull_vertices": [] if Q is None else [list(v) for v in Q.vertices],
        "bad_faces": [face_entry(F) for F in geometry.bad_faces(f)] if Q is not None else [],
    }


def flags_section(f: MixedPolynomial) -> Dict[str, Any]:
    wh = geometry.weighted_homogeneous_weights(sorted(f.shift_constant().support_points()), f.n)
    return {
        "convenient": geometry.is_convenient(f),
        "weighted_homogeneous": None if wh is None else {"q": list(wh[0]), "m": wh[1]},
    }


def nondeg_section(f: MixedPolynomial, opts: SearchOptions) -> Dict[str, Any]:
    rep = check_newton_nondegenerate(f, opts)
    return {
        "faces": [
            {**face_entry(F), "nondegenerate_test": verdict_entry(rep.nondegenerate[F]), "strong_test": verdict_entry(rep.strong[F])}
            for F in rep.faces
        ],
        "nondegenerate": rep.is_nondegenerate,
        "strongly_nondegenerate": rep.is_strongly_nondegenerate,
        "budget": {"starts": opts.starts, "seed": opts.seed, "max_iter": opts.max_iter},
    }


def critical_section(f: MixedPolynomial, opts: CriticalOptions) -> Dict[str, Any]:
    cv = critical_values(f, opts)
    return {
        "clusters": [cluster_entry(c) for c in cv.clusters],
        "max_modulus": cv.max_modulus,
        "max_point_norm": cv.max_point_norm,
        "phases": opts.phases,
    }


def bound_section(f: MixedPolynomial, opts: CriticalOptions) -> Dict[str, Any]:
    b = bad_face_critical_values(f, opts)
    return {
        "includes_zero": b.includes_zero,
        "shift": cplx(b.shift),
        "bad_faces": [
            {**face_entry(F), "clusters": [cluster_entry(c, members=False) for c in cs]}
            for F, cs in sorted(b.bad_face_values.items(), key=lambda kv: kv[0].vertices)
        ],
        "clusters": [cluster_entry(c, members=False) for c in b.union],
    }


def probe_section(res: ProbeResult) -> Dict[str, Any]:
    return {
        "finite_limit": [cluster_entry(c) for c in res.finite],
        "divergent": [cluster_entry(c, members=False) for c in res.divergent],
        "inconclusive": [cluster_entry(c, members=False) for c in res.inconclusive],
        "accepted_per_radius": list(res.accepted),
        "radii": list(res.schedule.radii),
    }


# -- property checks -------------------------------------------------------------


def _check(name: str, status: str, detail: str, **extra) -> Dict[str, Any]:
    out = {"name": name, "status": status, "detail": detail}
    out.update(extra)
    return out


def _within(values: np.ndarray, reference: np.ndarray, tol: float) -> Tuple[bool, float]:
    if len(values) == 0:
        return True, 0.0
    d = nearest_distance(values, reference)
    worst = float(np.max(d))
    return bool(worst <= tol), (worst if math.isfinite(worst) else None)


def property_checks(report: AnalysisReport, cfg: RunConfig, f: MixedPolynomial, cv_enlarged=None) -> List[Dict[str, Any]]:
    tol = cfg.value_tol
    nd = report.nondegeneracy or {}
    nondegenerate = bool(nd.get("nondegenerate"))
    strong = bool(nd.get("strongly_nondegenerate"))
    s_sec, k_sec = report.s_estimate or {}, report.kinf_estimate or {}
    S = values_of(s_sec, "finite_limit")
    K = values_of(k_sec, "finite_limit")
    B = values_of(report.bound_set)
    C = values_of(report.critical_values)
    checks = []

    ok, worst = _within(S, B, tol)
    checks.append(_check(
        "bound_containment", (PASS if ok else FAIL) if nondegenerate else NOT_APPLICABLE,
        "every finite S cluster lies within value_tol of the bound set", worst_distance=worst,
    ))
    ok, worst = _within(S, K, tol)
    checks.append(_check("s_subset_kinf", PASS if ok else FAIL,
                         "every finite S cluster is matched by a K_inf cluster", worst_distance=worst))
    bad = [c for c in s_sec.get("finite_limit", []) if not kos_settles(c["kos_trace"])]
    checks.append(_check("s_kos_to_zero", PASS if not bad else FAIL,
                         "(1 + ||z||) nu tends to 0 along every finite S cluster", failures=len(bad)))

    if strong and cv_enlarged is not None:
        mods = [report.critical_values["max_modulus"]] + [abs(v) for v in S]
        stable = abs(cv_enlarged - report.critical_values["max_modulus"]) <= tol
        checks.append(_check("boundedness", PASS if (stable and all(math.isfinite(m) for m in mods)) else FAIL,
                             "critical values and S clusters stay bounded; enlarging the search box changes the maximum modulus by at most value_tol",
                             max_modulus=float(max(mods)), enlarged_box_max_modulus=cv_enlarged))
    else:
        checks.append(_check("boundedness", NOT_APPLICABLE, "needs a strongly non-degenerate input"))

    frozen = []
    for key in ("finite_limit", "inconclusive", "divergent"):
        for c in s_sec.get(key, []):
            if len(c["drifts"]) >= 1 and all(d is not None and d <= 1e-10 for d in c["drifts"]):
                v = complex(*c["center"])
                if abs(v) > tol:
                    frozen.append(v)
    ok, worst = _within(np.array(frozen, dtype=complex), B, tol)
    checks.append(_check(
        "sigma_infinity", (PASS if ok else FAIL) if nondegenerate else NOT_APPLICABLE,
        "chains with constant non-zero value match a bad-face critical value", chains=len(frozen), worst_distance=worst,
    ))

    flags = report.flags or {}
    if flags.get("convenient") and nondegenerate:
        checks.append(_check("convenient_shortcut", PASS if len(S) == 0 else FAIL,
                             "convenient and non-degenerate, so S is expected to be empty", s_clusters=int(len(S))))
    else:
        checks.append(_check("convenient_shortcut", NOT_APPLICABLE, "needs a convenient non-degenerate input"))
    if flags.get("weighted_homogeneous") and strong:
        vals = np.concatenate([S, C])
        ok = bool(np.all(np.abs(vals) <= tol)) if len(vals) else True
        checks.append(_check("weighted_homogeneous_shortcut", PASS if ok else FAIL,
                             "weighted homogeneous and strongly non-degenerate, so critical and S values are expected in {0}"))
    else:
        checks.append(_check("weighted_homogeneous_shortcut", NOT_APPLICABLE,
                             "needs a weighted-homogeneous strongly non-degenerate input"))
    return checks


def assemble_report(f: MixedPolynomial, cfg: RunConfig = RunConfig(), text: Optional[str] = None) -> AnalysisReport:
    """Run every analysis on f and collect the results with the property checks."""
    if f.is_zero or f.is_constant:
        raise DegenerateInputError("the analysis needs a non-constant polynomial")
    clock: Dict[str, float] = {}

    def timed(name, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        clock[name] = time.perf_counter() - t0
        return out

    report = AnalysisReport(input=input_section(f, text), config=cfg.echo(), seed=cfg.seed)
    report.geometry = timed("geometry", geometry_section, f)
    report.flags = flags_section(f)
    report.nondegeneracy = timed("nondegeneracy", nondeg_section, f, cfg.search())
    report.critical_values = timed("critical_values", critical_section, f, cfg.critical())
    report.bound_set = timed("bound_set", bound_section, f, cfg.critical(cfg.bound_phases))
    sched = cfg.schedule()
    s_res = timed("s_estimate", estimate_S, f, sched)
    report.s_estimate = probe_section(s_res)
    k_res = timed("kinf_estimate", estimate_Kinf, f, sched, s_res)
    report.kinf_estimate = probe_section(k_res)
    enlarged = None
    if report.nondegeneracy["strongly_nondegenerate"]:
        opts = cfg.critical()
        big = replace(opts, box=(opts.box[0] / 10, opts.box[1] * 10), seed=opts.seed + 1)
        enlarged = timed("boundedness", lambda: critical_values(f, big).max_modulus)
    report.checks = property_checks(report, cfg, f, enlarged)
    if cfg.timings:
        report.timings = {k: round(v, 6) for k, v in sorted(clock.items())}
    return report


# -- JSON ----------------------------------------------------------------------


def to_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def from_json(text: str) -> AnalysisReport:
    data = json.loads(text)
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    names = {fd.name for fd in fields(AnalysisReport)}
    unknown = set(data) - names - {"schema"}
    if unknown:
        raise ValueError(f"unknown report fields: {sorted(unknown)}")
    return AnalysisReport(**{k: v for k, v in data.items() if k in names})


def section_json(name: str, section: Any, cfg: Optional[RunConfig] = None, inp: Optional[Dict[str, Any]] = None) -> str:
    """JSON for a single-section command: the section plus the input echo."""
    doc = {"schema": SCHEMA_VERSION, "version": __version__, name: section}
    if inp is not None:
        doc["input"] = inp
    if cfg is not None:
        doc["config"] = cfg.echo()
        doc["seed"] = cfg.seed
    return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"


# -- SVG -----------------------------------------------------------------------

_LAYERS = (
    # (section, key, label, css class, shape, colour)
    ("critical_values", "clusters", "critical values", "critical", "circle", "#1f77b4"),
    ("bound_set", "clusters", "bound set", "bound", "square", "#7f7f7f"),
    ("s_estimate", "finite_limit", "S clusters", "s-cluster", "cross", "#d62728"),
    ("kinf_estimate", "finite_limit", "K-infinity clusters", "kinf-cluster", "triangle", "#2ca02c"),
)


def _marker(shape: str, x: float, y: float, colour: str, css: str) -> str:
    if shape == "circle":
        return f'<circle class="{css}" cx="{x:.3f}" cy="{y:.3f}" r="3" fill="none" stroke="{colour}"/>'
    if shape == "square":
        return f'<rect class="{css}" x="{x - 2.5:.3f}" y="{y - 2.5:.3f}" width="5" height="5" fill="none" stroke="{colour}"/>'
    if shape == "cross":
        return (f'<path class="{css}" d="M{x - 3:.3f} {y - 3:.3f}L{x + 3:.3f} {y + 3:.3f}'
                f'M{x - 3:.3f} {y + 3:.3f}L{x + 3:.3f} {y - 3:.3f}" stroke="{colour}"/>')
    return (f'<path class="{css}" d="M{x:.3f} {y - 3.5:.3f}L{x + 3:.3f} {y + 2:.3f}L{x - 3:.3f} {y + 2:.3f}Z" '
            f'fill="none" stroke="{colour}"/>')


def render_svg(report: AnalysisReport, width: int = 640, height: int = 640) -> str:
    """Scatter of the complex value plane; identical reports give identical bytes."""
    layers = []
    for section, key, label, css, shape, colour in _LAYERS:
        layers.append((label, css, shape, colour, values_of(getattr(report, section), key)))
    allv = np.concatenate([v for *_, v in layers]) if layers else np.zeros(0, complex)
    allv = allv[np.isfinite(allv)]
    if len(allv):
        lo_x, hi_x = float(allv.real.min()), float(allv.real.max())
        lo_y, hi_y = float(allv.imag.min()), float(allv.imag.max())
    else:
        lo_x = lo_y = -1.0
        hi_x = hi_y = 1.0
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9) * 1.1
    cx, cy = (lo_x + hi_x) / 2, (lo_y + hi_y) / 2
    plot = min(width, height) - 160
    ox, oy = 60, 40

    def to_px(v: complex) -> Tuple[float, float]:
        return (ox + (v.real - cx + span / 2) / span * plot, oy + (cy + span / 2 - v.imag) / span * plot)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{ox}" y="{oy}" width="{plot}" height="{plot}" fill="white" stroke="black"/>',
        f'<text x="{ox}" y="{oy - 10}" font-size="12">Re from {cx - span / 2:.4g} to {cx + span / 2:.4g}; '
        f'Im from {cy - span / 2:.4g} to {cy + span / 2:.4g}</text>',
    ]
    for label, css, shape, colour, vals in layers:
        out.append(f'<g id="{css}">')
        out.extend(_marker(shape, *to_px(v), colour, css) for v in vals if np.isfinite(v))
        out.append("</g>")
    ly = oy + plot + 25
    out.append('<g id="legend">')
    for k, (label, css, shape, colour, vals) in enumerate(layers):
        x = ox + (k % 2) * 240
        y = ly + (k // 2) * 20
        out.append(_marker(shape, x + 5, y - 4, colour, "legend-" + css))
        out.append(f'<text x="{x + 15}" y="{y}" font-size="12">{label} ({len(vals)})</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(report: AnalysisReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(report))
