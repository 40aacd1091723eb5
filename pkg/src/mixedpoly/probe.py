"""Numerical estimates of critical values, the bad-face bound set, S(f) and K_inf(f).

The asymptotic probes work sphere by sphere.  On each sphere ||z|| = R they
collect points of the Milnor set (for S) or local minimisers of nu (for K_inf),
follow every point outwards by radial continuation, and chain the values seen
on consecutive spheres.  A chain whose values settle is a ``finite_limit``
cluster, one whose values run away is ``divergent``, anything else is
``inconclusive``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from . import geometry
from ._solve import (
    derivatives,
    kos_system,
    levenberg_marquardt,
    milnor_system,
    pack,
    singular_system,
    sphere_projector,
    split,
)
from .geometry import Face
from .nondeg import slice_projector
from .polynomial import DegenerateInputError, MixedPolynomial
from .regularity import DEFAULT_TOL, gradient_scale, is_singular, kos_quantity, milnor_residual

FINITE = "finite_limit"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"
POLISH = 1e-14


@dataclass(frozen=True)
class RadiusSchedule:
    radii: Tuple[float, ...] = (1e1, 1e2, 1e3, 1e4, 1e5)
    starts: int = 400
    per_phase: int = 2
    retries: int = 3
    refine_rounds: int = 2
    substeps_per_decade: int = 4
    max_iter: int = 100
    tol: float = DEFAULT_TOL
    cluster_tol: float = 1e-3
    value_tol: float = 1e-2
    kos_tol: float = 1e-2
    depth: float = 2.0
    seed: int = 0

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        object.__setattr__(self, "radii", r)
        if len(r) < 2 or any(x <= 0 for x in r) or any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("radii must be >= 2 strictly increasing positive numbers")
        if min(self.tol, self.cluster_tol, self.value_tol, self.kos_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.starts < 1 or self.per_phase < 1:
            raise ValueError("start budgets must be positive")


@dataclass(frozen=True)
class Member:
    radius: float
    z: Tuple[complex, ...]
    value: complex
    kos: float


@dataclass(frozen=True)
class ValueCluster:
    center: complex
    radius: float
    members: Tuple[Member, ...]
    drifts: Tuple[float, ...]
    kos_trace: Tuple[float, ...]
    classification: str


@dataclass
class ProbeResult:
    kind: str
    finite: List[ValueCluster]
    divergent: List[ValueCluster]
    inconclusive: List[ValueCluster]
    accepted: Tuple[int, ...]
    schedule: RadiusSchedule
    samples: Dict[float, Tuple[np.ndarray, np.ndarray]] = field(default_factory=dict, repr=False)

    @property
    def values(self) -> np.ndarray:
        return np.array([c.center for c in self.finite], dtype=complex)


@dataclass(frozen=True)
class CriticalOptions:
    phases: int = 256
    per_phase: int = 6
    origin_starts: int = 32
    rounds: int = 4
    box: Tuple[float, float] = (0.1, 10.0)
    max_iter: int = 200
    tol: float = DEFAULT_TOL
    value_tol: float = 1e-2
    seed: int = 0
    bisect_rounds: int = 6


@dataclass
class CriticalValueSet:
    clusters: List[ValueCluster]
    max_modulus: float
    max_point_norm: float
    points: np.ndarray = field(repr=False, default_factory=lambda: np.zeros((0, 1), complex))

    @property
    def values(self) -> np.ndarray:
        return np.array([c.center for c in self.clusters], dtype=complex)


@dataclass
class BoundSet:
    includes_zero: bool
    shift: complex
    bad_face_values: Dict[Face, List[ValueCluster]]
    union: List[ValueCluster]

    @property
    def values(self) -> np.ndarray:
        return np.array([c.center for c in self.union], dtype=complex)


def _require_nonconstant(f: MixedPolynomial) -> None:
    if f.is_zero or f.is_constant:
        raise DegenerateInputError("this computation needs a non-constant polynomial")


def _canonical(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def _leader_clusters(values: np.ndarray, radius: float, priority=None) -> List[np.ndarray]:
    """Greedy leader clustering; returns member index arrays, leader first.

    Leaders are taken by increasing ``priority`` (ties and the default in the
    canonical value order).
    """
    if len(values) == 0:
        return []
    order = _canonical(values)
    if priority is not None:
        order = order[np.argsort(np.asarray(priority)[order], kind="stable")]
    pts = np.c_[values.real, values.imag]
    tree = cKDTree(pts)
    taken = np.zeros(len(values), dtype=bool)
    groups = []
    for a in order:
        if taken[a]:
            continue
        near = np.array(tree.query_ball_point(pts[a], radius), dtype=int)
        near = near[~taken[near]]
        taken[near] = True
        groups.append(np.r_[a, np.sort(near[near != a])])
    return groups


# -- critical values ----------------------------------------------------


def _set_gap(a: np.ndarray, b: np.ndarray) -> float:
    """Hausdorff distance between two finite value sets (0 if either is empty)."""
    if len(a) == 0 or len(b) == 0:
        return 0.0
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def critical_values(f: MixedPolynomial, opts: CriticalOptions = CriticalOptions(), project=None) -> CriticalValueSet:
    """Values of f at its singular points, found phase by phase.

    For each theta on a grid over [0, pi) the square system w(theta) = 0 is
    solved from several box seeds; phases whose seeds all fall into z = 0 are
    reseeded.  Where the values found at neighbouring phases are further apart
    than value_tol / 2, the midpoint phase is solved from the neighbours'
    points, for up to ``bisect_rounds`` rounds.  A few extra seeds near the
    origin catch critical points there.
    """
    _require_nonconstant(f)
    n = f.n
    rng = np.random.default_rng(opts.seed)
    lo, hi = np.log(opts.box[0]), np.log(opts.box[1])
    grid = (np.arange(opts.phases) + 0.5) * np.pi / opts.phases

    def target(X):
        _, fz, fzb = f.value_and_gradients(split(X, n))
        return 0.1 * opts.tol * (1 + np.linalg.norm(fz, axis=1) + np.linalg.norm(fzb, axis=1))

    def run(theta, z):
        res = levenberg_marquardt(
            singular_system(f, free_theta=False), pack(z), target,
            params=theta[:, None], max_iter=opts.max_iter, project=project,
        )
        zz = split(res.X, n)
        ok = res.reached & np.all(np.isfinite(zz), axis=1)
        ok[ok] = np.asarray(is_singular(f, zz[ok], opts.tol), dtype=bool).reshape(-1)
        return zz, ok

    found_z, found_t = [], []
    todo = np.arange(opts.phases)
    for _ in range(opts.rounds):
        theta = np.repeat(grid[todo], opts.per_phase)
        mod = np.exp(rng.uniform(lo, hi, size=(len(theta), n)))
        z = mod * np.exp(2j * np.pi * rng.uniform(size=(len(theta), n)))
        zz, ok = run(theta, z)
        found_z.append(zz[ok])
        found_t.append(theta[ok])
        away = ok & (np.linalg.norm(zz, axis=1) > 1e-6)
        todo = todo[~away.reshape(-1, opts.per_phase).any(axis=1)]
        if todo.size == 0:
            break

    # adaptive bisection between neighbouring phases (theta and theta + pi give the same system)
    Z = np.concatenate(found_z) if found_z else np.zeros((0, n), complex)
    T = np.concatenate(found_t) if found_t else np.zeros(0)
    for _ in range(opts.bisect_rounds):
        phases = np.unique(T)
        if len(phases) < 2:
            break
        vals = np.asarray(f(Z), dtype=complex).reshape(-1) if len(Z) else np.zeros(0, complex)
        by_phase = {t: np.flatnonzero(T == t) for t in phases}
        seeds_z, seeds_t = [], []
        for k, t0 in enumerate(phases):
            last = k == len(phases) - 1
            t1 = phases[0] + np.pi if last else phases[k + 1]
            i0, i1 = by_phase[t0], by_phase[phases[0] if last else phases[k + 1]]
            if _set_gap(vals[i0], vals[i1]) <= opts.value_tol / 2:
                continue
            mid = np.mod(0.5 * (t0 + t1), np.pi)
            seed_pts = np.concatenate([Z[i0], Z[i1]])
            seeds_z.append(seed_pts)
            seeds_t.append(np.full(len(seed_pts), mid))
        if not seeds_z:
            break
        zz, ok = run(np.concatenate(seeds_t), np.concatenate(seeds_z))
        Z = np.concatenate([Z, zz[ok]])
        T = np.concatenate([T, np.concatenate(seeds_t)[ok]])
    found = [Z]

    if opts.origin_starts:
        theta = rng.uniform(0, np.pi, size=opts.origin_starts)
        mod = np.exp(rng.uniform(lo, hi, size=(opts.origin_starts, n))) * 1e-2
        z = mod * np.exp(2j * np.pi * rng.uniform(size=(opts.origin_starts, n)))
        zz, ok = run(theta, z)
        found.append(zz[ok])
    pts = np.concatenate(found) if found else np.zeros((0, n), complex)
    values = np.asarray(f(pts), dtype=complex).reshape(-1) if len(pts) else np.zeros(0, complex)
    clusters = []
    for idx in _leader_clusters(values, opts.value_tol / 2):
        members = tuple(
            Member(float(np.linalg.norm(pts[k])), tuple(complex(x) for x in pts[k]), complex(values[k]), 0.0)
            for k in idx[:4]
        )
        center = complex(np.mean(values[idx]))
        spread = float(np.max(np.abs(values[idx] - center)))
        clusters.append(ValueCluster(center, spread, members, (), (), FINITE))
    clusters.sort(key=lambda c: (c.center.real, c.center.imag))
    return CriticalValueSet(
        clusters=clusters,
        max_modulus=float(np.max(np.abs(values))) if len(values) else 0.0,
        max_point_norm=float(np.max(np.linalg.norm(pts, axis=1))) if len(pts) else 0.0,
        points=pts,
    )


def bad_face_critical_values(f: MixedPolynomial, opts: CriticalOptions = CriticalOptions(phases=1024)) -> BoundSet:
    """{0} together with f_D(Sing f_D) over the bad faces D, for h = f - f(0).

    Values are reported for f itself, that is shifted back by f(0).  Each face
    search runs on the torus-action slice of f_D.
    """
    _require_nonconstant(f)
    shift = f.constant_term()
    h = f.shift_constant()
    per_face: Dict[Face, List[ValueCluster]] = {}
    union: List[ValueCluster] = [ValueCluster(shift, 0.0, (), (), (), FINITE)]
    for k, face in enumerate(geometry.bad_faces(h)):
        f_face = geometry.restrict_to_face(h, face)
        if f_face.is_constant:
            per_face[face] = []
            continue
        sub = replace(opts, seed=opts.seed + 7919 * (k + 1))
        cv = critical_values(f_face, sub, project=slice_projector(f_face))
        shifted = [
            replace(c, center=c.center + shift, members=tuple(replace(m, value=m.value + shift) for m in c.members))
            for c in cv.clusters
        ]
        per_face[face] = shifted
        union.extend(shifted)
    union.sort(key=lambda c: (c.center.real, c.center.imag))
    return BoundSet(includes_zero=True, shift=shift, bad_face_values=per_face, union=union)


# -- sphere probes --------------------------------------------------------


class _Engine:
    """Sphere solves for one probe kind ("S" or "Kinf")."""

    def __init__(self, f: MixedPolynomial, kind: str, sched: RadiusSchedule):
        self.f, self.kind, self.s = f, kind, sched
        self.n = f.n
        self.d = derivatives(f)

    def _lam(self, z, theta):
        _, fz, fzb, *_ = self.d(z)
        e = np.exp(1j * theta)[:, None]
        w = e * fz.conj() + e.conj() * fzb
        return np.sum((w * z.conj()).real, axis=1) / np.sum(np.abs(z) ** 2, axis=1)

    def _target(self, X):
        # polish far below the acceptance tolerance: (1 + R) nu must still be
        # small on the outermost sphere
        _, fz, fzb, *_ = self.d(split(X, self.n))
        return POLISH * (1 + np.linalg.norm(fz, axis=1) + np.linalg.norm(fzb, axis=1))

    def _accept(self, z, res):
        finite = np.all(np.isfinite(z), axis=1)
        ok = finite.copy()
        if not ok.any():
            return ok
        zz = z[ok]
        if self.kind == "S":
            r = np.asarray(milnor_residual(self.f, zz)[0]).reshape(-1)
            sc = np.asarray(gradient_scale(self.f, zz)).reshape(-1)
            ok[ok] = res.converged[ok] & (r <= self.s.tol * sc)
        else:
            ok[ok] = res.converged[ok]
        return ok

    def solve(self, z, theta, R, anchors=None):
        """Free-phase solve on the sphere of radius R; returns (z, theta, ok)."""
        n, proj = self.n, sphere_projector(self.n, R)
        if len(z) == 0:
            return z, theta, np.zeros(0, dtype=bool)
        if self.kind == "S":
            X = pack(z, theta, self._lam(z, theta))
            if anchors is not None:
                X = levenberg_marquardt(milnor_system(self.f, R, kappa=1.0), X, 0.0,
                                        params=anchors[:, None], max_iter=30, project=proj).X
            res = levenberg_marquardt(milnor_system(self.f, R), X, self._target,
                                      max_iter=self.s.max_iter, project=proj)
        else:
            X = pack(z, theta)
            if anchors is not None:
                X = levenberg_marquardt(kos_system(self.f, R, kappa=1.0), X, 0.0,
                                        params=anchors[:, None], max_iter=30, project=proj).X
            res = levenberg_marquardt(kos_system(self.f, R), X, self._target,
                                      max_iter=self.s.max_iter, project=proj)
        zz = split(res.X, n)
        return zz, res.X[:, 2 * n], self._accept(zz, res)

    def solve_phase_grid(self, R, rng):
        """Fresh starts with theta frozen on a stratified grid over [0, pi)."""
        s, n = self.s, self.n
        grid = (np.arange(s.starts) + rng.uniform()) * np.pi / s.starts
        todo = np.arange(s.starts)
        Z, T = [], []
        proj = sphere_projector(n, R)
        for _ in range(1 + s.retries):
            theta = np.repeat(grid[todo], s.per_phase)
            logm = rng.uniform(-s.depth * np.log(R), np.log(R), size=(len(theta), n))
            z = np.exp(logm) * np.exp(2j * np.pi * rng.uniform(size=(len(theta), n)))
            z = z * (R / np.linalg.norm(z, axis=1))[:, None]
            if self.kind == "S":
                X = pack(z, self._lam(z, theta))
                res = levenberg_marquardt(milnor_system(self.f, R, free_theta=False), X, self._target,
                                          params=theta[:, None], max_iter=s.max_iter, project=proj)
                zz = split(res.X, n)
                ok = self._accept(zz, res)
                tt = theta
            else:
                zz, tt, ok = self.solve(z, theta, R)
            Z.append(zz[ok])
            T.append(tt[ok])
            todo = todo[~ok.reshape(-1, s.per_phase).any(axis=1)]
            if todo.size == 0:
                break
        return np.concatenate(Z), np.concatenate(T)

    def refine(self, z, theta, R):
        """Fill gaps between neighbouring values by value-anchored solves.

        Neighbours are the Gabriel edges of the value cloud (Delaunay edges
        whose diametral disc is empty), so a gap is found even when both of its
        sides are densely sampled.
        """
        gap, gmax = self.s.value_tol / 2, 25 * self.s.value_tol
        for _ in range(self.s.refine_rounds):
            z, theta = _thin(self.f, z, theta, gap / 2, self.kind)
            if len(z) < 3:
                break
            v = np.asarray(self.f(z), dtype=complex)
            P = np.c_[v.real, v.imag]
            try:
                tri = Delaunay(P)
            except (QhullError, ValueError):
                break
            S = tri.simplices
            E = np.unique(np.sort(np.concatenate([S[:, [0, 1]], S[:, [1, 2]], S[:, [0, 2]]]), axis=1), axis=0)
            L = np.linalg.norm(P[E[:, 0]] - P[E[:, 1]], axis=1)
            keep = (L > gap) & (L < gmax)
            E, L = E[keep], L[keep]
            if len(E) == 0:
                break
            tree = cKDTree(P)
            mid = (P[E[:, 0]] + P[E[:, 1]]) / 2
            empty = np.array([len(tree.query_ball_point(m, r * (1 - 1e-9))) == 0 for m, r in zip(mid, L / 2)])
            E, L = E[empty], L[empty]
            if len(E) == 0:
                break
            E = E[np.argsort(-L, kind="stable")][: 2 * self.s.starts]
            anchors = (v[E[:, 0]] + v[E[:, 1]]) / 2
            zn, tn, ok = self.solve(z[E[:, 0]], theta[E[:, 0]], R, anchors)
            z, theta = np.concatenate([z, zn[ok]]), np.concatenate([theta, tn[ok]])
        return z, theta


def _thin(f, z, theta, radius, kind="S"):
    """Keep one point per value-net cell of the given radius.

    For K_inf the point with the smallest (1 + ||z||) nu leads its cell.
    """
    if len(z) == 0:
        return z, theta
    v = np.asarray(f(z), dtype=complex)
    priority = np.asarray(kos_quantity(f, z)).reshape(-1) if kind == "Kinf" else None
    groups = _leader_clusters(v, radius, priority)
    keep = np.sort(np.array([g[0] for g in groups], dtype=int))
    return z[keep], theta[keep]


def _substep_radii(Rp: float, R: float, per_decade: int) -> List[float]:
    k = max(1, math.ceil(per_decade * math.log10(R / Rp)))
    return [Rp * (R / Rp) ** ((j + 1) / k) for j in range(k)]


def _sample_probe(f: MixedPolynomial, kind: str, sched: RadiusSchedule, seeds=None):
    eng = _Engine(f, kind, sched)
    rng = np.random.default_rng(sched.seed + (0 if kind == "S" else 104729))
    n = f.n
    samples: Dict[float, Tuple[np.ndarray, np.ndarray]] = {}
    Zc, Tc = np.zeros((0, n), complex), np.zeros(0)
    last = len(sched.radii) - 1
    for k, R in enumerate(sched.radii):
        if k and len(Zc):
            Rp = sched.radii[k - 1]
            for R2 in _substep_radii(Rp, R, sched.substeps_per_decade):
                Zc, Tc, ok = eng.solve(Zc * (R2 / Rp), Tc, R2)
                Zc, Tc, Rp = Zc[ok], Tc[ok], R2
        fresh_z, fresh_t = eng.solve_phase_grid(R, rng)
        if seeds is not None and R in seeds and len(seeds[R][0]):
            sz, st = seeds[R]
            sz2, st2, ok = eng.solve(sz, st, R)
            fresh_z = np.concatenate([fresh_z, sz2[ok]])
            fresh_t = np.concatenate([fresh_t, st2[ok]])
        if k < last - 1:
            fresh_z, fresh_t = eng.refine(fresh_z, fresh_t, R)
        Zc = np.concatenate([Zc, fresh_z])
        Tc = np.concatenate([Tc, fresh_t])
        Zc, Tc = _thin(f, Zc, Tc, sched.cluster_tol / 10, kind)
        samples[R] = (Zc.copy(), Tc.copy())
    return samples


def _chain(values_by_radius: List[np.ndarray], cluster_tol: float):
    """Nearest-neighbour chaining of value sets on consecutive radii.

    Returns chains as lists of (radius index, point index).  A chain ending at
    radius k links to the nearest unused value at k + 1 within
    chain_tol = max(1e-2, 5 * last drift); pairs are taken greedily by distance.
    """
    chains: List[List[Tuple[int, int]]] = [[(0, j)] for j in range(len(values_by_radius[0]))]
    open_chains = list(range(len(chains)))
    for k in range(len(values_by_radius) - 1):
        cur, nxt = values_by_radius[k], values_by_radius[k + 1]
        used = np.zeros(len(nxt), dtype=bool)
        still_open = []
        if len(nxt) and open_chains:
            tree = cKDTree(np.c_[nxt.real, nxt.imag])
            cand = []
            for c in open_chains:
                ch = chains[c]
                v = cur[ch[-1][1]]
                drift = abs(v - values_by_radius[ch[-2][0]][ch[-2][1]]) if len(ch) > 1 else 0.0
                tol_c = max(1e-2, 5 * drift)
                for j in tree.query_ball_point([v.real, v.imag], tol_c):
                    cand.append((abs(nxt[j] - v), c, j))
            cand.sort()
            linked = set()
            for _, c, j in cand:
                if c in linked or used[j]:
                    continue
                linked.add(c)
                used[j] = True
                chains[c].append((k + 1, j))
                still_open.append(c)
        for j in np.flatnonzero(~used):
            chains.append([(k + 1, int(j))])
            still_open.append(len(chains) - 1)
        open_chains = still_open
    return chains


def kos_settles(trace: Sequence[float], kos_tol: float = 1e-2) -> bool:
    """Final entry at most kos_tol and no increase over the last three entries.

    Entries below kos_tol / 10 count as numerical zero: the solver's accuracy
    is relative, so (1 + R) nu has a noise floor that grows with R.
    """
    t = np.maximum(np.asarray(trace, dtype=float), 0.1 * kos_tol)
    if len(t) == 0 or t[-1] > kos_tol:
        return False
    tail = t[-3:]
    return bool(np.all(np.diff(tail) <= 0))


def _classify(members: Sequence[Member], n_radii_last: float, sched: RadiusSchedule, kind: str) -> str:
    vals = np.array([m.value for m in members])
    drifts = np.abs(np.diff(vals))
    kos = np.array([m.kos for m in members])
    floor = 1e-9 * (1 + np.abs(vals[-1]))
    reaches_end = members[-1].radius == n_radii_last
    if len(members) >= 3 and reaches_end:
        settled = drifts[-1] <= sched.cluster_tol and drifts[-1] <= drifts[-2] + floor
        if kind == "Kinf":
            settled = settled and kos_settles(kos, sched.kos_tol)
        if settled:
            return FINITE
    mods = np.abs(vals)
    if len(members) >= 2 and np.all(np.diff(mods) > 0) and mods[-1] >= members[-1].radius:
        return DIVERGENT
    if len(members) == 1 and mods[0] >= members[0].radius:
        return DIVERGENT
    return INCONCLUSIVE


def _probe(f: MixedPolynomial, kind: str, sched: RadiusSchedule, seeds=None) -> ProbeResult:
    _require_nonconstant(f)
    samples = _sample_probe(f, kind, sched, seeds)
    radii = sched.radii
    pts = [samples[R][0] for R in radii]
    vals = [np.asarray(f(p), dtype=complex).reshape(-1) if len(p) else np.zeros(0, complex) for p in pts]
    kos = [np.asarray(kos_quantity(f, p), dtype=float).reshape(-1) if len(p) else np.zeros(0) for p in pts]
    clusters = []
    for ch in _chain(vals, sched.cluster_tol):
        members = tuple(
            Member(radii[k], tuple(complex(x) for x in pts[k][j]), complex(vals[k][j]), float(kos[k][j]))
            for k, j in ch
        )
        drifts = tuple(float(x) for x in np.abs(np.diff([m.value for m in members])))
        label = _classify(members, radii[-1], sched, kind)
        clusters.append(ValueCluster(
            center=members[-1].value,
            radius=drifts[-1] if drifts else 0.0,
            members=members,
            drifts=drifts,
            kos_trace=tuple(m.kos for m in members),
            classification=label,
        ))
    finite = _merge([c for c in clusters if c.classification == FINITE], sched.cluster_tol)
    key = lambda c: (c.center.real, c.center.imag, len(c.members))  # noqa: E731
    return ProbeResult(
        kind=kind,
        finite=sorted(finite, key=key),
        divergent=sorted([c for c in clusters if c.classification == DIVERGENT], key=key),
        inconclusive=sorted([c for c in clusters if c.classification == INCONCLUSIVE], key=key),
        accepted=tuple(len(p) for p in pts),
        schedule=sched,
        samples=samples,
    )


def _merge(clusters: List[ValueCluster], tol: float) -> List[ValueCluster]:
    """Collapse finite clusters whose limits agree within tol (best drift wins)."""
    if not clusters:
        return []
    centers = np.array([c.center for c in clusters])
    out = []
    for idx in _leader_clusters(centers, tol):
        best = min(idx, key=lambda i: (clusters[i].radius, -len(clusters[i].members), i))
        out.append(clusters[best])
    return out


def estimate_S(f: MixedPolynomial, schedule: RadiusSchedule = RadiusSchedule()) -> ProbeResult:
    """Chains of Milnor-set values on growing spheres; finite limits estimate S(f)."""
    return _probe(f, "S", schedule)


def estimate_Kinf(f: MixedPolynomial, schedule: RadiusSchedule = RadiusSchedule(), seeds: Optional[ProbeResult] = None) -> ProbeResult:
    """Chains of sphere-minimisers of nu whose (1 + ||z||) nu tends to 0.

    Points found by an S probe may be passed as extra seeds.
    """
    extra = None if seeds is None else seeds.samples
    return _probe(f, "Kinf", schedule, extra)


# -- set comparisons ---------------------------------------------------------


def nearest_distance(values: Sequence[complex], reference: Sequence[complex]) -> np.ndarray:
    """Distance from each value to the nearest reference value (inf if none)."""
    values = np.asarray(values, dtype=complex).reshape(-1)
    reference = np.asarray(reference, dtype=complex).reshape(-1)
    if len(values) == 0:
        return np.zeros(0)
    if len(reference) == 0:
        return np.full(len(values), np.inf)
    d, _ = cKDTree(np.c_[reference.real, reference.imag]).query(np.c_[values.real, values.imag])
    return np.asarray(d, dtype=float)


def hausdorff(a: Sequence[complex], b: Sequence[complex]) -> float:
    a, b = np.asarray(a, complex).reshape(-1), np.asarray(b, complex).reshape(-1)
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return math.inf
    return float(max(nearest_distance(a, b).max(), nearest_distance(b, a).max()))
