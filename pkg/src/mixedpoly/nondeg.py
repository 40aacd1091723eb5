"""Newton non-degeneracy of face polynomials, by witness search on the open torus.

A face polynomial f_D is (strongly) degenerate when it has a singular point
(a singular zero) with every coordinate non-zero.  The search minimises
||w(theta)||^2 (plus |f_D|^2) over (z, theta) from many seeded starts.  Finding
nothing is evidence, never proof, so the verdict vocabulary is
``degenerate_witness_found`` versus ``presumed_nondegenerate``.

The torus action z -> t^a z with a orthogonal to the differences of the face
points maps f_D to a constant multiple of itself, so singular points and
singular zeros come in orbits.  Every iterate is moved along its orbit so that
log|z| lies in the span of those differences, which keeps the search compact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import geometry
from ._solve import levenberg_marquardt, pack, singular_system, split
from .geometry import Face
from .polynomial import DegenerateInputError, MixedPolynomial
from .regularity import DEFAULT_TOL, best_phase, gradient_scale, nu

NONDEGENERATE_TEST = "nondegenerate_test"
STRONG_TEST = "strong_test"
DEGENERATE = "degenerate_witness_found"
PRESUMED = "presumed_nondegenerate"


@dataclass(frozen=True)
class SearchOptions:
    starts: int = 1000
    max_iter: int = 200
    seed: int = 0
    tol: float = DEFAULT_TOL
    torus_margin: float = 1e-3
    use_slice: bool = True

    def __post_init__(self):
        if self.starts < 1 or self.max_iter < 1:
            raise ValueError("starts and max_iter must be positive")
        if self.tol <= 0 or not 0 < self.torus_margin < 1:
            raise ValueError("tol must be positive and torus_margin in (0, 1)")


@dataclass(frozen=True)
class SearchBudget:
    starts: int
    iterations: int
    seed: int


@dataclass(frozen=True)
class CriticalWitness:
    z: Tuple[complex, ...]
    theta: float
    lam: float
    residual: float
    value: complex


@dataclass(frozen=True)
class FaceVerdict:
    face: Optional[Face]
    mode: str
    status: str
    witness: Optional[CriticalWitness]
    search_budget: SearchBudget

    @property
    def degenerate(self) -> bool:
        return self.status == DEGENERATE


def _difference_basis(points: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Orthonormal basis (rows) of span{p - p0}; empty when there is one point."""
    P = np.asarray(sorted(points), dtype=float).reshape(-1, n)
    D = P[1:] - P[0]
    if D.size == 0:
        return np.zeros((0, n))
    u, s, vt = np.linalg.svd(D, full_matrices=False)
    r = int(np.sum(s > 1e-9 * max(s.max(), 1.0)))
    return vt[:r]


def slice_projector(f_face: MixedPolynomial):
    """Move points along their torus-action orbit so log|z| lies in span{p - p0}."""
    n = f_face.n
    V = _difference_basis(f_face.support_points(), n)
    Pv = V.T @ V

    def project(X):
        z = split(X, n)
        mod = np.abs(z)
        safe = mod > 0
        logm = np.log(np.where(safe, mod, 1.0))
        target = logm @ Pv
        scale = np.where(safe, np.exp(target - logm), 1.0)
        z = z * scale
        X = X.copy()
        X[:, :n], X[:, n : 2 * n] = z.real, z.imag
        return X

    return project


def _seeds(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    mod = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=(count, n)))
    z = mod * np.exp(2j * np.pi * rng.uniform(size=(count, n)))
    theta = rng.uniform(0.0, 2 * np.pi, size=count)
    return pack(z, theta)


def verify_witness(f_face: MixedPolynomial, z, mode: str, tol: float, torus_margin: float) -> bool:
    """Recheck a witness from scratch with the pointwise regularity code."""
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        return False
    mod = np.abs(z)
    if np.any(mod < torus_margin) or np.any(mod > 1.0 / torus_margin):
        return False
    scale = gradient_scale(f_face, z)
    if nu(f_face, z) > tol * scale:
        return False
    if mode == NONDEGENERATE_TEST and abs(f_face(z)) > tol * scale:
        return False
    return True


def _search(f_face: MixedPolynomial, mode: str, opts: SearchOptions, face: Optional[Face]) -> FaceVerdict:
    if f_face.is_zero:
        raise DegenerateInputError("the face polynomial is zero")
    n = f_face.n
    rng = np.random.default_rng(opts.seed)
    X0 = _seeds(n, opts.starts, rng)
    value_weight = 1.0 if mode == NONDEGENERATE_TEST else 0.0
    fun = singular_system(f_face, free_theta=True, value_weight=value_weight)
    project = slice_projector(f_face) if opts.use_slice else None

    def target(X):
        z = split(X, n)
        _, fz, fzb = f_face.value_and_gradients(z)
        return 0.1 * opts.tol * (1 + np.linalg.norm(fz, axis=1) + np.linalg.norm(fzb, axis=1))

    result = levenberg_marquardt(fun, X0, target, max_iter=opts.max_iter, project=project)
    budget = SearchBudget(opts.starts, result.iterations, opts.seed)
    z_all = split(result.X, n)
    candidates = []
    for k in np.flatnonzero(result.reached):
        z = z_all[k]
        if verify_witness(f_face, z, mode, opts.tol, opts.torus_margin):
            key = (float(result.residual[k]), tuple(np.round(np.r_[z.real, z.imag], 12)))
            candidates.append((key, k))
    if not candidates:
        return FaceVerdict(face, mode, PRESUMED, None, budget)
    _, k = min(candidates)
    z = z_all[k]
    a, b = f_face.value_and_gradients(z)[1].conj(), f_face.value_and_gradients(z)[2]
    theta = float(best_phase(a, b))
    witness = CriticalWitness(
        z=tuple(complex(v) for v in z),
        theta=theta,
        lam=0.0,
        residual=float(nu(f_face, z)),
        value=complex(f_face(z)),
    )
    return FaceVerdict(face, mode, DEGENERATE, witness, budget)


def strong_degeneracy_witness(f_face: MixedPolynomial, opts: SearchOptions = SearchOptions(), face: Optional[Face] = None) -> FaceVerdict:
    """Search for z in the torus with nu(f_face, z) = 0."""
    return _search(f_face, STRONG_TEST, opts, face)


def degeneracy_witness(f_face: MixedPolynomial, opts: SearchOptions = SearchOptions(), face: Optional[Face] = None) -> FaceVerdict:
    """Search for z in the torus with nu(f_face, z) = 0 and f_face(z) = 0."""
    return _search(f_face, NONDEGENERATE_TEST, opts, face)


@dataclass
class NondegReport:
    faces: List[Face]
    nondegenerate: Dict[Face, FaceVerdict] = field(default_factory=dict)
    strong: Dict[Face, FaceVerdict] = field(default_factory=dict)

    @property
    def is_nondegenerate(self) -> bool:
        return all(not v.degenerate for v in self.nondegenerate.values())

    @property
    def is_strongly_nondegenerate(self) -> bool:
        return all(not v.degenerate for v in self.strong.values())


def check_newton_nondegenerate(f: MixedPolynomial, opts: SearchOptions = SearchOptions()) -> NondegReport:
    """Run both searches on every face of Gamma^+(f), in increasing dimension.

    A degenerate face settles the aggregate verdict, yet every face is still
    searched so that the report is complete.
    """
    if f.is_zero or f.is_constant:
        raise DegenerateInputError("non-degeneracy needs a non-constant polynomial")
    faces = sorted(geometry.gamma_plus(f), key=lambda F: (F.dim, F.vertices))
    report = NondegReport(faces=faces)
    for k, F in enumerate(faces):
        f_face = geometry.restrict_to_face(f, F)
        sub = SearchOptions(opts.starts, opts.max_iter, opts.seed + k, opts.tol, opts.torus_margin, opts.use_slice)
        report.strong[F] = strong_degeneracy_witness(f_face, sub, F)
        report.nondegenerate[F] = degeneracy_witness(f_face, sub, F)
    return report


def quadratic_oracle(a: complex, b: complex, c: complex) -> bool:
    """(|a|^2 - |c|^2)^2 > |conj(a) b - c conj(b)|^2 for f = a z^2 + b z zbar + c zbar^2."""
    a, b, c = complex(a), complex(b), complex(c)
    lhs = (abs(a) ** 2 - abs(c) ** 2) ** 2
    rhs = abs(a.conjugate() * b - c * b.conjugate()) ** 2
    return lhs > rhs


def quadratic_margin(a: complex, b: complex, c: complex) -> float:
    """Signed gap between the two sides of the quadratic inequality."""
    a, b, c = complex(a), complex(b), complex(c)
    return (abs(a) ** 2 - abs(c) ** 2) ** 2 - abs(a.conjugate() * b - c * b.conjugate()) ** 2


def quadratic(a: complex, b: complex, c: complex) -> MixedPolynomial:
    return MixedPolynomial(1, {((2,), (0,)): a, ((1,), (1,)): b, ((0,), (2,)): c})
