"""Exact lattice polytopes attached to a mixed polynomial.

All computations here use integers and ``Fraction``; lattice input keeps every
supporting functional integral.  Hulls are built by brute-force enumeration of
supporting hyperplanes through affinely independent point subsets, which is
fine for the sizes this package targets (tens of points, n <= 4 or so).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ._lp import is_feasible, solve_lp
from .polynomial import DegenerateInputError, MixedPolynomial

Point = Tuple[int, ...]

# int64 stays exact well beyond desk-scale coordinates; refuse anything near overflow.
_MAX_COORD = 2**12


# -- exact linear algebra helpers ------------------------------------------

def _rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    M = [[Fraction(v) for v in r] for r in rows]
    pivots: List[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free integer elimination."""
    M = [[int(v) for v in r] for r in rows]
    if not M:
        return 0
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                q = M[i][c]
                row = [p * a - q * b for a, b in zip(M[i], M[r])]
                g = reduce(gcd, row, 0)
                M[i] = [v // g for v in row] if g > 1 else row
        r += 1
        if r == len(M):
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span (0 for one point)."""
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def primitive(v: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints) if g else tuple(ints)


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Tuple[int, ...]]:
    """Integer basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    R, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for r, pc in enumerate(piv):
            x[pc] = -R[r][fc]
        basis.append(primitive(x))
    return basis


def _det(M: np.ndarray) -> np.ndarray:
    """Integer determinants of a stack of k x k matrices (Laplace expansion)."""
    k = M.shape[-1]
    if k == 0:
        return np.ones(M.shape[:-2], dtype=np.int64)
    if k == 1:
        return M[..., 0, 0]
    if k == 2:
        return M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]
    out = np.zeros(M.shape[:-2], dtype=np.int64)
    for j in range(k):
        minor = np.delete(np.delete(M, 0, axis=-2), j, axis=-1)
        out = out + (-1) ** j * M[..., 0, j] * _det(minor)
    return out


# -- data types ----------------------------------------------------------

@dataclass(frozen=True)
class LinearFunctional:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if not any(self.coefficients):
            raise ValueError("linear functional must not be identically zero")

    def __call__(self, x: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.coefficients, x))


@dataclass(frozen=True)
class Face:
    """A face of a lattice polytope, identified by its vertex set.

    ``functional`` attains its minimum ``level`` over the parent exactly on this
    face; it is None only for the whole polytope when that is full-dimensional.
    """

    vertices: Tuple[Point, ...]
    points: Tuple[Point, ...]
    dim: int
    functional: Optional[Tuple[int, ...]] = field(default=None, compare=False)
    level: Optional[Fraction] = field(default=None, compare=False)
    contains_origin: bool = field(default=False, compare=False)
    on_gamma_plus: bool = field(default=False, compare=False)
    bad: bool = field(default=False, compare=False)
    witness: Optional[Tuple[int, ...]] = field(default=None, compare=False)
    parent: Optional[str] = field(default=None, compare=False)

    @property
    def key(self) -> FrozenSet[Point]:
        return frozenset(self.vertices)

    def __contains__(self, x: Sequence[int]) -> bool:
        return tuple(x) in set(self.points)


class LatticePolytope:
    """Convex hull of finitely many lattice points with its full face lattice."""

    def __init__(self, points: Iterable[Sequence[int]], kind: str = "hull"):
        pts = sorted({tuple(int(v) for v in p) for p in points})
        if not pts:
            raise ValueError("polytope needs at least one point")
        self.n = len(pts[0])
        if any(len(p) != self.n for p in pts):
            raise ValueError("points must share a dimension")
        if max(abs(v) for p in pts for v in p) > _MAX_COORD:
            raise ValueError("coordinates too large for exact integer hull")
        self.kind = kind
        self.points: Tuple[Point, ...] = tuple(pts)
        self.dim = affine_rank(pts)
        self._build()

    # -- construction ---------------------------------------------------
    def _build(self) -> None:
        P = np.array(self.points, dtype=np.int64)
        m, n, d = len(self.points), self.n, self.dim
        full = (1 << m) - 1
        masks: List[int] = []
        normals: Dict[int, np.ndarray] = {}  # facet mask -> ambient inner normal
        if d >= 1:
            # coordinate subset on which the projection of the affine hull is injective
            diffs = (P - P[0]).tolist()
            cols: List[int] = []
            for c in range(n):
                if rank([[r[j] for j in cols + [c]] for r in diffs]) > len(cols):
                    cols.append(c)
                if len(cols) == d:
                    break
            Q = P[:, cols]
            if d == 1:
                cand = np.array([[1], [-1]], dtype=np.int64)
            else:
                combos = np.array(list(combinations(range(m), d)), dtype=np.int64)
                D = Q[combos[:, 1:]] - Q[combos[:, [0]]]  # (K, d-1, d)
                cand = np.stack(
                    [(-1) ** j * _det(np.delete(D, j, axis=2)) for j in range(d)], axis=1
                )
                cand = cand[np.any(cand != 0, axis=1)]
                g = np.gcd.reduce(np.abs(cand), axis=1)
                cand = np.unique(cand // g[:, None], axis=0)
            cand = np.concatenate([cand, -cand])  # inner normals: minimum side
            vals = Q @ cand.T  # (m, K)
            on = vals == vals.min(axis=0)
            keep = on.sum(axis=0) >= d
            cand, on = cand[keep], on[:, keep]
            _, first = np.unique(np.packbits(on, axis=0), axis=1, return_index=True)
            for k in sorted(first):
                idx = np.nonzero(on[:, k])[0]
                if affine_rank([tuple(Q[i]) for i in idx]) != d - 1:
                    continue
                mask = sum(1 << int(i) for i in idx)
                if mask not in normals:
                    amb = np.zeros(n, dtype=np.int64)
                    amb[cols] = cand[k]
                    normals[mask] = amb
                    masks.append(mask)
        facets = list(masks)
        lattice = set(facets)
        frontier = set(facets)
        while frontier:
            new = set()
            for F in frontier:
                for G in facets:
                    H = F & G
                    if H and H not in lattice:
                        new.add(H)
            lattice |= new
            frontier = new
        lattice.add(full)

        def members(mask: int) -> List[int]:
            return [i for i in range(m) if mask >> i & 1]

        vertex_idx = sorted(i for mask in lattice for i in members(mask) if mask == 1 << i)
        if d == 0:
            vertex_idx = [0]
        self.vertex_indices: Tuple[int, ...] = tuple(vertex_idx)
        self.vertices: Tuple[Point, ...] = tuple(self.points[i] for i in vertex_idx)
        vset = set(vertex_idx)

        faces = []
        for mask in lattice:
            idx = members(mask)
            pts = tuple(self.points[i] for i in idx)
            verts = tuple(self.points[i] for i in idx if i in vset)
            if mask == full:
                if d < n:
                    func = nullspace([[a - b for a, b in zip(p, self.points[0])] for p in self.points[1:]], n)[0]
                else:
                    func = None
            else:
                func = tuple(int(v) for v in sum(normals[F] for F in facets if F & mask == mask))
            level = None if func is None else Fraction(sum(a * b for a, b in zip(func, pts[0])))
            zero = (0,) * n
            faces.append(
                Face(
                    vertices=verts,
                    points=pts,
                    dim=affine_rank(list(verts)),
                    functional=func,
                    level=level,
                    contains_origin=zero in verts,
                    parent=self.kind,
                )
            )
        faces.sort(key=lambda F: (F.dim, sorted(F.vertices)))
        self.faces: Tuple[Face, ...] = tuple(faces)
        self._by_key = {F.key: F for F in faces}
        self._by_points = {frozenset(F.points): F for F in faces}

    # -- queries --------------------------------------------------------
    def face(self, vertices: Iterable[Sequence[int]]) -> Face:
        key = frozenset(tuple(int(v) for v in p) for p in vertices)
        try:
            return self._by_key[key]
        except KeyError:
            raise KeyError(f"{sorted(key)} is not the vertex set of a face of this polytope") from None

    def has_face(self, face: Face) -> bool:
        return face.key in self._by_key

    @property
    def whole(self) -> Face:
        return self.faces[-1]

    @property
    def facets(self) -> Tuple[Face, ...]:
        return tuple(F for F in self.faces if F.dim == self.dim - 1)

    def min_face(self, p: Sequence[int]) -> Tuple[Face, Fraction]:
        """Largest face on which l_p(x) = p.x attains its minimum, and that minimum."""
        p = LinearFunctional(tuple(int(v) for v in p))
        values = [p(x) for x in self.points]
        d = min(values)
        on = frozenset(x for x, v in zip(self.points, values) if v == d)
        return self._by_points[on], Fraction(d)

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"


# -- polynomial-level operations -------------------------------------------

def _nonzero(f: MixedPolynomial) -> None:
    if f.is_zero:
        raise DegenerateInputError("zero polynomial has empty support")


def support(f: MixedPolynomial) -> FrozenSet[Point]:
    """supp(f) = {nu + mu : c[nu, mu] != 0}."""
    _nonzero(f)
    return frozenset(f.support_points())


def support_hull(f: MixedPolynomial) -> LatticePolytope:
    """conv(supp(f) minus the origin)."""
    _nonzero(f)
    zero = (0,) * f.n
    pts = [p for p in f.support_points() if p != zero]
    if not pts:
        raise DegenerateInputError("support is contained in {0}")
    return LatticePolytope(pts, kind="support_hull")


def newton_polyhedron(f: MixedPolynomial) -> LatticePolytope:
    """Gamma_0(f) = conv({0} and supp(f))."""
    _nonzero(f)
    return LatticePolytope(list(f.support_points()) + [(0,) * f.n], kind="gamma0")


def gamma_plus(f: MixedPolynomial) -> List[Face]:
    """Faces of Gamma_0(f), of every dimension, that avoid the origin."""
    G0 = newton_polyhedron(f)
    return [replace(F, on_gamma_plus=True) for F in G0.faces if not F.contains_origin]


def is_convenient(f: MixedPolynomial) -> bool:
    _nonzero(f)
    pts = f.support_points()
    return all(
        any(p[i] > 0 and all(p[j] == 0 for j in range(f.n) if j != i) for p in pts)
        for i in range(f.n)
    )


def span_contains_origin(face: Face) -> bool:
    """Whether the affine span of the face passes through 0."""
    return rank([list(v) for v in face.vertices]) == face.dim


def _mixed_sign_witness(face: Face, outside: Sequence[Point], n: int) -> Optional[Tuple[int, ...]]:
    # a = a_plus - a_minus; variables (a_plus, a_minus) >= 0
    A_eq = [list(v) + [-x for x in v] for v in face.vertices]
    b_eq = [0] * len(A_eq)
    base_ub = [[-x for x in w] + list(w) for w in outside]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            A_ub = list(base_ub)
            row_i = [0] * (2 * n)
            row_i[i], row_i[n + i] = -1, 1  # a_i >= 1
            row_j = [0] * (2 * n)
            row_j[j], row_j[n + j] = 1, -1  # a_j <= -1
            A_ub += [row_i, row_j]
            b_ub = [-1] * len(A_ub)
            x = is_feasible(A_eq, b_eq, A_ub, b_ub, nvars=2 * n)
            if x is not None:
                return primitive([x[k] - x[n + k] for k in range(n)])
    return None


def check_bad_witness(face: Face, polytope: LatticePolytope, a: Sequence[int]) -> bool:
    """Re-check the three defining conditions of a bad-face witness, exactly."""
    dot = lambda u: sum(x * y for x, y in zip(a, u))  # noqa: E731
    outside = [w for w in polytope.vertices if w not in face.key]
    return (
        all(dot(v) == 0 for v in face.vertices)
        and all(dot(w) > 0 for w in outside)
        and any(x < 0 for x in a)
        and any(x > 0 for x in a)
    )


def bad_faces(f: MixedPolynomial) -> List[Face]:
    """Bad faces of conv(supp(f) minus 0), each carrying one witness functional."""
    Q = support_hull(f)
    out = []
    for F in Q.faces:
        if not span_contains_origin(F):
            continue
        outside = [w for w in Q.vertices if w not in F.key]
        a = _mixed_sign_witness(F, outside, f.n)
        if a is not None:
            out.append(replace(F, bad=True, witness=a))
    return out


def is_face_of_gamma_plus(f: MixedPolynomial, face: Face) -> bool:
    """Whether a face of conv(supp(f) minus 0) is also a face of Gamma^+(f)."""
    Q = support_hull(f)
    if not Q.has_face(face):
        raise ValueError("face does not belong to conv(supp(f) minus 0)")
    G0 = newton_polyhedron(f)
    return G0.has_face(face) and not G0.face(face.vertices).contains_origin


def restrict_to_face(f: MixedPolynomial, face: Face) -> MixedPolynomial:
    """f_Delta: the terms of f whose exponent sum lies on the face."""
    pts = f.support_points()
    if not set(face.vertices) <= pts | {(0,) * f.n}:
        raise ValueError("face is not associated with this polynomial")
    known = newton_polyhedron(f).has_face(face)
    if not known and any(p != (0,) * f.n for p in pts):
        known = support_hull(f).has_face(face)
    if not known:
        raise ValueError("face is not a face of Gamma_0(f) or conv(supp(f) minus 0)")
    if face.functional is None:
        return f
    a, lvl = face.functional, face.level
    return f.restrict_to_support(p for p in pts if sum(x * y for x, y in zip(a, p)) == lvl)


def weighted_homogeneous_weights(points: Sequence[Point], n: int):
    """Positive integer weights q (gcd 1) and degree m with q.p = m on all points, or None."""
    points = [tuple(p) for p in points]
    if not points or any(not any(p) for p in points):
        return None
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    # q = 1 + s with s >= 0; diffs . s = -diffs . 1; minimise sum(s)
    b_eq = [-sum(r) for r in diffs]
    status, s = solve_lp([1] * n, diffs, b_eq)
    if status != "optimal":
        return None
    q = primitive([1 + v for v in s])
    m = sum(a * b for a, b in zip(q, p0))
    return q, m
