"""Independent reference computations used by the tests.

Nothing here calls the package's numerical kernels: values are produced by
brute force (phase grids, finite differences, complex-step derivatives of
the real pair, scipy LPs) so that agreement is meaningful.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog, minimize_scalar

from mixedpoly.polynomial import MixedPolynomial, mixed_to_real_pair

EX1 = "z1*z2 + zb1^2*zb2^2"
EX2 = "z1 + z2 + zb1^2 + zb2^2"
FAMILY_2_1 = "z1 - 3*z1^5*z2^2 + 2*z1^7*z2^3 + z2*z3"


def ex1_curve(m: int) -> np.ndarray:
    lam = np.exp(2j * np.pi * np.arange(m) / m)
    return 1 / (2 * lam.conj()) + 1 / (4 * lam**2)


def ex2_curve(m: int) -> np.ndarray:
    a = np.exp(2j * np.pi * np.arange(m) / m)
    return a + 0.5 * a.conj() ** 2


def dist_to_curve(values, curve, m: int = 4096) -> np.ndarray:
    """Distance from each value to a closed curve t -> curve(t), t in [0, 2 pi), refined by Brent."""
    ts = 2 * np.pi * np.arange(m) / m
    pts = curve(ts)
    out = []
    for v in np.asarray(values, complex).reshape(-1):
        k = int(np.argmin(np.abs(pts - v)))
        h = 2 * np.pi / m
        res = minimize_scalar(lambda t: abs(curve(np.array([t]))[0] - v), bounds=(ts[k] - h, ts[k] + h),
                              method="bounded", options={"xatol": 1e-13})
        out.append(min(res.fun, abs(pts[k] - v)))
    return np.array(out)


def ex1_param(t):
    lam = np.exp(1j * np.asarray(t))
    return 1 / (2 * lam.conj()) + 1 / (4 * lam**2)


def ex2_param(t):
    a = np.exp(1j * np.asarray(t))
    return a + 0.5 * a.conj() ** 2


def dist_to(values, reference) -> np.ndarray:
    values = np.asarray(values, complex).reshape(-1, 1)
    reference = np.asarray(reference, complex).reshape(1, -1)
    if values.size == 0:
        return np.zeros(0)
    return np.abs(values - reference).min(axis=1)


def random_poly(rng, n: int, nterms: int, deg: int) -> MixedPolynomial:
    terms = {}
    for _ in range(nterms):
        d = int(rng.integers(1, deg + 1))
        e = np.zeros(2 * n, int)
        for _ in range(d):
            e[rng.integers(2 * n)] += 1
        terms[(tuple(e[:n]), tuple(e[n:]))] = complex(rng.normal(), rng.normal())
    return MixedPolynomial(n, terms)


def random_point(rng, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=n) + 1j * rng.normal(size=n))


# -- derivatives ---------------------------------------------------------------


def eval_real(p, v) -> complex:
    """Evaluate a real-pair polynomial {exponent: coeff} at a (possibly complex) vector."""
    return sum(c * np.prod([x**k for x, k in zip(v, e)]) for e, c in p.items())


def real_jacobian_complex_step(f: MixedPolynomial, z, h: float = 1e-20) -> np.ndarray:
    """2 x 2n Jacobian of (Re f, Im f) in (x1, y1, ..., xn, yn), by complex step."""
    g, hh = mixed_to_real_pair(f)
    n = f.n
    v = np.empty(2 * n)
    v[0::2], v[1::2] = np.real(z), np.imag(z)
    J = np.zeros((2, 2 * n))
    for k in range(2 * n):
        vk = v.astype(complex)
        vk[k] += 1j * h
        J[0, k] = np.imag(eval_real(g, vk)) / h
        J[1, k] = np.imag(eval_real(hh, vk)) / h
    return J


def wirtinger_fd(f: MixedPolynomial, z, h: float = 1e-6):
    """Central differences in x and y turned into d/dz = (d/dx - i d/dy)/2 and d/dzbar."""
    z = np.asarray(z, complex)
    dz, dzb = [], []
    for k in range(len(z)):
        e = np.zeros(len(z), complex)
        e[k] = h
        fx = (f(z + e) - f(z - e)) / (2 * h)
        fy = (f(z + 1j * e) - f(z - 1j * e)) / (2 * h)
        dz.append((fx - 1j * fy) / 2)
        dzb.append((fx + 1j * fy) / 2)
    return np.array(dz), np.array(dzb)


def nu_svd(f: MixedPolynomial, z) -> tuple[float, float]:
    J = real_jacobian_complex_step(f, z)
    s = np.linalg.svd(J, compute_uv=False)
    return float(s[-1]), float(s[0])


def wirtinger_cs(f: MixedPolynomial, z):
    """Wirtinger gradients rebuilt from the complex-step real Jacobian."""
    J = real_jacobian_complex_step(f, z)
    fx = J[0, 0::2] + 1j * J[1, 0::2]
    fy = J[0, 1::2] + 1j * J[1, 1::2]
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def _grid_min(obj, m: int) -> float:
    ts = np.linspace(0, 2 * np.pi, m, endpoint=False)
    vals = obj(ts)
    k = int(np.argmin(vals))
    step = 2 * np.pi / m
    # polish in the offset s from the grid point: Brent's tolerance is relative to |s|, and at a
    # kink (a zero minimum) a tolerance relative to |theta| would cost ~1e-8 times the slope
    res = minimize_scalar(lambda s: float(obj(np.array([ts[k] + s]))[0]), bounds=(-step, step),
                          method="bounded", options={"xatol": 1e-14})
    return float(min(res.fun, vals[k]))


def nu_grid(f: MixedPolynomial, z, m: int = 4096) -> float:
    """min over a theta grid of ||e^{i t} conj(df) + e^{-i t} dbar f||, then a bounded scalar polish."""
    dz, dzb = wirtinger_cs(f, z)
    a, b = dz.conj(), dzb
    obj = lambda t: np.linalg.norm(np.exp(1j * t)[:, None] * a + np.exp(-1j * t)[:, None] * b, axis=1)  # noqa: E731
    return _grid_min(obj, m)


def milnor_grid(f: MixedPolynomial, z, m: int = 4096) -> float:
    """Distance of w(theta) to the real line through z, minimised over a theta grid."""
    z = np.asarray(z, complex)
    dz, dzb = wirtinger_cs(f, z)
    a, b = dz.conj(), dzb

    def obj(t):
        w = np.exp(1j * t)[:, None] * a + np.exp(-1j * t)[:, None] * b
        lam = np.real(w @ z.conj()) / np.real(np.vdot(z, z))
        return np.linalg.norm(w - lam[:, None] * z, axis=1)

    return _grid_min(obj, m)


# -- convex geometry -------------------------------------------------------------


def hull_vertices_lp(points) -> set:
    """Extreme points by LP: p is a vertex iff it is not a convex combination of the others."""
    pts = [tuple(p) for p in set(map(tuple, points))]
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        if not others:
            out.add(p)
            continue
        A = np.array(others, float).T
        A_eq = np.vstack([A, np.ones(len(others))])
        b_eq = np.r_[np.array(p, float), 1.0]
        res = linprog(np.zeros(len(others)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if res.status != 0:
            out.add(p)
    return out


def brute_bad_faces_2d(points) -> list:
    """Definition-level bad faces for a planar point set (faces as vertex frozensets).

    Every candidate face is the minimising set of some integer functional in a
    small box; conditions (i) and (ii) are then checked by direct enumeration.
    """
    pts = sorted(set(map(tuple, points)))
    verts = hull_vertices_lp(pts)
    faces = {}
    box = range(-6, 7)
    for a in itertools.product(box, repeat=2):
        vals = {p: a[0] * p[0] + a[1] * p[1] for p in verts}
        lo = min(vals.values())
        F = frozenset(p for p in verts if vals[p] == lo)
        faces.setdefault(F, []).append((a, lo))
    bad = []
    for F, funcs in faces.items():
        M = np.array(sorted(F), float)
        lin = np.linalg.matrix_rank(M)
        aff = np.linalg.matrix_rank(M[1:] - M[0]) if len(M) > 1 else 0
        if lin != aff:
            continue
        ok = any(lo == 0 and min(a) < 0 < max(a) and all(a[0] * w[0] + a[1] * w[1] > 0 for w in verts - F)
                 for a, lo in funcs)
        if ok:
            bad.append(F)
    return bad


def as_fraction(text: str) -> Fraction:
    p, q = text.split("/")
    return Fraction(int(p), int(q))


def random_support(rng, n_max: int = 4, k_max: int = 20, coord_max: int = 4) -> MixedPolynomial:
    """Holomorphic monomials on a random lattice point set (at most k_max points, origin excluded)."""
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(1, k_max + 1))
    pts = {tuple(int(x) for x in rng.integers(0, coord_max + 1, size=n)) for _ in range(k)}
    pts.discard((0,) * n)
    if not pts:
        pts = {(1,) + (0,) * (n - 1)}
    return MixedPolynomial(n, {(p, (0,) * n): 1.0 for p in pts})


def exact_rank(rows) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                t = M[i][col] / M[rank][col]
                M[i] = [a - t * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def span_has_origin(points) -> bool:
    """Whether the affine span of the points passes through 0 (exact)."""
    pts = [tuple(p) for p in points]
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    aff = exact_rank(diffs) if diffs else 0
    return exact_rank(pts) == aff


def exposing_functional(face_points, others):
    """An integer q with q.x constant on face_points and strictly larger on others, or None.

    Found by LP, then re-checked exactly, so a returned q is a certificate.
    """
    F = np.array(sorted(face_points), float)
    O = np.array(sorted(others), float)
    n = F.shape[1]
    # variables (q, t): q.x = t on F, q.x >= t + 1 on O
    A_eq = np.c_[F, -np.ones(len(F))]
    A_ub = np.c_[-O, np.ones(len(O))] if len(O) else None
    b_ub = -np.ones(len(O)) if len(O) else None
    res = linprog(np.zeros(n + 1), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=np.zeros(len(F)),
                  bounds=(None, None), method="highs")
    if res.status != 0:
        return None
    for denom in (1, 2, 3, 4, 6, 12, 60, 840, 27720):
        q = [Fraction(x).limit_denominator(denom) * denom for x in res.x[:n]]
        if any(v.denominator != 1 for v in q):
            continue
        q = [int(v) for v in q]
        level = {sum(a * b for a, b in zip(q, x)) for x in face_points}
        if len(level) == 1 and all(sum(a * b for a, b in zip(q, x)) > next(iter(level)) for x in others):
            return tuple(q)
    return None
