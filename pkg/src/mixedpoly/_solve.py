"""Batched Levenberg-Marquardt on the real forms of the critical-point systems.

Unknowns are stacked as X = [Re z (n), Im z (n), theta, lambda?] per start.
Residuals are complex vectors G(z, theta, lambda) plus optional real rows; the
solver works on [Re G, Im G, real rows].  Derivatives come from the second
Wirtinger derivatives of f, so every Jacobian is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .polynomial import MixedPolynomial, PolynomialSystem


class Derivatives:
    """f, its first and second Wirtinger derivatives, evaluated on batches."""

    def __init__(self, f: MixedPolynomial):
        self.f = f
        n = self.n = f.n
        dz = [f.dz(k) for k in range(n)]
        dzb = [f.dzbar(k) for k in range(n)]
        polys = [f, *dz, *dzb]
        polys += [dz[k].dz(j) for k in range(n) for j in range(n)]  # H1[k, j] = d_j d_k f
        polys += [dz[k].dzbar(j) for k in range(n) for j in range(n)]  # H2[k, j] = dbar_j d_k f
        polys += [dzb[k].dzbar(j) for k in range(n) for j in range(n)]  # H3[k, j] = dbar_j dbar_k f
        self.system = PolynomialSystem(polys)

    def __call__(self, z: np.ndarray):
        n = self.n
        out = self.system(z)
        shape = out.shape[:-1]
        f = out[..., 0]
        fz = out[..., 1 : n + 1]
        fzb = out[..., n + 1 : 2 * n + 1]
        o = 2 * n + 1
        H1 = out[..., o : o + n * n].reshape(*shape, n, n)
        H2 = out[..., o + n * n : o + 2 * n * n].reshape(*shape, n, n)
        H3 = out[..., o + 2 * n * n :].reshape(*shape, n, n)
        return f, fz, fzb, H1, H2, H3


@lru_cache(maxsize=64)
def derivatives(f: MixedPolynomial) -> Derivatives:
    return Derivatives(f)


def real_columns(Gz: np.ndarray, Gzb: np.ndarray) -> np.ndarray:
    """Derivatives of a complex map in (x_1..x_n, y_1..y_n) from its z / zbar parts."""
    return np.concatenate([Gz + Gzb, 1j * (Gz - Gzb)], axis=-1)


def w_parts(d, theta: np.ndarray):
    """w(theta) = e^{i theta} conj(df/dz) + e^{-i theta} df/dzbar with its derivatives.

    Returns w (B, n), dw/d(x, y) (B, n, 2n) and dw/dtheta (B, n).
    """
    _, fz, fzb, H1, H2, H3 = d
    e = np.exp(1j * theta)[:, None]
    A, B = fz.conj(), fzb
    w = e * A + e.conj() * B
    E = e[..., None]
    Wz = E * H2.conj() + E.conj() * np.swapaxes(H2, -1, -2)
    Wzb = E * H1.conj() + E.conj() * H3
    dtheta = 1j * (e * A - e.conj() * B)
    return w, real_columns(Wz, Wzb), dtheta


def split(X: np.ndarray, n: int):
    z = X[:, :n] + 1j * X[:, n : 2 * n]
    return z


def pack(z: np.ndarray, *extra) -> np.ndarray:
    cols = [z.real, z.imag] + [np.asarray(e, dtype=float)[:, None] for e in extra]
    return np.concatenate(cols, axis=1)


def stack_real(G: np.ndarray, JG: np.ndarray):
    """Complex residual rows (B, m) and Jacobian (B, m, p) -> real rows."""
    return (
        np.concatenate([G.real, G.imag], axis=1),
        np.concatenate([JG.real, JG.imag], axis=1),
    )


@dataclass
class LMResult:
    X: np.ndarray
    residual: np.ndarray  # Euclidean norm of the final residual per start
    converged: np.ndarray  # reached the target or stalled at a stationary point
    reached: np.ndarray  # residual <= target
    iterations: int


def levenberg_marquardt(
    fun: Callable[[np.ndarray, Optional[np.ndarray]], tuple],
    X0: np.ndarray,
    target,
    params: Optional[np.ndarray] = None,
    max_iter: int = 200,
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    stall_limit: int = 6,
) -> LMResult:
    """Minimise ||F(X)|| for a batch of starts.

    ``fun(X, P)`` returns F (B, m) and J (B, m, p); P holds fixed per-start
    parameters (rows aligned with X) or is None.  ``target`` is the residual
    at which a start counts as solved: a scalar, one value per start, or a
    callable re-evaluated on every accepted point.  ``project`` (if given) maps a
    trial point back onto the constraint manifold after every step.
    """
    X = np.array(X0, dtype=float)
    if project is not None:
        X = project(X)
    B, p = X.shape
    target_of = target if callable(target) else (lambda Y, t=np.asarray(target, dtype=float): np.broadcast_to(t, (len(Y),)))
    target = np.array(target_of(X), dtype=float)
    P = None if params is None else np.asarray(params)
    F, J = fun(X, P)
    cost = np.einsum("bm,bm->b", F, F)
    mu = np.full(B, 1e-3)
    stalls = np.zeros(B, dtype=int)
    active = np.sqrt(cost) > target
    stationary = np.zeros(B, dtype=bool)
    it = 0
    eye = np.eye(p)
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Fa, Ja = F[idx], J[idx]
        JtJ = np.einsum("bmi,bmj->bij", Ja, Ja)
        g = np.einsum("bmi,bm->bi", Ja, Fa)
        diag = np.einsum("bii->bi", JtJ)
        floor = 1e-12 * np.maximum(diag.max(axis=1, keepdims=True), 1e-300)
        D = np.maximum(diag, floor)
        M = JtJ + (mu[idx, None] * D)[:, :, None] * eye
        try:
            step = -np.linalg.solve(M, g[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -np.stack([np.linalg.lstsq(m, v, rcond=None)[0] for m, v in zip(M, g)])
        trial = X[idx] + step
        if project is not None:
            trial = project(trial)
        Ft, Jt = fun(trial, None if P is None else P[idx])
        ct = np.einsum("bm,bm->b", Ft, Ft)
        ok = np.isfinite(ct) & (ct < cost[idx])
        good, bad = idx[ok], idx[~ok]
        X[good], F[good], J[good] = trial[ok], Ft[ok], Jt[ok]
        rel = (cost[good] - ct[ok]) / np.maximum(cost[good], 1e-300)
        cost[good] = ct[ok]
        if good.size:
            target[good] = target_of(X[good])
        mu[good] = np.maximum(mu[good] / 3.0, 1e-12)
        mu[bad] = mu[bad] * 4.0
        small = np.zeros(B, dtype=bool)
        small[good] = rel < 1e-10
        small[bad] = mu[bad] > 1e8
        stalls = np.where(small, stalls + 1, np.where(np.isin(np.arange(B), good), 0, stalls))
        done = np.sqrt(cost) <= target
        stuck = stalls >= stall_limit
        stationary |= stuck & ~done
        active &= ~(done | stuck)
    res = np.sqrt(cost)
    reached = res <= target
    return LMResult(X, res, reached | stationary, reached, it)


# -- systems ------------------------------------------------------------


def sphere_projector(n: int, R: float):
    def project(X):
        z = split(X, n)
        norm = np.linalg.norm(z, axis=1)
        norm = np.where(norm == 0, 1.0, norm)
        z = z * (R / norm)[:, None]
        X = X.copy()
        X[:, :n], X[:, n : 2 * n] = z.real, z.imag
        return X

    return project


def singular_system(f: MixedPolynomial, free_theta: bool = True, value_weight: float = 0.0):
    """w(theta) = 0 (and optionally f = 0).

    With ``free_theta`` the unknowns are [x, y, theta]; otherwise [x, y] and
    theta is the per-start parameter P[:, 0].
    """
    d_of = derivatives(f)
    n = f.n
    theta = None if free_theta else True

    def fun(X, P=None):
        z = split(X, n)
        th = X[:, 2 * n] if theta is None else P[:, 0]
        d = d_of(z)
        w, Wr, Wt = w_parts(d, th)
        G, JG = w, Wr
        if theta is None:
            JG = np.concatenate([Wr, Wt[..., None]], axis=2)
        if value_weight:
            fv, fz, fzb = d[0], d[1], d[2]
            row = real_columns(fz, fzb)
            if theta is None:
                row = np.concatenate([row, np.zeros((len(X), 1))], axis=1)
            G = np.concatenate([G, value_weight * fv[:, None]], axis=1)
            JG = np.concatenate([JG, value_weight * row[:, None, :]], axis=1)
        return stack_real(G, JG)

    return fun


def milnor_system(f: MixedPolynomial, R: float, free_theta: bool = True, kappa: float = 0.0):
    """lambda z - w(theta) = 0 on the sphere ||z|| = R.

    Unknowns are [x, y, theta, lambda], or [x, y, lambda] with theta frozen at
    the per-start parameter P[:, 0].  With kappa > 0 the extra rows
    kappa (f - anchor) pull each start towards its anchor value P[:, -1].
    """
    d_of = derivatives(f)
    n = f.n

    def fun(X, P=None):
        z = split(X, n)
        th = X[:, 2 * n] if free_theta else P[:, 0].real
        lam = X[:, -1]
        d = d_of(z)
        w, Wr, Wt = w_parts(d, th)
        G = lam[:, None] * z - w
        ident = np.concatenate([np.eye(n), 1j * np.eye(n)], axis=1)
        cols = [lam[:, None, None] * ident - Wr]
        if free_theta:
            cols.append(-Wt[..., None])
        cols.append(z[..., None])
        JG = np.concatenate(cols, axis=2)
        extra = JG.shape[2] - 2 * n
        if kappa:
            fv, fz, fzb = d[0], d[1], d[2]
            row = np.concatenate([real_columns(fz, fzb), np.zeros((len(X), extra))], axis=1)
            G = np.concatenate([G, kappa * (fv - P[:, -1])[:, None]], axis=1)
            JG = np.concatenate([JG, kappa * row[:, None, :]], axis=1)
        Fr, Jr = stack_real(G, JG)
        sq = np.sum(np.abs(z) ** 2, axis=1)
        s = (sq - R * R) / (2 * R)
        js = np.concatenate([X[:, :n] / R, X[:, n : 2 * n] / R, np.zeros((len(X), extra))], axis=1)
        return np.concatenate([Fr, s[:, None]], axis=1), np.concatenate([Jr, js[:, None, :]], axis=1)

    return fun


def kos_system(f: MixedPolynomial, R: float, kappa: float = 0.0):
    """w(theta) on the sphere ||z|| = R: least squares gives the minimum of nu there.

    Anchoring works as in :func:`milnor_system`.
    """
    d_of = derivatives(f)
    n = f.n

    def fun(X, P=None):
        anchor = None if P is None else P[:, -1]
        z = split(X, n)
        d = d_of(z)
        w, Wr, Wt = w_parts(d, X[:, 2 * n])
        G = w
        JG = np.concatenate([Wr, Wt[..., None]], axis=2)
        if anchor is not None and kappa:
            fv, fz, fzb = d[0], d[1], d[2]
            row = np.concatenate([real_columns(fz, fzb), np.zeros((len(X), 1))], axis=1)
            G = np.concatenate([G, kappa * (fv - anchor)[:, None]], axis=1)
            JG = np.concatenate([JG, kappa * row[:, None, :]], axis=1)
        Fr, Jr = stack_real(G, JG)
        sq = np.sum(np.abs(z) ** 2, axis=1)
        s = (sq - R * R) / (2 * R)
        js = np.concatenate([X[:, :n] / R, X[:, n : 2 * n] / R, np.zeros((len(X), 1))], axis=1)
        return np.concatenate([Fr, s[:, None]], axis=1), np.concatenate([Jr, js[:, None, :]], axis=1)

    return fun


def check_jacobian(fun, X: np.ndarray, P=None, h: float = 1e-6) -> float:
    """Largest central-difference discrepancy of fun's Jacobian (a test helper)."""
    F, J = fun(X, P)
    err = 0.0
    for k in range(X.shape[1]):
        E = np.zeros_like(X)
        E[:, k] = h
        Fp, _ = fun(X + E, P)
        Fm, _ = fun(X - E, P)
        err = max(err, float(np.max(np.abs((Fp - Fm) / (2 * h) - J[:, :, k]))))
    return err
