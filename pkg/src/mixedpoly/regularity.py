"""Pointwise regularity quantities of a mixed polynomial.

With a = conj(df/dz) and b = df/dzbar at z, the real differential of
(Re f, Im f) satisfies ||alpha dRe f + beta dIm f|| = ||mu a + conj(mu) b||
for mu = alpha + i beta on the unit circle.  Everything below is phrased in
terms of the vector w(theta) = e^{i theta} a + e^{-i theta} b.

All functions accept a single point of shape (n,) or a batch (..., n).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polynomial import MixedPolynomial

DEFAULT_TOL = 1e-9


def _point(f: MixedPolynomial, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != f.n:
        raise ValueError(f"point dimension does not match n = {f.n}")
    return z


def _scalar(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def gradient_pair(f: MixedPolynomial, z):
    """(conj(df/dz)(z), df/dzbar(z))."""
    z = _point(f, z)
    _, dz, dzb = f.value_and_gradients(z)
    return dz.conj(), dzb


def gradient_scale(f: MixedPolynomial, z):
    """1 + ||df/dz|| + ||df/dzbar||, the yardstick for every zero test."""
    a, b = gradient_pair(f, z)
    return _scalar(1.0 + np.linalg.norm(a, axis=-1) + np.linalg.norm(b, axis=-1))


def real_jacobian(f: MixedPolynomial, z) -> np.ndarray:
    """2 x 2n Jacobian of (Re f, Im f) in the real coordinates (x1, y1, ..., xn, yn)."""
    z = _point(f, z)
    _, dz, dzb = f.value_and_gradients(z)
    dx = dz + dzb
    dy = 1j * (dz - dzb)
    cols = np.stack([dx, dy], axis=-1).reshape(*dz.shape[:-1], 2 * f.n)
    return np.stack([cols.real, cols.imag], axis=-2)


def best_phase(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Phase theta minimising ||e^{i theta} a + e^{-i theta} b||.

    ||w||^2 = ||a||^2 + ||b||^2 + 2 Re(e^{2 i theta} <a, b>) with <a, b> = sum a_k conj(b_k),
    so the minimum sits at 2 theta = pi - arg<a, b>.
    """
    inner = np.sum(a * b.conj(), axis=-1)
    return np.mod((np.pi - np.angle(inner)) / 2.0, 2 * np.pi)


def _w(a, b, theta):
    theta = np.asarray(theta)[..., None]
    return np.exp(1j * theta) * a + np.exp(-1j * theta) * b


def nu(f: MixedPolynomial, z):
    """min over unit mu of ||mu conj(df/dz) + conj(mu) df/dzbar||.

    Equals the smallest singular value of the real Jacobian of (Re f, Im f).
    """
    a, b = gradient_pair(f, z)
    theta = best_phase(a, b)
    return _scalar(np.linalg.norm(_w(a, b, theta), axis=-1))


def nu_with_phase(f: MixedPolynomial, z):
    a, b = gradient_pair(f, z)
    theta = best_phase(a, b)
    return _scalar(np.linalg.norm(_w(a, b, theta), axis=-1)), _scalar(theta)


def is_singular(f: MixedPolynomial, z, tol: float = DEFAULT_TOL):
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = gradient_pair(f, z)
    scale = 1.0 + np.linalg.norm(a, axis=-1) + np.linalg.norm(b, axis=-1)
    value = np.linalg.norm(_w(a, b, best_phase(a, b)), axis=-1)
    return _scalar(value <= tol * scale)


def kos_quantity(f: MixedPolynomial, z):
    """(1 + ||z||) nu(f, z)."""
    z = _point(f, z)
    return _scalar((1.0 + np.linalg.norm(z, axis=-1)) * np.asarray(nu(f, z)))


def milnor_residual(f: MixedPolynomial, z):
    """Distance of w(theta) from the real line R z, minimised over theta.

    Returns (r, theta, lam) where lam is the real projection coefficient of the
    minimising w(theta) on z.  r vanishes exactly on the Milnor set.
    """
    z = _point(f, z)
    znorm2 = np.sum(np.abs(z) ** 2, axis=-1)
    if np.any(znorm2 == 0):
        raise ValueError("the Milnor residual is undefined at z = 0")
    a, b = gradient_pair(f, z)
    u1, u2 = a + b, 1j * (a - b)  # w(theta) = cos(theta) u1 + sin(theta) u2

    def project(u):
        c = np.sum((u * z.conj()).real, axis=-1) / znorm2
        return u - c[..., None] * z

    M = np.stack([project(u1), project(u2)], axis=-1)  # complex (..., n, 2)
    R = np.concatenate([M.real, M.imag], axis=-2)  # real (..., 2n, 2)
    _, s, vt = np.linalg.svd(R)
    v = vt[..., -1, :]
    theta = np.mod(np.arctan2(v[..., 1], v[..., 0]), 2 * np.pi)
    w = _w(a, b, theta)
    lam = np.sum((w * z.conj()).real, axis=-1) / znorm2
    r = np.linalg.norm(w - lam[..., None] * z, axis=-1)
    # At singular points several phases give r = 0; report the one with w = 0 (lam = 0).
    theta_s = best_phase(a, b)
    w_s = _w(a, b, theta_s)
    scale = 1.0 + np.linalg.norm(a, axis=-1) + np.linalg.norm(b, axis=-1)
    singular = np.linalg.norm(w_s, axis=-1) <= DEFAULT_TOL * scale
    if np.any(singular):
        lam_s = np.sum((w_s * z.conj()).real, axis=-1) / znorm2
        r_s = np.linalg.norm(w_s - lam_s[..., None] * z, axis=-1)
        theta, lam, r = (np.where(singular, x_s, x) for x_s, x in ((theta_s, theta), (lam_s, lam), (r_s, r)))
    return _scalar(r), _scalar(theta), _scalar(lam)


@dataclass(frozen=True)
class RegularityReading:
    point: np.ndarray
    nu: float
    milnor_residual: float
    kos_quantity: float
    best_phase: float
    best_multiplier: float


def reading(f: MixedPolynomial, z) -> RegularityReading:
    z = _point(f, z)
    if z.ndim != 1:
        raise ValueError("reading takes a single point")
    value = float(nu(f, z))
    r, theta, lam = milnor_residual(f, z)
    return RegularityReading(
        point=z.copy(),
        nu=value,
        milnor_residual=float(r),
        kos_quantity=(1.0 + float(np.linalg.norm(z))) * value,
        best_phase=float(theta),
        best_multiplier=float(lam),
    )
