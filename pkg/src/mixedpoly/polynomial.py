"""Mixed polynomials f(z, zbar) = sum c[nu, mu] z^nu zbar^mu over C^n.

Exponents are exact integer tuples; coefficients are complex doubles.
A polynomial is an immutable value: every operation returns a new one.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

Exponent = Tuple[int, ...]
TermKey = Tuple[Exponent, Exponent]
RealPolynomial = Dict[Exponent, float]


class DegenerateInputError(ValueError):
    """Raised when an operation needs a non-zero or non-constant polynomial."""


def _check_exponent(e: Sequence[int], n: int) -> Exponent:
    e = tuple(int(v) for v in e)
    if len(e) != n:
        raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
    if any(v < 0 for v in e):
        raise ValueError(f"exponent {e} has a negative entry")
    return e


class MixedPolynomial:
    """Finite map (nu, mu) -> c with no stored zero coefficient."""

    def __init__(self, n: int, terms: Mapping[TermKey, complex] | Iterable = ()):
        if n < 1:
            raise ValueError("variable count must be >= 1")
        self.n = int(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[TermKey, complex] = {}
        for (nu, mu), c in items:
            key = (_check_exponent(nu, n), _check_exponent(mu, n))
            acc[key] = acc.get(key, 0j) + complex(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MixedPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, c: complex, n: int) -> "MixedPolynomial":
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def variable(cls, i: int, n: int, conjugated: bool = False) -> "MixedPolynomial":
        """The coordinate z_i (or its conjugate), with 1-based index i."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        e = tuple(1 if j == i - 1 else 0 for j in range(n))
        zero = (0,) * n
        return cls(n, {((zero, e) if conjugated else (e, zero)): 1.0})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Sequence[int], Sequence[int], complex]]) -> "MixedPolynomial":
        terms = list(terms)
        if not terms:
            raise ValueError("cannot infer n from an empty term list")
        n = len(terms[0][0])
        return cls(n, [((nu, mu), c) for nu, mu, c in terms])

    # -- basic protocol -------------------------------------------------
    @property
    def terms(self) -> Dict[TermKey, complex]:
        return dict(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float, complex)):
            other = MixedPolynomial.constant(other, self.n)
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        from .parser import format_polynomial

        return f"MixedPolynomial(n={self.n}, {format_polynomial(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(sum(nu) + sum(mu) == 0 for nu, mu in self._terms)

    @property
    def degree(self) -> int:
        return max((sum(nu) + sum(mu) for nu, mu in self._terms), default=0)

    def constant_term(self) -> complex:
        zero = (0,) * self.n
        return self._terms.get((zero, zero), 0j)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MixedPolynomial":
        if isinstance(other, MixedPolynomial):
            if other.n != self.n:
                raise ValueError(f"variable counts differ: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return MixedPolynomial.constant(complex(other), self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + c
        return MixedPolynomial(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[TermKey, complex] = {}
        for (nu1, mu1), c1 in self._terms.items():
            for (nu2, mu2), c2 in other._terms.items():
                key = (
                    tuple(a + b for a, b in zip(nu1, nu2)),
                    tuple(a + b for a, b in zip(mu1, mu2)),
                )
                acc[key] = acc.get(key, 0j) + c1 * c2
        return MixedPolynomial(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MixedPolynomial.constant(1.0, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and structural operations ---------------------------
    def conjugate(self) -> "MixedPolynomial":
        """Swap nu and mu and conjugate coefficients: conj(f)(z) = conj(f(z))."""
        return MixedPolynomial(
            self.n, {(mu, nu): c.conjugate() for (nu, mu), c in self._terms.items()}
        )

    def dz(self, i: int) -> "MixedPolynomial":
        """Formal partial derivative in z_i (0-based), zbar held fixed."""
        out = {}
        for (nu, mu), c in self._terms.items():
            if nu[i]:
                nu2 = nu[:i] + (nu[i] - 1,) + nu[i + 1 :]
                out[(nu2, mu)] = c * nu[i]
        return MixedPolynomial(self.n, out)

    def dzbar(self, i: int) -> "MixedPolynomial":
        out = {}
        for (nu, mu), c in self._terms.items():
            if mu[i]:
                mu2 = mu[:i] + (mu[i] - 1,) + mu[i + 1 :]
                out[(nu, mu2)] = c * mu[i]
        return MixedPolynomial(self.n, out)

    def shift_constant(self) -> "MixedPolynomial":
        """f - f(0)."""
        zero = (0,) * self.n
        return MixedPolynomial(self.n, {k: c for k, c in self._terms.items() if k != (zero, zero)})

    def restrict_to_axes(self, indices: Iterable[int]) -> "MixedPolynomial":
        """f restricted to the coordinate subspace C^I (1-based indices), same ambient n."""
        idx = {int(i) for i in indices}
        if not idx:
            raise ValueError("index set must be non-empty")
        if not idx <= set(range(1, self.n + 1)):
            raise ValueError(f"indices {sorted(idx)} outside 1..{self.n}")
        outside = [j for j in range(self.n) if j + 1 not in idx]
        return MixedPolynomial(
            self.n,
            {
                (nu, mu): c
                for (nu, mu), c in self._terms.items()
                if all(nu[j] == 0 and mu[j] == 0 for j in outside)
            },
        )

    def restrict_to_support(self, points: Iterable[Sequence[int]]) -> "MixedPolynomial":
        """Keep the terms whose exponent sum nu + mu lies in ``points``."""
        keep = {tuple(int(v) for v in p) for p in points}
        return MixedPolynomial(
            self.n,
            {
                (nu, mu): c
                for (nu, mu), c in self._terms.items()
                if tuple(a + b for a, b in zip(nu, mu)) in keep
            },
        )

    def support_points(self) -> set:
        return {tuple(a + b for a, b in zip(nu, mu)) for nu, mu in self._terms}

    def effective_variables(self) -> set:
        """1-based indices i such that some term has nu_i + mu_i > 0."""
        return {
            j + 1
            for j in range(self.n)
            if any(nu[j] + mu[j] > 0 for nu, mu in self._terms)
        }

    def embed(self, n: int) -> "MixedPolynomial":
        """View f in a larger ambient dimension."""
        if n < self.n:
            raise ValueError("cannot embed into a smaller dimension")
        pad = (0,) * (n - self.n)
        return MixedPolynomial(n, {(nu + pad, mu + pad): c for (nu, mu), c in self._terms.items()})

    # -- evaluation -----------------------------------------------------
    @cached_property
    def _system(self) -> "PolynomialSystem":
        return PolynomialSystem([self])

    @cached_property
    def gradient_polys(self) -> Tuple[Tuple["MixedPolynomial", ...], Tuple["MixedPolynomial", ...]]:
        return (
            tuple(self.dz(i) for i in range(self.n)),
            tuple(self.dzbar(i) for i in range(self.n)),
        )

    @cached_property
    def _gradient_system(self) -> "PolynomialSystem":
        dz, dzb = self.gradient_polys
        return PolynomialSystem([self, *dz, *dzb])

    def __call__(self, z) -> complex | np.ndarray:
        return evaluate(self, z)

    def value_and_gradients(self, z):
        """Return f(z), df/dz (..., n) and df/dzbar (..., n) for points z of shape (..., n)."""
        out = self._gradient_system(z)
        n = self.n
        return out[..., 0], out[..., 1 : n + 1], out[..., n + 1 :]


class PolynomialSystem:
    """Several mixed polynomials in the same n, evaluated together on point batches."""

    def __init__(self, polys: Sequence[MixedPolynomial]):
        if not polys:
            raise ValueError("empty system")
        self.n = polys[0].n
        if any(p.n != self.n for p in polys):
            raise ValueError("all polynomials must share n")
        keys = sorted({k for p in polys for k in p._terms})
        if not keys:
            keys = [((0,) * self.n, (0,) * self.n)]
        index = {k: t for t, k in enumerate(keys)}
        self.nu = np.array([k[0] for k in keys], dtype=np.int64).reshape(len(keys), self.n)
        self.mu = np.array([k[1] for k in keys], dtype=np.int64).reshape(len(keys), self.n)
        self.coef = np.zeros((len(polys), len(keys)), dtype=complex)
        for r, p in enumerate(polys):
            for k, c in p._terms.items():
                self.coef[r, index[k]] = c
        self.max_power = int(max(self.nu.max(initial=0), self.mu.max(initial=0)))

    def monomials(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        zc = z.conj()
        pz = [np.ones_like(z)]
        pc = [np.ones_like(z)]
        for _ in range(self.max_power):
            pz.append(pz[-1] * z)
            pc.append(pc[-1] * zc)
        pz = np.stack(pz)  # (K+1, ..., n)
        pc = np.stack(pc)
        cols = np.arange(self.n)
        # advanced indices land in front: (T, n, ...) -> (..., T, n)
        a = np.moveaxis(pz[self.nu, ..., cols], [0, 1], [-2, -1])
        b = np.moveaxis(pc[self.mu, ..., cols], [0, 1], [-2, -1])
        return np.prod(a * b, axis=-1)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.n:
            raise ValueError(f"point dimension {z.shape[-1]} != n = {self.n}")
        return self.monomials(z) @ self.coef.T


def evaluate(f: MixedPolynomial, z) -> complex | np.ndarray:
    """Evaluate f at a point (shape (n,)) or a batch of points (shape (..., n))."""
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != f.n:
        raise ValueError(f"point dimension does not match n = {f.n}")
    out = f._system(z)[..., 0]
    return complex(out) if out.ndim == 0 else out


def wirtinger_dz(f: MixedPolynomial) -> Tuple[MixedPolynomial, ...]:
    return f.gradient_polys[0]


def wirtinger_dzbar(f: MixedPolynomial) -> Tuple[MixedPolynomial, ...]:
    return f.gradient_polys[1]


def conjugate(f: MixedPolynomial) -> MixedPolynomial:
    return f.conjugate()


def shift_constant(f: MixedPolynomial) -> MixedPolynomial:
    return f.shift_constant()


def restrict_to_axes(f: MixedPolynomial, indices: Iterable[int]) -> MixedPolynomial:
    return f.restrict_to_axes(indices)


def effective_variables(f: MixedPolynomial) -> set:
    return f.effective_variables()


# -- real pairs (g, h): R^{2n} -> R^2 ------------------------------------
# Real variables are ordered x1, y1, x2, y2, ..., xn, yn.

def _binomial_expand(k: int, a: complex, b: complex):
    """Coefficients of (a*u + b*v)^k as {(i, k-i): coeff} for u^i v^(k-i)."""
    return {(i, k - i): comb(k, i) * a**i * b ** (k - i) for i in range(k + 1)}


def real_pair_to_mixed(g: Mapping[Sequence[int], float], h: Mapping[Sequence[int], float], n: int) -> MixedPolynomial:
    """Mixed polynomial f with f(z, zbar) = g(x, y) + i h(x, y), z = x + iy."""
    terms: Dict[TermKey, complex] = {}
    for poly, factor in ((g, 1.0), (h, 1j)):
        for e, c in poly.items():
            e = tuple(int(v) for v in e)
            if len(e) != 2 * n:
                raise ValueError(f"real exponent {e} has length {len(e)}, expected {2 * n}")
            if any(v < 0 for v in e):
                raise ValueError(f"real exponent {e} has a negative entry")
            # x = (z + zbar)/2, y = (z - zbar)/(2i); variables are independent across k.
            per_var = []
            for k in range(n):
                px = _binomial_expand(e[2 * k], 0.5, 0.5)
                py = _binomial_expand(e[2 * k + 1], -0.5j, 0.5j)
                acc: Dict[Tuple[int, int], complex] = {}
                for (a1, b1), c1 in px.items():
                    for (a2, b2), c2 in py.items():
                        key = (a1 + a2, b1 + b2)
                        acc[key] = acc.get(key, 0j) + c1 * c2
                per_var.append(acc)
            for choice in product(*(list(d.items()) for d in per_var)):
                nu = tuple(k[0] for k, _ in choice)
                mu = tuple(k[1] for k, _ in choice)
                coeff = factor * complex(c)
                for _, ck in choice:
                    coeff *= ck
                terms[(nu, mu)] = terms.get((nu, mu), 0j) + coeff
    return MixedPolynomial(n, terms)


def mixed_to_real_pair(f: MixedPolynomial) -> Tuple[RealPolynomial, RealPolynomial]:
    """(g, h) = (Re f, Im f) as real polynomials in x1, y1, ..., xn, yn."""
    n = f.n
    acc: Dict[Exponent, complex] = {}
    for (nu, mu), c in f._terms.items():
        # z^a zbar^b = (x + iy)^a (x - iy)^b, one variable at a time.
        per_var = []
        for k in range(n):
            pz = _binomial_expand(nu[k], 1.0, 1j)
            pc = _binomial_expand(mu[k], 1.0, -1j)
            d: Dict[Tuple[int, int], complex] = {}
            for (a1, b1), c1 in pz.items():
                for (a2, b2), c2 in pc.items():
                    key = (a1 + a2, b1 + b2)
                    d[key] = d.get(key, 0j) + c1 * c2
            per_var.append(d)
        for choice in product(*(list(d.items()) for d in per_var)):
            e = tuple(v for k, _ in choice for v in k)
            coeff = c
            for _, ck in choice:
                coeff *= ck
            acc[e] = acc.get(e, 0j) + coeff
    g = {e: c.real for e, c in acc.items() if c.real != 0}
    h = {e: c.imag for e, c in acc.items() if c.imag != 0}
    return g, h


def evaluate_real_polynomial(p: Mapping[Sequence[int], float], v) -> float | np.ndarray:
    """Evaluate a real polynomial at v = (x1, y1, ..., xn, yn), batched over leading axes."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1])
    for e, c in p.items():
        out = out + c * np.prod(v ** np.asarray(e), axis=-1)
    return out


def is_weighted_homogeneous(f: MixedPolynomial):
    """Return (q, m) with q > 0, gcd(q) = 1 and q.(nu + mu) = m on every term, or None."""
    from .geometry import weighted_homogeneous_weights

    if f.is_zero:
        raise DegenerateInputError("zero polynomial")
    return weighted_homogeneous_weights(sorted(f.support_points()), f.n)
