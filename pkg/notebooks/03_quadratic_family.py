"""
Non-degeneracy of f = a z^2 + b z zbar + c zbar^2
=================================================

For this one-variable family the strong condition (no singular point on
C*) is the open inequality (|a|^2 - |c|^2)^2 > |conj(a) b - c conj(b)|^2.
The plain condition (no singular *zero* on C*) is much weaker: f has a zero
on C* only when -b lies on the ellipse {a u + c conj(u) : |u| = 1}, which
random coefficients almost never hit.  The two witness searches show the
difference.
"""
import numpy as np

from mixedpoly.nondeg import (
    SearchOptions,
    degeneracy_witness,
    quadratic,
    quadratic_oracle,
    strong_degeneracy_witness,
)

opts = SearchOptions(starts=200)

# f = z^2 + 3 |z|^2: no zero away from 0, but plenty of singular points
f = quadratic(1, 3, 0)
print("inequality holds:", quadratic_oracle(1, 3, 0))
print("plain search:", degeneracy_witness(f, opts).status)
v = strong_degeneracy_witness(f, opts)
print("strong search:", v.status, "at z =", np.round(v.witness.z, 6))

# on the ellipse: -b = a u + c conj(u) with u = 1, so f(1) = 0 and 1 is singular
f = quadratic(1, -1.5, 0.5)
v = degeneracy_witness(f, opts)
print("on the ellipse, plain search:", v.status, "with |f(z)| =", f"{abs(f(np.array(v.witness.z))):.1e}")

# a small random sample
rng = np.random.default_rng(0)
rows = []
for k in range(20):
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    g = quadratic(a, b, c)
    opts_k = SearchOptions(starts=200, seed=k)
    rows.append((
        quadratic_oracle(a, b, c),
        strong_degeneracy_witness(g, opts_k).degenerate,
        degeneracy_witness(g, opts_k).degenerate,
    ))
rows = np.array(rows)
print("inequality holds in", rows[:, 0].sum(), "of 20 cases")
print("strong search agrees with the inequality:", (rows[:, 0] != rows[:, 1]).sum(), "/ 20")
print("plain search finds a witness in", rows[:, 2].sum(), "cases")
