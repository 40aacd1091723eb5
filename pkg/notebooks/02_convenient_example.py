"""
A convenient polynomial with no atypical values at infinity
============================================================

f = z1 + z2 + zb1^2 + zb2^2 meets both coordinate axes (it is convenient),
has no bad faces and is non-degenerate.  Its asymptotic nonregular values
are then confined to {0}, and here the S estimate comes back empty.  The
critical values form the curve {a + conj(a)^2 / 2 : |a| = 1}, of modulus at
most 3/2.
"""
import numpy as np

from mixedpoly import parse
from mixedpoly import geometry as G
from mixedpoly.nondeg import SearchOptions, check_newton_nondegenerate
from mixedpoly.probe import CriticalOptions, RadiusSchedule, critical_values, estimate_S, nearest_distance

f = parse("z1 + z2 + zb1^2 + zb2^2")
print("convenient:", G.is_convenient(f))
print("bad faces:", G.bad_faces(f))
print("Gamma+ faces:", [F.vertices for F in G.gamma_plus(f)])
rep = check_newton_nondegenerate(f, SearchOptions(starts=300))
print("non-degenerate:", rep.is_nondegenerate)

a = np.exp(2j * np.pi * np.arange(256) / 256)
curve = a + a.conj() ** 2 / 2
cv = critical_values(f, CriticalOptions())
centers = np.array([c.center for c in cv.clusters])
print(f"max |critical value| = {cv.max_modulus:.6f}")
print("worst distance from a curve sample to the critical values:", f"{nearest_distance(curve, centers).max():.1e}")

S = estimate_S(f, RadiusSchedule(radii=(1e1, 1e2, 1e3, 1e4), starts=150))
print("finite S clusters:", len(S.finite), "| divergent chains:", len(S.divergent))
