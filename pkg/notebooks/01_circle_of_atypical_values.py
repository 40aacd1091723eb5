"""
A circle of atypical values at infinity
=======================================

f(z, zbar) = z1 z2 + zb1^2 zb2^2 has a single bad face, the segment from
(1, 1) to (2, 2).  Its singular set Sing f is {z1 z2 = 1 / (2 conj(lam))}
together with the origin, and it is unbounded: let z1 tend to 0 along it.
So the values f takes on Sing f away from 0 are reached at infinity too,
and they trace the curve {1/(2 conj(lam)) + 1/(4 lam^2) : |lam| = 1}.

This script walks through the pipeline step by step.
"""
import tempfile
from pathlib import Path

import numpy as np

from mixedpoly import parse
from mixedpoly import geometry as G
from mixedpoly.nondeg import SearchOptions, check_newton_nondegenerate
from mixedpoly.probe import (
    CriticalOptions,
    RadiusSchedule,
    bad_face_critical_values,
    critical_values,
    estimate_Kinf,
    estimate_S,
    nearest_distance,
)
from mixedpoly.report import RunConfig, assemble_report, emit_svg

f = parse("z1*z2 + zb1^2*zb2^2")

# the Newton boundary at infinity is a single vertex, and the whole support
# hull is one bad face whose witness functional has mixed signs
print("Gamma+ faces:", [F.vertices for F in G.gamma_plus(f)])
for F in G.bad_faces(f):
    print("bad face:", F.vertices, "witness:", F.witness)

# the vertex face polynomial zb1^2 zb2^2 has no singular point on the torus
rep = check_newton_nondegenerate(f, SearchOptions(starts=300))
print("non-degenerate:", rep.is_nondegenerate, "strongly:", rep.is_strongly_nondegenerate)

# the reference curve
lam = np.exp(2j * np.pi * np.arange(256) / 256)
curve = 1 / (2 * lam.conj()) + 1 / (4 * lam**2)

# critical values: 0 (the origin) plus the curve
cv = critical_values(f, CriticalOptions(phases=128))
centers = np.array([c.center for c in cv.clusters])
print(f"{len(centers)} critical-value clusters; worst gap to the curve:",
      f"{nearest_distance(curve, centers).max():.1e}")

# the bound set is the same: the bad face carries all of Sing f
bound = bad_face_critical_values(f, CriticalOptions(phases=256))
print("bound set includes 0:", bound.includes_zero, "values:", len(bound.values))

# S(f) from Milnor-set chains on spheres of radius 10 .. 1000; this budget is
# smaller than the default one (400 starts, radii up to 1e5), so expect a
# slightly coarser cover of the curve
sched = RadiusSchedule(radii=(1e1, 1e2, 1e3), starts=150)
S = estimate_S(f, sched)
s_vals = np.array([c.center for c in S.finite])
print(f"{len(s_vals)} finite S clusters, min |value| = {np.abs(s_vals).min():.3f} (0 is not in S)")
print("worst distance from a curve sample to S:", f"{nearest_distance(curve, s_vals).max():.1e}")

# each S value is also an asymptotic critical value
K = estimate_Kinf(f, sched, S)
k_vals = np.array([c.center for c in K.finite])
print("S inside K_inf within", f"{nearest_distance(s_vals, k_vals).max():.1e}")

# the same run as one report, plus a picture of the value plane
report = assemble_report(f, RunConfig(radii=(1e1, 1e2, 1e3), starts=150, nondeg_starts=300), text="z1*z2 + zb1^2*zb2^2")
for check in report.checks:
    print(f"  {check['name']:32s} {check['status']}")
out = Path(tempfile.gettempdir()) / "circle_of_atypical_values.svg"
emit_svg(report, str(out))
print("SVG written to", out)
