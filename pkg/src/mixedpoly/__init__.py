"""Mixed polynomials f(z, zbar): Newton geometry, regularity at infinity and bifurcation-value probes."""

__version__ = "0.1.0"

from .polynomial import DegenerateInputError, MixedPolynomial, PolynomialSystem
from .parser import ParseError, format_polynomial, parse
from .regularity import is_singular, kos_quantity, milnor_residual, nu
from .nondeg import check_newton_nondegenerate, degeneracy_witness, strong_degeneracy_witness
from .probe import (
    CriticalOptions,
    RadiusSchedule,
    bad_face_critical_values,
    critical_values,
    estimate_Kinf,
    estimate_S,
)

__all__ = [
    "__version__",
    "DegenerateInputError",
    "MixedPolynomial",
    "PolynomialSystem",
    "ParseError",
    "parse",
    "format_polynomial",
    "nu",
    "is_singular",
    "milnor_residual",
    "kos_quantity",
    "check_newton_nondegenerate",
    "degeneracy_witness",
    "strong_degeneracy_witness",
    "CriticalOptions",
    "RadiusSchedule",
    "critical_values",
    "bad_face_critical_values",
    "estimate_S",
    "estimate_Kinf",
]
