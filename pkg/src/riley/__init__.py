"""
Riley polynomials of the rational knots C(2n+1, 2m, 2).

The closed form is evaluated through Chebyshev recursions, checked against
explicit 2x2 matrix products, and scanned for real roots y > 2 at
x = 2cos(pi/r).
"""

from .certifier import OrderabilityVerdict, certify, sweep, thm_lower_bound
from .chebyshev import IntPoly, chebyshev_pair, s_eval, s_poly
from .qypoly import QYPoly
from .rep_oracle import relation_residual, riley_from_matrices
from .riley_closed import KnotParams, leading_term, riley_eval, riley_poly
from .root_finder import RootCertificate, ScanConfig, scan_roots, theta_seed

__all__ = [
    "IntPoly",
    "KnotParams",
    "OrderabilityVerdict",
    "QYPoly",
    "RootCertificate",
    "ScanConfig",
    "certify",
    "chebyshev_pair",
    "leading_term",
    "relation_residual",
    "riley_eval",
    "riley_from_matrices",
    "riley_poly",
    "s_eval",
    "s_poly",
    "scan_roots",
    "sweep",
    "theta_seed",
    "thm_lower_bound",
]
