"""
Helpers shared by the float, complex and multiprecision evaluation paths.

High-precision work uses gmpy2 (MPFR/MPC); mpmath numbers are accepted by
the generic evaluators as well.
"""

import cmath
import math
import numbers
from contextlib import contextmanager

import gmpy2
import mpmath
import numpy as np

MPFR = type(gmpy2.mpfr(0))
MPC = type(gmpy2.mpc(0))
_MPMATH = (mpmath.mpf, mpmath.mpc)


def check_finite(*values):
    """Raise ValueError if any scalar or array argument is nan or infinite."""
    for v in values:
        if isinstance(v, numbers.Integral):
            continue
        if isinstance(v, (MPFR, MPC)):
            ok = gmpy2.is_finite(v)
        elif isinstance(v, _MPMATH):
            ok = mpmath.isfinite(v)
        elif isinstance(v, np.ndarray):
            ok = bool(np.all(np.isfinite(v)))
        elif isinstance(v, complex):
            ok = cmath.isfinite(v)
        else:
            ok = math.isfinite(v)
        if not ok:
            raise ValueError(f"non-finite input: {v!r}")


def is_gmp(*values):
    return any(isinstance(v, (MPFR, MPC)) for v in values)


def is_mpmath(*values):
    return any(isinstance(v, _MPMATH) for v in values)


@contextmanager
def precision(bits):
    """Temporarily set the gmpy2 working precision (thread-local)."""
    with gmpy2.context(gmpy2.get_context(), precision=bits, real_prec=bits, imag_prec=bits):
        yield


def hp(v):
    """Convert a float/int/str to an MPFR at the current precision."""
    return gmpy2.mpfr(v)


def two_cos_pi_over(r):
    """2 cos(pi / r) at the current gmpy2 precision."""
    return 2 * gmpy2.cos(gmpy2.const_pi() / r)


def sign(v):
    """Sign of a real number as -1, 0 or 1."""
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def log2_abs(v):
    """Rough base-2 magnitude of a non-zero number (0 for zero)."""
    if not v:
        return 0
    if isinstance(v, (MPFR, MPC)):
        return int(gmpy2.log2(abs(v)))
    return int(math.log2(abs(v)))
