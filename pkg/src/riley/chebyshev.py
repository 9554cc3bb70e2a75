"""
Chebyshev polynomials of the second kind S_k for every integer k.

S_0 = 1, S_1 = z and S_k = z S_{k-1} - S_{k-2}; running the recursion
backwards gives S_{-1} = 0 and S_{-k} = -S_{k-2}.
"""

import math
from dataclasses import dataclass

from ._numeric import check_finite


class IntPoly:
    """Univariate polynomial with exact integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __neg__(self):
        return IntPoly([-a for a in self.coeffs])

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, IntPoly) else IntPoly([-other]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([other * a for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, z):
        """Horner evaluation; exact for integer z."""
        acc = 0 * z
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc


def chebyshev_pair(k, z, zero=None, one=None):
    """
    Return (S_{k-1}(z), S_k(z)).

    The three-term recursion runs from (S_{-1}, S_0) in the direction of
    increasing |k|, so it works unchanged for ints, floats, complex numbers,
    mpmath numbers, numpy arrays and exact polynomial objects.
    """
    if zero is None:
        zero = z * 0
    if one is None:
        one = zero + 1
    if k >= 0:
        prev, cur = zero, one
        for _ in range(k):
            prev, cur = cur, z * cur - prev
        return prev, cur
    # downward: S_{j-1} = z S_j - S_{j+1}
    upper, cur = one, zero  # S_0, S_{-1}
    for _ in range(-k - 1):
        upper, cur = cur, z * cur - upper
    return z * cur - upper, cur


def s_poly(k):
    """Exact coefficient vector of S_k(z) as an IntPoly."""
    z = IntPoly([0, 1])
    return chebyshev_pair(k, z, IntPoly(), IntPoly([1]))[1]


def s_eval(k, z):
    """Value of S_k(z) by the three-term recursion (no expansion)."""
    check_finite(z)
    return chebyshev_pair(k, z)[1]


@dataclass(frozen=True)
class ThetaRoot:
    """Root 2cos((2j-1)pi/(2k+1)) of S_k - S_{k-1}."""

    k: int
    j: int
    theta: float
    value: float

    @classmethod
    def of(cls, k, j):
        if k < 1 or not 1 <= j <= k:
            raise ValueError(f"need k >= 1 and 1 <= j <= k, got k={k}, j={j}")
        theta = (2 * j - 1) * math.pi / (2 * k + 1)
        return cls(k, j, theta, 2.0 * math.cos(theta))

    def value_at(self, ctx):
        """Recompute the value at the working precision of an mpmath context."""
        return 2 * ctx.cos((2 * self.j - 1) * ctx.pi / (2 * self.k + 1))


def s_diff_roots(k):
    """The k roots of S_k(z) - S_{k-1}(z), ordered by j ascending."""
    if k < 1:
        raise ValueError(f"s_diff_roots needs k >= 1, got {k}")
    return [ThetaRoot.of(k, j) for j in range(1, k + 1)]
