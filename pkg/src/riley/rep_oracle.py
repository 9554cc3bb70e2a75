"""
Brute-force Riley polynomial from the knot group presentation.

G = <a, b | wa = bw> with
    v = (aba^-1b^-1)^m a (aba^-1b^-1)^-m b,   w = v^n (aba^-1b^-1)^m ab.

rho(a) = [[t, 1], [0, 1/t]] and rho(b) = [[t, 0], [-u, 1/t]] with
x = t + 1/t and y = u + 2. Words are multiplied out letter by letter, with
no Chebyshev shortcuts, and R = w11 + (1/t - t) w12.

Letters are 'a', 'b' and their inverses 'A', 'B'.
"""

import cmath
from dataclasses import dataclass

import gmpy2
import mpmath
import numpy as np

from ._numeric import check_finite, is_gmp, is_mpmath, precision
from .chebyshev import chebyshev_pair
from .riley_closed import as_params, riley_eval

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


@dataclass(frozen=True)
class GroupWord:
    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - set(_INVERSE)
        if bad:
            raise ValueError(f"letters must be from 'aAbB', got {sorted(bad)}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other):
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self):
        return GroupWord("".join(_INVERSE[c] for c in reversed(self.letters)))

    def reduce(self):
        """Freely reduced form."""
        out = []
        for c in self.letters:
            if out and out[-1] == _INVERSE[c]:
                out.pop()
            else:
                out.append(c)
        return GroupWord("".join(out))

    def __str__(self):
        return self.letters or "1"


COMMUTATOR = GroupWord("abAB")


def build_v(m):
    if m == 0:
        raise ValueError("m must be non-zero")
    return COMMUTATOR**m + GroupWord("a") + COMMUTATOR ** (-m) + GroupWord("b")


def build_w(p):
    p = as_params(p)
    return build_v(p.m) ** p.n + COMMUTATOR**p.m + GroupWord("ab")


@dataclass(frozen=True)
class Mat2:
    e11: complex
    e12: complex
    e21: complex
    e22: complex

    def __matmul__(self, o):
        return Mat2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def __sub__(self, o):
        return Mat2(self.e11 - o.e11, self.e12 - o.e12, self.e21 - o.e21, self.e22 - o.e22)

    @property
    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    @property
    def trace(self):
        return self.e11 + self.e22

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def max_abs(self):
        return max(abs(e) for e in self.entries())

    @classmethod
    def identity(cls, one=1):
        return cls(one, 0 * one, 0 * one, one)


@dataclass(frozen=True)
class RepPoint:
    x: complex
    y: complex
    t: complex
    u: complex

    def generators(self):
        """Matrices for 'a', 'A', 'b', 'B'."""
        t, u = self.t, self.u
        ti = 1 / t
        zero = 0 * t
        return {
            "a": Mat2(t, 1 + zero, zero, ti),
            "A": Mat2(ti, -1 + zero, zero, t),
            "b": Mat2(t, zero, -u + zero, ti),
            "B": Mat2(ti, zero, u + zero, t),
        }


def make_rep_point(x, y, t=None):
    """
    Solve t^2 - x t + 1 = 0 for t, taking the root with non-negative
    imaginary part (the one with |t| >= 1 when both are real).
    A caller-supplied t must satisfy t + 1/t = x.
    """
    check_finite(x, y)
    if t is None:
        if is_gmp(x, y):
            xc = gmpy2.mpc(x)
            disc = gmpy2.sqrt(xc * xc - 4)
            ctx_t = gmpy2.mpc
        elif is_mpmath(x, y):
            xc = mpmath.mpc(x)
            disc = mpmath.sqrt(xc * xc - 4)
            ctx_t = mpmath.mpc
        else:
            xc = complex(x)
            disc = cmath.sqrt(xc * xc - 4)
            ctx_t = complex
        t1, t2 = (xc + disc) / 2, (xc - disc) / 2
        # the roots are t and 1/t, whose imaginary parts have opposite signs
        if t1.imag != t2.imag:
            t = t1 if t1.imag > t2.imag else t2
        else:
            t = t1 if abs(t1) >= abs(t2) else t2
        t = ctx_t(t)
    u = y - 2
    return RepPoint(x, y, t, u)


def rho_eval(word, pt):
    """Ordered product of generator matrices along the word."""
    gens = pt.generators()
    out = Mat2.identity(1 + 0 * pt.t)
    for c in word:
        out = out @ gens[c]
    return out


def riley_from_matrices(p, x, y, t=None):
    pt = make_rep_point(x, y, t)
    w = rho_eval(build_w(p), pt)
    return w.e11 + (1 / pt.t - pt.t) * w.e12


def relation_residual(p, x, y, t=None):
    """max |rho(w)rho(a) - rho(b)rho(w)| over the four entries."""
    pt = make_rep_point(x, y, t)
    gens = pt.generators()
    w = rho_eval(build_w(p), pt)
    return ((w @ gens["a"]) - (gens["b"] @ w)).max_abs()


def matrix_power(v, k):
    """
    V^k for V in SL_2 through S_k(tr V):
    [[S_k - h S_{k-1}, f S_{k-1}], [g S_{k-1}, S_k - e S_{k-1}]].
    """
    s1, s = chebyshev_pair(k, v.trace)
    return Mat2(s - v.e22 * s1, v.e12 * s1, v.e21 * s1, s - v.e11 * s1)


def random_points(count, seed=0, radius=3.0):
    """Seeded complex (x, y) pairs with |x|, |y| <= radius."""
    rng = np.random.default_rng(seed)
    rad = radius * rng.random((count, 2))
    ang = 2 * np.pi * rng.random((count, 2))
    z = rad * np.exp(1j * ang)
    return [(complex(a), complex(b)) for a, b in z]


def oracle_discrepancy(p, samples=100, seed=0, bits=200):
    """
    max |R_matrices - R_closed| / (1 + |R_closed|) over seeded random complex
    points, both sides computed in MPC at ``bits`` of precision.
    """
    p = as_params(p)
    worst = 0.0
    with precision(bits):
        for x, y in random_points(samples, seed):
            xh, yh = gmpy2.mpc(x), gmpy2.mpc(y)
            a = riley_from_matrices(p, xh, yh)
            b = riley_eval(p, xh, yh)
            worst = max(worst, float(abs(a - b) / (1 + abs(b))))
    return worst
