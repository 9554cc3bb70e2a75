"""
Closed-form Riley polynomial of the rational knot C(2n+1, 2m, 2).

With q = x^2,

    alpha = y^2 - q y + 2q - 2
    beta  = 2 + (q - y - 2) (S_m(alpha) + (1 - y) S_{m-1}(alpha))^2
    R     = ((q - y - 1) S_m(alpha) - S_{m-1}(alpha)) S_n(beta)
            - ((q - y - 1) S_{m-1}(alpha) - S_{m-2}(alpha)) S_{n-1}(beta)

alpha is the trace of the commutator aba^-1b^-1 and beta the trace of v.
Everything is polynomial in (q, y); evaluation goes through the Chebyshev
recursions and never expands.
"""

from dataclasses import dataclass

from ._numeric import check_finite
from .chebyshev import chebyshev_pair
from .qypoly import QYPoly

DEFAULT_EXPANSION_LIMIT = 8


class ExpansionTooLarge(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class KnotParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n == 0 or self.m == 0:
            raise ValueError(f"n and m must be non-zero, got n={self.n}, m={self.m}")

    def __str__(self):
        return f"C({2 * self.n + 1}, {2 * self.m}, 2)"


def as_params(p):
    if isinstance(p, KnotParams):
        return p
    n, m = p
    return KnotParams(n, m)


def alpha_eval(x, y):
    q = x * x
    return y * y - q * y + 2 * q - 2


def alpha_poly():
    q, y = QYPoly.q(), QYPoly.y()
    return y * y - q * y + 2 * q - 2


def _inner(m, q, y):
    """alpha, S_{m-2}(alpha), S_{m-1}(alpha), S_m(alpha)."""
    alpha = y * y - q * y + 2 * q - 2
    sm1, sm = chebyshev_pair(m, alpha)
    sm2 = alpha * sm1 - sm
    return alpha, sm2, sm1, sm


def _beta_from(q, y, sm1, sm):
    e = sm + (1 - y) * sm1
    return 2 + (q - y - 2) * e * e


def beta_eval(m, x, y):
    if m == 0:
        raise ValueError("m must be non-zero")
    check_finite(x, y)
    q = x * x
    _, _, sm1, sm = _inner(m, q, y)
    return _beta_from(q, y, sm1, sm)


def beta_poly(m):
    if m == 0:
        raise ValueError("m must be non-zero")
    q, y = QYPoly.q(), QYPoly.y()
    _, _, sm1, sm = _inner(m, q, y)
    return _beta_from(q, y, sm1, sm)


def riley_parts(p, q, y):
    """
    The pieces (A, B, S_{n-1}(beta), S_n(beta)) with R = A S_n - B S_{n-1}.

    Works for any numeric type and for QYPoly generators.
    """
    p = as_params(p)
    _, sm2, sm1, sm = _inner(p.m, q, y)
    beta = _beta_from(q, y, sm1, sm)
    c = q - y - 1
    a = c * sm - sm1
    b = c * sm1 - sm2
    sn1, sn = chebyshev_pair(p.n, beta)
    return a, b, sn1, sn


def riley_eval(p, x, y):
    """R_{n,m}(x, y) via the Chebyshev recursions."""
    check_finite(x, y)
    a, b, sn1, sn = riley_parts(p, x * x, y)
    return a * sn - b * sn1


def riley_poly(p, limit=DEFAULT_EXPANSION_LIMIT):
    """Exact expansion of R_{n,m} as a QYPoly."""
    p = as_params(p)
    if max(abs(p.n), abs(p.m)) > limit:
        raise ExpansionTooLarge(
            f"expansion too large: |n|, |m| must be <= {limit} (got n={p.n}, m={p.m})"
        )
    a, b, sn1, sn = riley_parts(p, QYPoly.q(), QYPoly.y())
    return a * sn - b * sn1


def riley_y2(p, x):
    """R_{n,m}(x, 2) = m(beta-2)(S_n - S_{n-1}) + S_{n+1} - S_n at beta = x^2 - 2."""
    p = as_params(p)
    check_finite(x)
    beta = x * x - 2
    sn1, sn = chebyshev_pair(p.n, beta)
    sn_next = beta * sn - sn1
    return p.m * (beta - 2) * (sn - sn1) + sn_next - sn


def riley_factored_at_theta(p, x, y, tol=1e-8):
    """
    R_{n,m}(x, y) = (x^2 - y - 2)(S_m(alpha) + (1-y) S_{m-1}(alpha)) S_n(beta),
    valid where S_n(beta) = S_{n-1}(beta).
    """
    p = as_params(p)
    check_finite(x, y)
    q = x * x
    _, _, sm1, sm = _inner(p.m, q, y)
    beta = _beta_from(q, y, sm1, sm)
    sn1, sn = chebyshev_pair(p.n, beta)
    if abs(sn - sn1) > tol:
        raise PreconditionError(
            f"precondition violated: |S_n(beta) - S_(n-1)(beta)| = {float(abs(sn - sn1)):.3g} > {tol}"
        )
    return (q - y - 2) * (sm + (1 - y) * sm1) * sn


def _neg1_pow(k):
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class LeadingTerm:
    degree: int
    sign: int


def leading_term_formula(p):
    """
    Top y-term of R_{n,m} in closed form, all four sign cases.

    n >= 1:  m >= 1 -> (-1)^(n+1) y^(2m+1+(4m+1)n)
             m <= -1 -> (-1)^n y^(-2(m+1)+(-4m-1)n)
    n <= -1: the S_{n-1}(beta) term dominates and gives
             m >= 1 -> (-1)^n y^(2m-1+(4m+1)(-n-1))
             m <= -1 -> (-1)^(n+1) y^(-2m+(-4m-1)(-n-1))
    """
    p = as_params(p)
    n, m = p.n, p.m
    if n >= 1:
        if m >= 1:
            return LeadingTerm(2 * m + 1 + (4 * m + 1) * n, _neg1_pow(n + 1))
        return LeadingTerm(-2 * (m + 1) + (-4 * m - 1) * n, _neg1_pow(n))
    k = -n
    if m >= 1:
        return LeadingTerm(2 * m - 1 + (4 * m + 1) * (k - 1), _neg1_pow(n))
    return LeadingTerm(-2 * m + (-4 * m - 1) * (k - 1), _neg1_pow(n + 1))


def leading_term(p, limit=DEFAULT_EXPANSION_LIMIT):
    """
    Degree and sign of the top y-term of R_{n,m}.

    For n >= 1 this is the closed form; for n <= -1 it is read off the exact
    expansion when that is within ``limit`` and from the derived closed form
    otherwise.
    """
    p = as_params(p)
    if p.n >= 1 or max(abs(p.n), abs(p.m)) > limit:
        return leading_term_formula(p)
    return leading_term_of(riley_poly(p, limit))


def leading_term_of(poly):
    d = poly.y_degree
    top = poly.y_coefficient(d)
    if set(top) != {0}:
        raise ValueError("leading y-coefficient depends on q")
    return LeadingTerm(d, 1 if top[0] > 0 else -1)


def asymptotic_sign(p):
    """Limit sign of (-1)^n R_{n,m}(x, y) as y -> +infinity, for any real x."""
    p = as_params(p)
    return -1 if (p.n >= 1) == (p.m >= 1) else 1
