"""
Real roots y > 2 of y -> R_{n,m}(2cos(pi/r), y).

Roots are detected as sign changes on a float64 grid and then refined and
certified in MPFR arithmetic. The float64 pass evaluates R up to a positive
per-point factor, so it never overflows while preserving signs; every
bracket it reports is re-checked at high precision before use.
"""

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import gmpy2
import numpy as np

from ._numeric import hp, log2_abs, precision, sign, two_cos_pi_over
from .chebyshev import ThetaRoot, chebyshev_pair
from .rep_oracle import relation_residual
from .riley_closed import (
    _beta_from,
    _inner,
    as_params,
    beta_eval,
    leading_term,
    riley_parts,
)

RESIDUAL_TOL = 1e-10
RELATION_TOL = 1e-8
_BASE_BITS = 160
_MAX_BITS = 1 << 14
# extra grid points 2 + d, d geometric with this ratio from 1e-9 up to ten
# grid steps: roots crowd towards y = 2 as |n| and |m| grow
_CLUSTER_RATIO = 1.02
_CLUSTER_FLOOR = 1e-9


class UpperBoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    grid_step: float = 1e-3
    y_max_cap: float = 1e6
    bisect_tol: float = 1e-12
    max_iters: int = 200

    def __post_init__(self):
        if min(self.grid_step, self.y_max_cap, self.bisect_tol, self.max_iters) <= 0:
            raise ValueError("ScanConfig values must be positive")
        if self.bisect_tol >= self.grid_step:
            raise ValueError("bisect_tol must be smaller than grid_step")


@dataclass
class RootCertificate:
    n: int
    m: int
    r: int
    x0: float
    y_star: float
    bracket: tuple
    residual: float
    relation_residual: float
    y_star_digits: str = field(default="", repr=False)
    precision_bits: int = 0

    def to_dict(self):
        d = asdict(self)
        for key in ("x0", "y_star", "residual", "relation_residual"):
            d[key] = _g17(d[key])
        d["bracket"] = [_g17(v) for v in self.bracket]
        return d


def _g17(v):
    return float(f"{v:.17g}")


# ---------------------------------------------------------------------------
# evaluation helpers


def riley_hp(p, x0, y):
    """R at (x0, y) in MPFR at the current precision."""
    a, b, sn1, sn = riley_parts(p, x0 * x0, hp(y))
    return a * sn - b * sn1


def _magnitude_bits(p, x0, y):
    """log2 of the largest term in A S_n - B S_{n-1} at y."""
    with precision(64):
        a, b, sn1, sn = riley_parts(p, hp(x0) ** 2, hp(y))
        return max(log2_abs(a * sn), log2_abs(b * sn1), 0)


def _scaled_pair(k, z):
    """(S_{k-1}(z), S_k(z)) up to a common positive factor per entry."""
    step_up = k >= 0
    # upward from (S_-1, S_0), downward from (S_0, S_-1)
    prev, cur = (np.zeros_like(z), np.ones_like(z)) if step_up else (np.ones_like(z), np.zeros_like(z))
    for _ in range(abs(k) if step_up else -k - 1):
        prev, cur = cur, z * cur - prev
        big = np.maximum(np.abs(prev), np.abs(cur))
        scale = np.where(big > 1e100, big, 1.0)
        prev, cur = prev / scale, cur / scale
    if step_up:
        return prev, cur
    # downward recursion ran from (S_0, S_-1); one more step gives S_{k-1}
    return z * cur - prev, cur


def riley_grid_signs(p, x0, ys):
    """Signs of R(x0, y) on an array of y values."""
    p = as_params(p)
    ys = np.asarray(ys, dtype=float)
    q = float(x0) ** 2
    with np.errstate(over="ignore", invalid="ignore"):
        _, sm2, sm1, sm = _inner(p.m, q, ys)
        beta = _beta_from(q, ys, sm1, sm)
        c = q - ys - 1
        a = c * sm - sm1
        b = c * sm1 - sm2
        sn1, sn = _scaled_pair(p.n, beta)
        vals = a * sn - b * sn1
    out = np.sign(vals)
    bad = ~np.isfinite(vals)
    if bad.any():
        with precision(_BASE_BITS):
            xh = hp(x0)
            for i in np.flatnonzero(bad):
                out[i] = sign(riley_hp(p, xh, ys[i]))
    return out.astype(int)


# ---------------------------------------------------------------------------
# upper bound


@lru_cache(maxsize=512)
def _expected_sign(p):
    return leading_term(p).sign


def y_upper_bound(p, x0, cfg=None):
    """
    Double y from 4 until R(x0, y) shows the asymptotic sign three times in
    a row; return the first y of that run.
    """
    p = as_params(p)
    cfg = cfg or ScanConfig()
    want = _expected_sign(p)
    y, run_start, run = 4.0, None, 0
    with precision(_BASE_BITS):
        xh = hp(x0)
        while y <= cfg.y_max_cap:
            if sign(riley_hp(p, xh, y)) == want:
                if run == 0:
                    run_start = y
                run += 1
                if run == 3:
                    return run_start
            else:
                run = 0
            y *= 2
    raise UpperBoundError(
        f"sign of R_{{{p.n},{p.m}}}(x0, y) did not stabilise below y = {cfg.y_max_cap:g}"
    )


# ---------------------------------------------------------------------------
# scanning


def scan_grid(y_hi, cfg):
    """Grid on (2, y_hi]: uniform steps plus a geometric cluster near y = 2."""
    count = max(1, math.ceil((y_hi - 2.0) / cfg.grid_step))
    uniform = 2.0 + cfg.grid_step * np.arange(1, count + 1)
    uniform[-1] = min(uniform[-1], y_hi)
    top = min(10 * cfg.grid_step, y_hi - 2.0)
    k = math.ceil(math.log(top / _CLUSTER_FLOOR) / math.log(_CLUSTER_RATIO))
    cluster = 2.0 + top * _CLUSTER_RATIO ** -np.arange(k, -1, -1.0)
    return np.unique(np.concatenate([cluster, uniform]))


def sign_change_brackets(ys, signs, left_sign=0):
    """
    Adjacent (lo, hi) pairs with opposite non-zero signs. ``left_sign`` is the
    sign at y = 2, used as the left reference when non-zero.
    """
    brackets = []
    prev_y, prev_s = (2.0, left_sign) if left_sign else (None, 0)
    for y, s in zip(ys, signs):
        if s == 0:
            continue
        if prev_s and s != prev_s:
            brackets.append((prev_y, float(y)))
        prev_y, prev_s = float(y), s
    return brackets


def _sign_at_two(p, r):
    with precision(_BASE_BITS):
        return sign(riley_hp(p, two_cos_pi_over(r), 2))


def _refine(f, lo, hi, s_lo, cfg):
    """
    Bisect in float64 to bisect_tol, then polish with the Illinois variant of
    regula falsi at the working precision. Returns (lo, hi, y_star).
    """
    it = 0
    while (hi - lo > cfg.bisect_tol or lo <= 2.0) and it < cfg.max_iters:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        s = sign(f(mid))
        if s == 0:
            return lo, hi, hp(mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
        it += 1
    a, b = hp(lo), hp(hi)
    fa, fb = f(a), f(b)
    floor = gmpy2.mpfr(2) ** (-(gmpy2.get_context().precision // 2))
    c, side = a, 0
    for _ in range(cfg.max_iters):
        c = (a * fb - b * fa) / (fb - fa)
        if not a < c < b:
            c = (a + b) / 2
        fc = f(c)
        if fc == 0 or abs(fc) < floor:
            break
        if sign(fc) == sign(fb):
            b, fb = c, fc
            if side == -1:
                fa /= 2
            side = -1
        else:
            a, fa = c, fc
            if side == 1:
                fb /= 2
            side = 1
    return lo, hi, c


def certify_bracket(p, r, lo, hi, cfg):
    """
    Refine a float bracket of R(2cos(pi/r), .) to a RootCertificate, or None
    if the sign change does not survive at high precision or the residual
    checks fail at every precision tried.
    """
    p = as_params(p)
    bits = _BASE_BITS + 2 * _magnitude_bits(p, 2 * math.cos(math.pi / r), hi)
    while bits <= _MAX_BITS:
        with precision(bits):
            x0 = two_cos_pi_over(r)

            def f(y):
                return riley_hp(p, x0, y)

            s_lo, s_hi = sign(f(lo)), sign(f(hi))
            if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
                return None
            blo, bhi, ystar = _refine(f, lo, hi, s_lo, cfg)
            if not (2.0 < blo < bhi) or sign(f(blo)) == sign(f(bhi)):
                return None
            res = abs(f(ystar))
            rel = relation_residual(p, x0, ystar)
            if res < RESIDUAL_TOL and rel < RELATION_TOL:
                return RootCertificate(
                    n=p.n,
                    m=p.m,
                    r=r,
                    x0=float(x0),
                    y_star=float(ystar),
                    bracket=(blo, bhi),
                    residual=float(res),
                    relation_residual=float(rel),
                    y_star_digits=gmpy2.mpfr(ystar).__format__(".40g"),
                    precision_bits=bits,
                )
        bits *= 2
    return None


def candidate_brackets(p, r, cfg=None):
    """Float64 sign-change brackets of R(2cos(pi/r), .) on (2, Y]."""
    p = as_params(p)
    cfg = cfg or ScanConfig()
    if r < 2:
        raise ValueError("r must be >= 2")
    x0 = 2 * math.cos(math.pi / r)
    y_hi = y_upper_bound(p, x0, cfg)
    ys = scan_grid(y_hi, cfg)
    signs = riley_grid_signs(p, x0, ys)
    return sign_change_brackets(ys, signs, _sign_at_two(p, r))


def scan_roots(p, r, cfg=None, limit=None):
    """
    Certified roots y > 2 of R(2cos(pi/r), .) on (2, Y], ascending in y.

    ``limit`` stops after that many certificates.
    """
    p = as_params(p)
    cfg = cfg or ScanConfig()
    out = []
    for lo, hi in candidate_brackets(p, r, cfg):
        cert = certify_bracket(p, r, lo, hi, cfg)
        if cert is not None:
            out.append(cert)
            if limit is not None and len(out) >= limit:
                break
    return out


def check_certificate(cert, bits=None):
    """Re-verify a certificate from scratch; returns a list of failures."""
    bits = bits or max(cert.precision_bits, _BASE_BITS)
    p = as_params((cert.n, cert.m))
    problems = []
    lo, hi = cert.bracket
    if not 2.0 < lo < cert.y_star < hi:
        problems.append("y_star outside bracket")
    with precision(bits):
        x0 = two_cos_pi_over(cert.r)
        y = gmpy2.mpfr(cert.y_star_digits) if cert.y_star_digits else hp(cert.y_star)
        if sign(riley_hp(p, x0, lo)) == sign(riley_hp(p, x0, hi)):
            problems.append("bracket endpoints have equal signs")
        if not abs(riley_hp(p, x0, y)) < RESIDUAL_TOL:
            problems.append("Riley residual too large")
        if not relation_residual(p, x0, y) < RELATION_TOL:
            problems.append("relation residual too large")
    return problems


# ---------------------------------------------------------------------------
# constructive seeds


def _first_crossing(g, ys, g_at_two):
    """First sign change of float values g on ys, with g_at_two at y = 2."""
    brackets = sign_change_brackets(ys, np.sign(g).astype(int), sign(g_at_two))
    return brackets[0] if brackets else None


def _bisect_hp(f, lo, hi, bits, iters=400):
    with precision(bits):
        a, b = hp(lo), hp(hi)
        sa = sign(f(a))
        for _ in range(iters):
            c = (a + b) / 2
            if c in (a, b):
                break
            sc = sign(f(c))
            if sc == 0:
                return c
            if sc == sa:
                a = c
            else:
                b = c
        return (a + b) / 2


def theta_seed(p, x0, j, cfg=None):
    """
    y0 > 2 with beta(x0, y0) = 2cos((2j-1)pi/(2n+1)), the first such crossing
    scanning upward from y = 2, or None.

    At y0 we have S_n(beta) = S_{n-1}(beta), so R factors there.
    """
    p = as_params(p)
    cfg = cfg or ScanConfig()
    if p.n < 1 or not 1 <= j <= p.n:
        raise ValueError(f"theta_seed needs n >= 1 and 1 <= j <= n, got n={p.n}, j={j}")
    root = ThetaRoot.of(p.n, j)
    try:
        y_hi = y_upper_bound(p, x0, cfg)
    except UpperBoundError:
        return None
    ys = scan_grid(y_hi, cfg)
    with np.errstate(over="ignore", invalid="ignore"):
        g = beta_eval(p.m, float(x0), ys) - root.value
    bracket = _first_crossing(g, ys, float(x0) ** 2 - 2 - root.value)
    if bracket is None:
        return None

    def f(y):
        return beta_eval(p.m, hp(x0), y) - root.value_at(_GmpyCtx)

    y0 = float(_bisect_hp(f, *bracket, _BASE_BITS))
    return y0 if y0 > 2.0 else None


class _GmpyCtx:
    """Just enough of an mpmath-like context for ThetaRoot.value_at."""

    pi = property(lambda self: gmpy2.const_pi())

    @staticmethod
    def cos(v):
        return gmpy2.cos(v)


_GmpyCtx = _GmpyCtx()


def seed_signs(p, x0, y0):
    """
    (sign of R, sign of the factored form) at a theta seed, both at high
    precision.
    """
    p = as_params(p)
    with precision(_BASE_BITS):
        xh, yh = hp(x0), hp(y0)
        a, b, sn1, sn = riley_parts(p, xh * xh, yh)
        q = xh * xh
        _, _, sm1, sm = _inner(p.m, q, yh)
        factored = (q - yh - 2) * (sm + (1 - yh) * sm1) * sn
        return sign(a * sn - b * sn1), sign(factored)


# ---------------------------------------------------------------------------
# case n = -2, m >= 1


def p_case4(m, x0, y):
    """P(y) = (y^2 - y x^2 + x^2) S_{m-1}(alpha) + y - x^2."""
    if m < 1:
        raise ValueError("p_case4 needs m >= 1")
    q = x0 * x0
    alpha = y * y - q * y + 2 * q - 2
    return (y * y - y * q + q) * chebyshev_pair(m - 1, alpha)[1] + y - q


def p_case4_root(m, x0, cfg=None):
    """
    The root y0 > 2 of P when P(2) < 0 (P increases on (2, inf)), else None.
    """
    cfg = cfg or ScanConfig()
    if not p_case4(m, float(x0), 2.0) < 0:
        return None
    hi = 4.0
    while p_case4(m, float(x0), hi) <= 0:
        hi *= 2
        if hi > cfg.y_max_cap:
            return None
    return float(_bisect_hp(lambda y: p_case4(m, hp(x0), y), 2.0, hi, _BASE_BITS))
