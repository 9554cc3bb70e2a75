import cmath
import math
import random

import gmpy2
import mpmath
import pytest

from riley._numeric import precision
from riley.rep_oracle import (
    COMMUTATOR,
    GroupWord,
    Mat2,
    build_v,
    build_w,
    make_rep_point,
    matrix_power,
    oracle_discrepancy,
    random_points,
    relation_residual,
    rho_eval,
    riley_from_matrices,
)
from riley.riley_closed import alpha_eval, beta_eval, riley_eval

PAIRS_5 = [(n, m) for n in range(-5, 6) for m in range(-5, 6) if n and m]


def _close(a, b, tol):
    return all(abs(u - v) < tol for u, v in zip(a.entries(), b.entries()))


def _rand_point(rng, r=2.0):
    return complex(rng.uniform(-r, r), rng.uniform(-r, r)), complex(rng.uniform(-r, r), rng.uniform(-r, r))


class TestGroupWord:
    def test_letters_validated(self):
        with pytest.raises(ValueError):
            GroupWord("abc")

    def test_inverse_and_power(self):
        assert COMMUTATOR.inverse().letters == "baBA"
        assert (GroupWord("ab") ** 3).letters == "ababab"
        assert (GroupWord("ab") ** -2).letters == "BABA"
        assert len(GroupWord("ab") ** 0) == 0

    def test_reduce(self):
        assert GroupWord("abBAa").reduce().letters == "a"
        assert GroupWord("aA").reduce().letters == ""
        assert str(GroupWord("")) == "1"

    def test_build_v_m1(self):
        assert build_v(1).letters == "abAB" + "a" + "baBA" + "b"

    @pytest.mark.parametrize("m, length", [(3, 26), (-2, 18), (1, 10), (-1, 10)])
    def test_build_v_length(self, m, length):
        assert len(build_v(m)) == length == 8 * abs(m) + 2

    def test_build_v_rejects_zero(self):
        with pytest.raises(ValueError):
            build_v(0)

    def test_build_w_examples(self):
        assert build_w((1, 1)).letters == build_v(1).letters + "abAB" + "ab"
        assert len(build_w((1, 1))) == 16
        assert len(build_w((2, -1))) == 26

    @pytest.mark.parametrize("p", PAIRS_5)
    def test_build_w_length_and_reduction(self, p):
        n, m = p
        w = build_w(p)
        assert len(w) == abs(n) * (8 * abs(m) + 2) + 4 * abs(m) + 2
        assert len(w.reduce()) > 0


class TestRepPoint:
    @pytest.mark.parametrize("r", [2, 3, 5, 7, 12])
    def test_root_of_unity_branch(self, r):
        pt = make_rep_point(2 * math.cos(math.pi / r), 3.0)
        assert abs(pt.t - cmath.exp(1j * math.pi / r)) < 1e-12

    def test_real_branches(self):
        assert make_rep_point(2.0, 3.0).t == pytest.approx(1)
        assert make_rep_point(2.5, 3.0).t == pytest.approx(2)
        assert make_rep_point(-2.5, 3.0).t == pytest.approx(-2)

    def test_invariants(self):
        rng = random.Random(3)
        for _ in range(50):
            x, y = _rand_point(rng, 3)
            pt = make_rep_point(x, y)
            assert abs(pt.t + 1 / pt.t - x) < 1e-12
            assert pt.u == y - 2
            assert pt.t.imag >= 0 or abs(pt.t.imag) < 1e-15

    def test_high_precision_types(self):
        with precision(200):
            pt = make_rep_point(gmpy2.mpfr(1), gmpy2.mpfr(3))
            assert isinstance(pt.t, type(gmpy2.mpc(0)))
        pt = make_rep_point(mpmath.mpf(1), mpmath.mpf(3))
        assert isinstance(pt.t, mpmath.mpc)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            make_rep_point(float("nan"), 3.0)


class TestRhoEval:
    def test_inverse_pair(self):
        pt = make_rep_point(0.7 + 0.2j, 1.3)
        assert _close(rho_eval(GroupWord("aA"), pt), Mat2.identity(1), 1e-12)
        assert _close(rho_eval(GroupWord("Bb"), pt), Mat2.identity(1), 1e-12)

    def test_trace_ab_inverse(self):
        rng = random.Random(4)
        for _ in range(20):
            x, y = _rand_point(rng)
            assert abs(rho_eval(GroupWord("aB"), make_rep_point(x, y)).trace - y) < 1e-12

    def test_commutator_trace_is_alpha(self):
        rng = random.Random(5)
        for _ in range(20):
            x, y = _rand_point(rng)
            assert abs(rho_eval(COMMUTATOR, make_rep_point(x, y)).trace - alpha_eval(x, y)) < 1e-10

    @pytest.mark.parametrize("m", [-3, -1, 1, 2, 4])
    def test_trace_v_is_beta(self, m):
        rng = random.Random(m + 10)
        for _ in range(20):
            x, y = _rand_point(rng, 1.5)
            got = rho_eval(build_v(m), make_rep_point(x, y)).trace
            want = beta_eval(m, x, y)
            assert abs(got - want) / (1 + abs(want)) < 1e-10

    @pytest.mark.parametrize("p", [(1, 1), (-3, 2), (5, -5), (4, 4)])
    def test_determinant_one(self, p):
        rng = random.Random(6)
        for _ in range(10):
            x, y = _rand_point(rng, 1.2)
            # entries reach ~1e27 here, so the determinant needs ample bits
            with precision(512):
                hpt = make_rep_point(gmpy2.mpc(x), gmpy2.mpc(y))
                for word in (build_v(p[1]), build_w(p)):
                    assert abs(rho_eval(word, hpt).det - 1) < 1e-9

    def test_determinant_one_double_short_words(self):
        pt = make_rep_point(0.9 - 0.3j, 1.4 + 0.2j)
        for word in (COMMUTATOR, build_v(1), build_w((1, -1))):
            assert abs(rho_eval(word, pt).det - 1) < 1e-9

    def test_free_reduction_invariance(self):
        rng = random.Random(8)
        short = [GroupWord("abBAab"), GroupWord("aAbBabAB"), GroupWord("bBaAbABa")]
        for _ in range(10):
            pt = make_rep_point(*_rand_point(rng, 1.5))
            for word in short:
                assert _close(rho_eval(word, pt), rho_eval(word.reduce(), pt), 1e-12)

    def test_free_reduction_invariance_long_words(self):
        # w w^-1 cancels badly in double precision, so compare in MPC
        rng = random.Random(8)
        w = build_w((2, 1))
        words = [w + w.inverse() + GroupWord("b"), build_v(-3) + build_v(-3).inverse() + build_v(2)]
        with precision(200):
            for _ in range(10):
                x, y = (gmpy2.mpc(v) for v in _rand_point(rng, 1.5))
                pt = make_rep_point(x, y)
                for word in words:
                    assert _close(rho_eval(word, pt), rho_eval(word.reduce(), pt), 1e-12)


class TestRileyFromMatrices:
    @pytest.mark.parametrize("p", [(n, m) for n in (-1, 1) for m in (-1, 1)])
    def test_double_precision_small(self, p):
        for x, y in random_points(100, seed=1):
            a, b = riley_from_matrices(p, x, y), riley_eval(p, x, y)
            assert abs(a - b) / (1 + abs(b)) < 1e-9

    @pytest.mark.parametrize("p", [(2, -3), (-5, 5), (5, -1), (-4, -4)])
    def test_high_precision(self, p):
        assert oracle_discrepancy(p, samples=25, seed=2) < 1e-9

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_value_at_r6(self, m):
        assert abs(riley_from_matrices((1, m), 2 * math.cos(math.pi / 6), 2) + 1) < 1e-10

    @pytest.mark.parametrize("p", [(1, 1), (2, -3), (-3, 2)])
    def test_both_branches_agree(self, p):
        rng = random.Random(9)
        with precision(200):
            for _ in range(10):
                x, y = (gmpy2.mpc(v) for v in _rand_point(rng, 2.5))
                t = make_rep_point(x, y).t
                a = riley_from_matrices(p, x, y, t)
                b = riley_from_matrices(p, x, y, 1 / t)
                assert abs(a - b) / (1 + abs(a)) < 1e-10


class TestRelationResidual:
    def test_non_root(self):
        assert relation_residual((1, 1), 0.0, 10.0) > 1e-3

    def test_small_at_root(self):
        # y* for (1, 1) at r = 5, located by bisection of riley_eval
        x = 2 * math.cos(math.pi / 5)
        with precision(200):
            xh = gmpy2.mpfr(x)
            lo, hi = gmpy2.mpfr(2.1), gmpy2.mpfr(2.2)
            assert riley_eval((1, 1), xh, lo) * riley_eval((1, 1), xh, hi) < 0
            for _ in range(190):
                mid = (lo + hi) / 2
                if riley_eval((1, 1), xh, lo) * riley_eval((1, 1), xh, mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            assert abs(riley_eval((1, 1), xh, lo)) < 1e-8
            assert relation_residual((1, 1), xh, lo) < 1e-8


class TestMatrixPower:
    @pytest.mark.parametrize("m", [k for k in range(-10, 11)])
    def test_matches_literal_products(self, m):
        rng = random.Random(100 + m)
        for _ in range(20):
            x, y = _rand_point(rng, 1.0)
            pt = make_rep_point(x, y)
            v = rho_eval(COMMUTATOR, pt)
            literal = rho_eval(COMMUTATOR**m, pt)
            fast = matrix_power(v, m)
            assert _close(fast, literal, 1e-10 * (1 + literal.max_abs()))

    def test_trace_argument_is_alpha(self):
        pt = make_rep_point(0.4 + 0.1j, 1.7)
        assert abs(rho_eval(COMMUTATOR, pt).trace - alpha_eval(pt.x, pt.y)) < 1e-12


class TestRandomPoints:
    def test_seeded_and_bounded(self):
        a = random_points(50, seed=11)
        assert a == random_points(50, seed=11)
        assert a != random_points(50, seed=12)
        assert all(abs(x) <= 3 and abs(y) <= 3 for x, y in a)
