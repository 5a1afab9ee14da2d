import math

import numpy as np
import pytest

import rootradii as rr
from rootradii import newton_polygon_radii
from rootradii.poly import Polynomial

from conftest import SECT5_COEFFS, random_complex_poly, random_real_poly


def dense(p):
    return p.dense()


class TestPolynomial:
    def test_trailing_zeros_trimmed(self):
        p = Polynomial([1.0, 2.0, 0.0, 0.0])
        assert p.degree == 1

    def test_zero_polynomial_allowed(self):
        p = Polynomial([0.0])
        assert p.is_zero

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Polynomial([1.0, np.inf])

    def test_coeffs_immutable(self):
        p = Polynomial([1.0, 2.0])
        with pytest.raises(ValueError):
            p.coeffs[0] = 5.0


class TestEvaluate:
    def test_simple_quadratic(self):
        assert rr.evaluate(Polynomial([-1, 0, 1]), 2.0) == 3.0

    def test_sect5_at_root(self, sect5):
        assert abs(rr.evaluate(sect5, 0.38268343)) < 1e-6

    def test_sect5_at_zero(self, sect5):
        assert rr.evaluate(sect5, 0.0) == 4.0

    def test_scale_factor_applied(self):
        p = Polynomial([1.0, 1.0], scale_log2=3.0)
        assert rr.evaluate(p, 1.0) == 16.0

    def test_overflow_raises(self):
        p = Polynomial([1.0], scale_log2=40000.0)
        with pytest.raises(OverflowError):
            rr.evaluate(p, 1.0)


class TestDerivative:
    def test_quadratic(self):
        d = rr.derivative(Polynomial([-1, 0, 1]))
        assert np.array_equal(d.coeffs, [0.0, 2.0])

    def test_constant_gives_zero_polynomial(self):
        d = rr.derivative(Polynomial([5.0]))
        assert d.is_zero

    def test_cubic_term_by_term(self):
        d = rr.derivative(Polynomial([4, 3, 2, 1]))
        assert np.array_equal(d.coeffs, [3.0, 4.0, 3.0])


class TestTaylorShift:
    def test_square_shift_one(self):
        q = rr.taylor_shift(Polynomial([0, 0, 1]), 1.0)
        assert np.allclose(dense(q), [1.0, 2.0, 1.0], rtol=0, atol=0)

    def test_identity_shift(self):
        p = Polynomial([-1, 0, 1])
        q = rr.taylor_shift(p, 0.0)
        assert np.array_equal(q.coeffs, p.coeffs)

    def test_constant_term_is_value_at_shift(self):
        rng = np.random.default_rng(5)
        p = random_real_poly(rng, 6)
        q = rr.taylor_shift(p, 3.0)
        v = rr.evaluate(p, 3.0)
        assert abs(complex(q.coeffs[0]) * 2.0**q.scale_log2 - v) <= 1e-12 * abs(v)

    def test_real_inputs_stay_real(self):
        q = rr.taylor_shift(Polynomial([1.0, 2.0, 3.0]), -2.0)
        assert q.is_real

    def test_consistency_with_evaluation(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            p = random_complex_poly(rng, int(rng.integers(1, 9)))
            z = complex(rng.normal(), rng.normal())
            w = complex(rng.normal(), rng.normal())
            a = rr.evaluate(rr.taylor_shift(p, z), w)
            b = rr.evaluate(p, w + z)
            assert abs(a - b) <= 1e-10 * max(1.0, abs(b))

    def test_persistent_overflow_raises(self):
        p = Polynomial(np.ones(41))
        with pytest.raises(rr.PrecisionLossError):
            rr.taylor_shift(p, 1e30)


class TestReverseAndNegate:
    def test_reverse_simple(self):
        q = rr.reverse(Polynomial([4, 3, 2]))
        assert np.array_equal(q.coeffs, [2.0, 3.0, 4.0])

    def test_reverse_linear_root_map(self):
        q = rr.reverse(Polynomial([-2, 1]))  # root 2 -> 1/2
        assert np.array_equal(q.coeffs, [1.0, -2.0])
        assert abs(rr.evaluate(q, 0.5)) == 0.0

    def test_reverse_zero_constant_errors(self):
        with pytest.raises(ValueError, match="deflate"):
            rr.reverse(Polynomial([0, 1]))

    def test_negate_odd_function(self):
        q = rr.negate_arg(Polynomial([0, 1, 0, 1]))  # x^3 + x
        assert np.array_equal(q.coeffs, [0.0, -1.0, 0.0, -1.0])

    def test_root_maps_against_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            p = random_real_poly(rng, int(rng.integers(2, 7)))
            if abs(p.coeffs[0]) < 1e-6:
                continue
            roots = rr.all_roots_oracle(p).roots
            rev_roots = rr.all_roots_oracle(rr.reverse(p)).roots
            neg_roots = rr.all_roots_oracle(rr.negate_arg(p)).roots
            for x in roots:
                assert min(abs(rev_roots - 1.0 / x)) < 1e-6 * max(1.0, abs(1.0 / x))
                assert min(abs(neg_roots + x)) < 1e-8 * max(1.0, abs(x))


class TestGraeffeStep:
    def test_squares_pm_one(self):
        q = rr.graeffe_step(Polynomial([-1, 0, 1]))
        assert np.allclose(dense(q), [1.0, -2.0, 1.0], rtol=0, atol=0)

    def test_linear_root_squares(self):
        q = rr.graeffe_step(Polynomial([-3, 1]))
        assert np.allclose(dense(q), [-9.0, 1.0], rtol=0, atol=0)

    def test_output_normalized(self):
        q = rr.graeffe_step(Polynomial([1000.0, -2000.0, 4000.0]))
        assert 0.5 <= np.abs(q.coeffs).max() <= 2.0

    def test_root_squaring_against_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            p = random_real_poly(rng, int(rng.integers(2, 9)))
            rs = rr.all_roots_oracle(p)
            if not rs.converged:
                continue
            qs = rr.all_roots_oracle(rr.graeffe_step(p))
            for x in rs.roots:
                target = x * x
                assert min(abs(qs.roots - target)) <= 1e-8 * max(1.0, abs(target))


class TestNormalize:
    def test_big_coefficients(self):
        p = Polynomial([-2048.0, 1024.0])
        q = rr.normalize(p)
        assert 0.5 <= np.abs(q.coeffs).max() <= 2.0
        assert q.scale_log2 > 0

    def test_idempotent(self):
        p = Polynomial([-2048.0, 1024.0])
        q = rr.normalize(p)
        assert rr.normalize(q) is q

    def test_zero_errors(self):
        with pytest.raises(ValueError):
            rr.normalize(Polynomial([0.0]))

    def test_represented_value_unchanged(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            p = random_real_poly(rng, 5)
            p = Polynomial(p.coeffs * 3e5)
            q = rr.normalize(p)
            a, b = rr.evaluate(p, 1.0), rr.evaluate(q, 1.0)
            assert abs(a - b) <= 1e-15 * abs(a)

    def test_radii_estimates_scale_invariant(self):
        p = Polynomial(np.array(SECT5_COEFFS))
        q = rr.normalize(Polynomial(np.array(SECT5_COEFFS) * 2.0**9))
        assert np.array_equal(newton_polygon_radii(p).radii, newton_polygon_radii(q).radii)


class TestRootRadiusUpperBound:
    def test_sect5_value(self, sect5):
        # max over i of |p_{7-i}/8|**(1/i) is |16/8| = 2, reached at i = 1
        assert rr.root_radius_upper_bound(sect5) == 4.0

    def test_unit_circle_family(self):
        p = Polynomial([-1, 0, 0, 0, 0, 1])  # x^5 - 1
        assert rr.root_radius_upper_bound(p) == 2.0

    def test_hand_expanded_quadratic(self):
        p = Polynomial([5, -6, 1])  # (x-5)(x-1)
        assert rr.root_radius_upper_bound(p) == 12.0

    def test_sandwich_against_oracle(self, oracle_corpus):
        for p, rs in oracle_corpus[:50]:
            r1 = np.abs(rs.roots).max()
            bound = rr.root_radius_upper_bound(p)
            n = p.degree
            assert 0.5 * bound / n <= r1 * (1 + 1e-9)
            assert r1 <= bound * (1 + 1e-9)


class TestCoefficientFiles:
    def test_round_trip_real(self, tmp_path, sect5):
        path = tmp_path / "p.txt"
        rr.write_coefficients(path, sect5)
        q = rr.read_coefficients(path)
        assert np.array_equal(q.coeffs, sect5.coeffs)

    def test_round_trip_complex(self, tmp_path):
        p = Polynomial([1 + 2j, 0, 3 - 4j])
        path = tmp_path / "p.txt"
        rr.write_coefficients(path, p)
        q = rr.read_coefficients(path)
        assert np.array_equal(q.coeffs, p.coeffs)

    def test_comments_and_blanks_ignored(self):
        p = rr.parse_coefficients("# header\n\n1.0\n2.0   # inline\n")
        assert np.array_equal(p.coeffs, [1.0, 2.0])

    def test_bad_line_reports_number(self):
        with pytest.raises(ValueError, match="line 2"):
            rr.parse_coefficients("1.0\nnope\n")

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            rr.parse_coefficients("# nothing\n")
