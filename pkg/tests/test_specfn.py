"""Unit and property tests for the scalar numerics."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from composite_coder import specfn

# h(1/4) = 2 - (3/4) log2(3), an independent closed form
H_QUARTER = 2.0 - 0.75 * math.log2(3.0)


class TestBinaryEntropy:
    def test_symmetric_maximum(self):
        assert specfn.binary_entropy(0.5) == 1.0

    def test_degenerate_endpoints(self):
        assert specfn.binary_entropy(0.0) == 0.0
        assert specfn.binary_entropy(1.0) == 0.0

    def test_quarter_closed_form(self):
        assert specfn.binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-15)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            specfn.binary_entropy(bad)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_symmetry(self, p):
        assert specfn.binary_entropy(p) == pytest.approx(
            specfn.binary_entropy(1.0 - p), abs=1e-12
        )


class TestInverseBinaryEntropy:
    def test_endpoints(self):
        assert specfn.inverse_binary_entropy(1.0) == 0.5
        assert specfn.inverse_binary_entropy(0.0) == 0.0

    def test_quarter_roundtrip(self):
        assert specfn.inverse_binary_entropy(H_QUARTER) == pytest.approx(0.25, abs=1e-9)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfn.inverse_binary_entropy(1.5)

    @given(st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200)
    def test_roundtrip(self, r):
        assert specfn.binary_entropy(specfn.inverse_binary_entropy(r)) == pytest.approx(
            r, abs=1e-9
        )


class TestDistortionRate:
    def test_zero_rate_guesses_mean(self):
        assert specfn.bss_distortion_rate(0.0) == 0.5

    def test_one_bit_lossless(self):
        assert specfn.bss_distortion_rate(1.0) == 0.0
        assert specfn.bss_distortion_rate(1.7) == 0.0

    def test_inverse_consistency(self):
        # independent check: the returned D must satisfy 1 - h(D) = r
        for r in (0.1887, 0.3, 0.6, 0.95):
            d = specfn.bss_distortion_rate(r)
            assert 1.0 - specfn.binary_entropy(d) == pytest.approx(r, abs=1e-9)
        assert specfn.bss_distortion_rate(0.1887) == pytest.approx(0.25, abs=5e-4)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfn.bss_distortion_rate(-0.01)


class TestBinaryConvolve:
    def test_identity_element(self):
        assert specfn.binary_convolve(0.3, 0.0) == 0.3

    def test_absorbing_element(self):
        assert specfn.binary_convolve(0.3, 0.5) == 0.5

    def test_worked_value(self):
        assert specfn.binary_convolve(0.25, 0.45) == pytest.approx(
            0.25 * 0.55 + 0.45 * 0.75, abs=1e-15
        )

    @given(
        st.floats(min_value=0.0, max_value=0.5),
        st.floats(min_value=0.0, max_value=0.5),
    )
    def test_commutes_and_dominates(self, a, b):
        ab = specfn.binary_convolve(a, b)
        assert ab == pytest.approx(specfn.binary_convolve(b, a), abs=1e-15)
        assert ab >= max(a, b) - 1e-15

    @given(
        st.floats(min_value=0.0, max_value=0.5),
        st.floats(min_value=0.0, max_value=0.5),
        st.floats(min_value=0.0, max_value=0.5),
    )
    def test_monotone_on_lower_half(self, a, b1, b2):
        lo, hi = min(b1, b2), max(b1, b2)
        assert specfn.binary_convolve(a, lo) <= specfn.binary_convolve(a, hi) + 1e-15


class TestExpIntegral:
    def test_matches_quadrature(self):
        # oracle: shifted defining integral, exp(-x) * int_0^inf exp(-s)/(x+s) ds
        for x in (0.5, 1.0, 2.0, 7.5):
            oracle = math.exp(-x) * specfn.integrate(
                lambda s: math.exp(-s) / (x + s), 0.0, math.inf, tol=1e-13
            )
            assert specfn.exp_integral(x) == pytest.approx(oracle, rel=1e-10)

    def test_matches_scipy(self):
        scipy_special = pytest.importorskip("scipy.special")
        for x in (0.05, 0.3, 1.0, 4.0, 12.0, 20.0):
            assert specfn.exp_integral(x) == pytest.approx(
                float(scipy_special.exp1(x)), rel=1e-12
            )

    def test_strictly_decreasing_with_upper_bound(self):
        xs = [0.05 * (1.35**k) for k in range(20)]
        values = [specfn.exp_integral(x) for x in xs]
        for (x, v), v_next in zip(zip(xs, values), values[1:]):
            assert v > v_next
            assert v < math.exp(-x) / x

    def test_domain(self):
        with pytest.raises(ValueError):
            specfn.exp_integral(0.0)
        with pytest.raises(ValueError):
            specfn.exp_integral(-1.0)


class TestLambertW:
    def test_fixed_points(self):
        assert specfn.lambert_w(0.0) == 0.0
        assert specfn.lambert_w(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_unit_argument(self):
        # oracle: damped fixed-point iteration w <- (w + z exp(-w)) / 2 variants
        w = 0.5
        for _ in range(200):
            w = 0.5 * (w + math.log(1.0 / w))  # solves w = -ln w, i.e. w e^w = 1
        assert specfn.lambert_w(1.0) == pytest.approx(w, abs=1e-9)

    def test_roundtrip_log_grid(self):
        for k in range(-24, 25):
            z = 10.0 ** (k / 4.0)
            w = specfn.lambert_w(z)
            assert abs(w * math.exp(w) - z) <= 1e-12 * max(1.0, z)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfn.lambert_w(-0.5)


class TestFindRoot:
    def test_linear(self):
        assert specfn.find_root(lambda x: x - 1.0, 0.0, 2.0, tol=1e-12) == pytest.approx(
            1.0, abs=1e-11
        )

    def test_entropy_half(self):
        root = specfn.find_root(
            lambda x: specfn.binary_entropy(x) - 0.5, 0.0, 0.5, tol=1e-12
        )
        assert specfn.binary_entropy(root) == pytest.approx(0.5, abs=1e-9)
        assert root == pytest.approx(0.11002786443835955, abs=1e-9)

    def test_bracket_error(self):
        with pytest.raises(specfn.BracketError):
            specfn.find_root(lambda x: x * x + 1.0, 0.5, 2.0)


class TestMinimizeScalar:
    def test_parabola(self):
        x, fx = specfn.minimize_scalar(lambda x: (x - 0.3) ** 2, 0.0, 1.0, tol=1e-10)
        assert x == pytest.approx(0.3, abs=1e-8)
        assert fx == pytest.approx(0.0, abs=1e-15)

    def test_constant(self):
        x, fx = specfn.minimize_scalar(lambda _: 2.5, 0.0, 1.0, tol=1e-8)
        assert fx == 2.5
        assert 0.0 <= x <= 1.0

    def test_outage_tradeoff_matches_closed_form(self):
        # closed-form minimizer of q + (1-q)/(1 - ln(1-q)) at unit SNR scale
        closed = 1.0 - math.exp(-2.0 / (1.0 + math.sqrt(5.0)))

        def objective(q):
            return q + (1.0 - q) / (1.0 - math.log1p(-q))

        x, _ = specfn.minimize_scalar(objective, 1e-9, 1.0 - 1e-9, tol=1e-10, grid=4096)
        assert x == pytest.approx(closed, abs=1e-6)


class TestIntegrate:
    def test_unit_box(self):
        assert specfn.integrate(lambda _: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_exponential_tail(self):
        assert specfn.integrate(lambda x: math.exp(-x), 0.0, math.inf) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_consistent_with_exp_integral(self):
        value = specfn.integrate(lambda t: math.exp(-t) / t, 1.0, math.inf, tol=1e-12)
        assert value == pytest.approx(specfn.exp_integral(1.0), abs=1e-9)

    def test_orientation(self):
        assert specfn.integrate(lambda x: x, 1.0, 0.0) == pytest.approx(-0.5, abs=1e-12)

    def test_budget_exhaustion(self):
        with pytest.raises(specfn.ConvergenceError):
            specfn.integrate(
                lambda x: 1.0 / math.sqrt(abs(x - 0.3) + 1e-300),
                0.0,
                1.0,
                tol=1e-14,
                max_depth=8,
            )


def _is_convex_chain(hull):
    for (x0, y0), (x1, y1), (x2, y2) in zip(hull, hull[1:], hull[2:]):
        if (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) <= 0.0:
            return False
    return True


class TestParetoLowerHull:
    def test_single_point(self):
        assert specfn.pareto_lower_hull([(0.2, 0.3)]) == [(0.2, 0.3)]

    def test_dominated_point_removed(self):
        hull = specfn.pareto_lower_hull([(0.1, 0.4), (0.4, 0.1), (0.4, 0.4)])
        assert hull == [(0.1, 0.4), (0.4, 0.1)]

    def test_interior_point_removed_by_chord(self):
        hull = specfn.pareto_lower_hull([(0.0, 1.0), (0.5, 0.6), (1.0, 0.0)])
        assert hull == [(0.0, 1.0), (1.0, 0.0)]

    def test_concave_point_kept(self):
        hull = specfn.pareto_lower_hull([(0.0, 1.0), (0.5, 0.3), (1.0, 0.0)])
        assert hull == [(0.0, 1.0), (0.5, 0.3), (1.0, 0.0)]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            specfn.pareto_lower_hull([])

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0.0, max_value=1.0),
                st.floats(min_value=0.0, max_value=1.0),
            ),
            min_size=1,
            max_size=40,
        )
    )
    @settings(max_examples=200)
    def test_hull_convex_sorted_and_dominating(self, points):
        hull = specfn.pareto_lower_hull(points)
        xs = [x for x, _ in hull]
        assert xs == sorted(xs)
        assert _is_convex_chain(hull)
        for p in points:
            assert specfn.hull_dominates(hull, p, slack=1e-12)


class TestHullDominates:
    def test_left_of_hull_not_dominated(self):
        hull = [(0.2, 0.5), (0.5, 0.2)]
        assert not specfn.hull_dominates(hull, (0.1, 0.9))

    def test_segment_interpolation(self):
        hull = [(0.0, 1.0), (1.0, 0.0)]
        assert specfn.hull_dominates(hull, (0.5, 0.5))
        assert specfn.hull_dominates(hull, (0.5, 0.5 - 1e-13), slack=1e-12)
        assert not specfn.hull_dominates(hull, (0.5, 0.4))
