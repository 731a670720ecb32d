import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import digamma, polygamma

from renyicf.measure import RhoMeasure, rho_cdf, rho_density, rho_interval
from renyicf.transfer import branch_point


class TestRhoCdf:
    def test_endpoints(self):
        m = RhoMeasure(2)
        assert rho_cdf(m, 0.0) == 0.0
        assert rho_cdf(m, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_midpoint_value(self):
        # log(1.5)/log(2), frozen from 40-digit evaluation
        assert rho_cdf(RhoMeasure(2), 0.5) == pytest.approx(
            0.5849625007211562, abs=1e-15)

    def test_monotone(self):
        m = RhoMeasure(7)
        xs = np.linspace(0, 1, 500)
        assert np.all(np.diff(rho_cdf(m, xs)) > 0)

    def test_matches_quadrature_of_density(self):
        rng = np.random.default_rng(3)
        for N in (2, 5, 30):
            m = RhoMeasure(N)
            for x in rng.random(34):
                val, err = quad(lambda u: rho_density(m, u), 0.0, float(x))
                assert abs(rho_cdf(m, float(x)) - val) < 1e-12 + 10 * err

    def test_domain_error(self):
        with pytest.raises(ValueError):
            rho_cdf(RhoMeasure(2), 1.2)


class TestRhoInterval:
    def test_normalization(self):
        assert rho_interval(RhoMeasure(2), 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_null_interval(self):
        assert rho_interval(RhoMeasure(3), 0.25, 0.25) == 0.0

    def test_half_interval(self):
        assert rho_interval(RhoMeasure(2), 0.0, 0.5) == pytest.approx(
            0.5849625007211562, abs=1e-15)

    def test_rejects_reversed(self):
        with pytest.raises(ValueError):
            rho_interval(RhoMeasure(2), 0.7, 0.2)


class TestRhoDensity:
    def test_endpoint_values(self):
        m = RhoMeasure(2)
        # 1/log 2 and 1/(2 log 2)
        assert rho_density(m, 0.0) == pytest.approx(1.4426950408889634, abs=1e-15)
        assert rho_density(m, 1.0) == pytest.approx(0.7213475204444817, abs=1e-15)

    def test_strictly_decreasing_positive(self):
        m = RhoMeasure(4)
        xs = np.linspace(0, 1, 300)
        d = rho_density(m, xs)
        assert np.all(d > 0)
        assert np.all(np.diff(d) < 0)

    @pytest.mark.parametrize("N", [2, 3, 17])
    def test_integrates_to_one(self, N):
        m = RhoMeasure(N)
        val, _ = quad(lambda u: rho_density(m, u), 0.0, 1.0)
        assert abs(val - 1.0) < 1e-12

    def test_normalizer_large_N(self):
        # log1p keeps the normalizer accurate where log N - log(N-1) cancels
        m = RhoMeasure(10 ** 6)
        assert m.normalizer == pytest.approx(10 ** 6 - 0.5, rel=1e-6)


class TestInvariance:
    @pytest.mark.parametrize("N", [2, 3, 10])
    def test_preimage_measure_preserved(self, N):
        # rho(R^-1([a,b])) = rho([a,b]): sum the branch preimages up to a
        # cutoff, then a second-order analytic tail: the CDF expanded at 1
        # turns the remaining branch sum into digamma/trigamma differences
        rng = np.random.default_rng(40 + N)
        m = RhoMeasure(N)
        I = 10 ** 5
        i = np.arange(N, I + 1, dtype=np.float64)
        for _ in range(200):
            a, b = np.sort(rng.random(2))
            ua = branch_point(N, i, a)
            ub = branch_point(N, i, b)
            total = float(np.sum(rho_cdf(m, ub) - rho_cdf(m, ua)))
            total += rho_density(m, 1.0) * N * (digamma(I + 1 + b) - digamma(I + 1 + a))
            total -= m.normalizer / 2 * (polygamma(1, I + 1 + b) - polygamma(1, I + 1 + a))
            assert abs(total - rho_interval(m, float(a), float(b))) < 1e-10
