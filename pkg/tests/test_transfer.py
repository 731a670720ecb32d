import json
import math

import numpy as np
import pytest
from mpmath import mp

from renyicf import transfer
from renyicf.grids import GridFunction, Kind
from renyicf.measure import RhoMeasure, rho_cdf, rho_cdf_grid
from renyicf.qn import qn_exact
from renyicf.transfer import (
    TailPolicy,
    apply_transfer,
    branch_point,
    branch_weight,
    contraction_check,
    default_tail_policy,
    gk_step_cdf,
    gk_step_density,
    iterate_gk,
    ks_distance,
    lebesgue_cdf,
    monte_carlo_cdf,
)


class TestBranches:
    def test_weight_values(self):
        assert branch_weight(2, 2, 0.0) == pytest.approx(0.5)
        assert branch_weight(2, 3, 0.0) == pytest.approx(1 / 6)
        assert branch_weight(3, 3, 1.0) == pytest.approx(0.25)

    def test_point_values(self):
        assert branch_point(2, 2, 0.0) == 0.0
        assert branch_point(2, 4, 0.0) == pytest.approx(0.5)
        assert branch_point(5, 5, 1.0) == pytest.approx(1 / 6)

    def test_point_inverts_map(self):
        # u_{N,i} inverts R_N on the branch with digit i
        from renyicf.cf import digit, renyi_map

        rng = np.random.default_rng(8)
        for x in rng.random(50):
            i = digit(3, float(x))
            y = renyi_map(3, float(x))
            assert branch_point(3, i, y) == pytest.approx(float(x), abs=1e-12)

    def test_reject_small_branch(self):
        with pytest.raises(ValueError):
            branch_weight(5, 4, 0.5)

    def test_weight_normalization_identity(self):
        # sum_{i=N..I} P_{N,i}(x) telescopes to 1 - (x+N-1)/(x+I)
        rng = np.random.default_rng(21)
        for _ in range(1000):
            N = int(rng.integers(2, 30))
            x = float(rng.random())
            for I in (N + 10, N + 1000):
                i = np.arange(N, I + 1)
                got = float(np.sum(branch_weight(N, i, x)))
                assert got == pytest.approx(1 - (x + N - 1) / (x + I), abs=1e-12)


class TestApplyTransfer:
    def test_constant_one_is_fixed(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            N = int(rng.integers(2, 40))
            x = float(rng.random())
            t = TailPolicy(N + 1000)
            assert apply_transfer(N, lambda u: np.ones_like(u), x, t) \
                == pytest.approx(1.0, abs=1e-12)

    def test_linearity_on_constants(self):
        t = TailPolicy(3000)
        val = apply_transfer(2, lambda u: 2.5 * np.ones_like(u), 0.3, t)
        assert val == pytest.approx(2.5, abs=1e-12)

    def test_identity_function_series_oracle(self):
        # brute-force partial sum of sum_{i>=2} (1/(i(i-1))) (1 - 2/i)
        i = np.arange(2, 10 ** 6, dtype=np.float64)
        brute = float(np.sum(1.0 / (i * (i - 1.0)) * (1.0 - 2.0 / i)))
        got = apply_transfer(2, lambda u: u, 0.0, TailPolicy(10 ** 6 - 1, "bound-only"))
        assert got == pytest.approx(brute, abs=1e-10)

    def test_affine_function_at_zero(self):
        # f(y) = y + 1 at x = 0, against the same brute-force series
        i = np.arange(2, 10 ** 6, dtype=np.float64)
        brute = float(np.sum(1.0 / (i * (i - 1.0)) * (2.0 - 2.0 / i)))
        got = apply_transfer(2, lambda u: u + 1.0, 0.0,
                             TailPolicy(10 ** 6 - 1, "bound-only"))
        assert got == pytest.approx(brute, abs=1e-8)


class TestTailPolicy:
    def test_default_cutoff(self):
        assert default_tail_policy(2, 4096).cutoff == 8192
        assert default_tail_policy(2000, 4096).cutoff == 10 ** 6

    def test_rejects_bad_mode(self):
        with pytest.raises(ValueError):
            TailPolicy(100, "magic")


class TestGkStepCdf:
    def test_invariant_cdf_is_fixed_point(self):
        for N in (2, 10):
            F = GridFunction(N, Kind.CDF, rho_cdf_grid(N, 1024))
            out = gk_step_cdf(F, default_tail_policy(N, 1024))
            assert np.max(np.abs(out.values - F.values)) < 1e-6

    def test_lebesgue_node_against_digamma_oracle(self):
        # F(x) = x at x = 1/2: the branch sum is N x sum 1/(i(i+x)), which
        # digamma sums in closed form; cross-checked against a 1e6-term
        # partial sum plus that closed-form remainder
        from scipy.special import digamma

        N, M = 2, 4096
        x = 0.5
        i = np.arange(N, 10 ** 6, dtype=np.float64)
        partial = float(np.sum(N * x / (i * (i + x))))
        exact = N * (digamma(N + x) - digamma(N))
        assert partial == pytest.approx(exact - N * x / 10 ** 6, rel=1e-3)
        F = lebesgue_cdf(N, M)
        out = gk_step_cdf(F, TailPolicy(10 ** 5))
        assert out.values[M // 2] == pytest.approx(exact, abs=1e-8)

    def test_lebesgue_at_one_telescopes(self):
        # sum_{i>=N} N/(i(i+1)) = 1 exactly
        N = 3
        i = np.arange(N, 10 ** 6, dtype=np.float64)
        assert float(np.sum(N / (i * (i + 1.0)))) == pytest.approx(1.0, abs=1e-5)
        out = gk_step_cdf(lebesgue_cdf(N, 512), default_tail_policy(N, 512))
        assert out.values[-1] == 1.0

    def test_preserves_monotonicity_and_endpoints(self):
        xs = np.linspace(0.0, 1.0, 1025)
        F = GridFunction(2, Kind.CDF, xs ** 2)
        out = gk_step_cdf(F, default_tail_policy(2, 1024))
        assert out.values[0] == 0.0 and out.values[-1] == 1.0
        assert np.all(np.diff(out.values) >= -1e-10)

    def test_rejects_non_monotone_input(self):
        vals = np.linspace(0.0, 1.0, 513)
        vals[100] = 0.5
        with pytest.raises(ValueError):
            GridFunction(2, Kind.CDF, vals)

    def test_rejects_density_grid(self):
        f = GridFunction(2, Kind.DENSITY, np.ones(513))
        with pytest.raises(ValueError):
            gk_step_cdf(f, TailPolicy(1000))


class TestGkStepDensity:
    def test_constant_one_fixed(self):
        f = GridFunction(2, Kind.DENSITY, np.ones(1025))
        out = gk_step_density(f, default_tail_policy(2, 1024))
        assert np.max(np.abs(out.values - 1.0)) < 1e-12

    def test_scalar_multiple_fixed(self):
        c = 1 / math.log(2)
        f = GridFunction(2, Kind.DENSITY, np.full(1025, c))
        out = gk_step_density(f, default_tail_policy(2, 1024))
        assert np.max(np.abs(out.values - c)) < 1e-12

    def test_matches_apply_transfer_on_linear_data(self):
        # linear data interpolates exactly, so the grid kernel must agree
        # with the callable-based operator at every node
        N, M = 2, 512
        xs = np.linspace(0.0, 1.0, M + 1)
        f = GridFunction(N, Kind.DENSITY, xs + 1.0)
        t = TailPolicy(10 ** 4)
        out = gk_step_density(f, t)
        for j in (0, 17, M // 2, M):
            want = apply_transfer(N, lambda u: u + 1.0, float(xs[j]), t)
            assert out.values[j] == pytest.approx(want, abs=1e-13)

    def test_affine_node_zero_series_oracle(self):
        # node x=0 with f(y)=y+1 against the 1e6-term brute sum
        i = np.arange(2, 10 ** 6, dtype=np.float64)
        brute = float(np.sum(1.0 / (i * (i - 1.0)) * (2.0 - 2.0 / i)))
        M = 512
        f = GridFunction(2, Kind.DENSITY, np.linspace(1.0, 2.0, M + 1))
        out = gk_step_density(f, TailPolicy(10 ** 6 - 1, "bound-only"))
        assert out.values[0] == pytest.approx(brute, abs=1e-8)


class TestIterateGk:
    def test_invariant_start_reports_floor(self):
        F = GridFunction(2, Kind.CDF, rho_cdf_grid(2, 1024))
        rep = iterate_gk(2, F, 5)
        assert rep.floor_reached_before_fit
        assert all(e <= 1e-6 for e in rep.errors)

    def test_lebesgue_rate_below_qN(self):
        rep = iterate_gk(2, lebesgue_cdf(2, 1024), 15)
        assert rep.fitted_rate is not None
        assert rep.fitted_rate <= rep.q_ref + 0.05

    def test_quadratic_start_decays_to_floor(self):
        xs = np.linspace(0.0, 1.0, 1025)
        F = GridFunction(3, Kind.CDF, xs ** 2)
        rep = iterate_gk(3, F, 12)
        assert rep.errors[0] > 0
        assert rep.errors[-1] < 1e-6
        assert all(b <= a * 1.0001 or b < 1e-6
                   for a, b in zip(rep.errors, rep.errors[1:]))

    def test_report_json_round_trip(self):
        rep = iterate_gk(2, lebesgue_cdf(2, 512), 6)
        doc = json.loads(rep.to_json())
        assert doc["grid_M"] == 512
        assert len(doc["e_n"]) == 7
        assert json.loads(json.dumps(doc)) == doc

    def test_envelope_against_theorem_rate(self):
        # e_n <= C q^n with a fitted C <= 10, before the grid floor
        for N in (2, 10):
            rep = iterate_gk(N, lebesgue_cdf(N, 1024), 12)
            q = rep.q_ref
            for n, e in enumerate(rep.errors):
                if e > 100 * rep.error_floor:
                    assert e <= 10 * q ** n


class TestTwoFormsConsistency:
    def test_cdf_derivative_matches_density(self):
        # after k steps, (x+N-1) dF_k/dx tracks the density iterate f_k
        # starting from F_0(x) = x and f_0(x) = x+N-1; interior nodes only,
        # since endpoint re-pinning contaminates one-sided stencils
        N, M = 2, 8192
        t = default_tail_policy(N, M)
        xs = np.linspace(0.0, 1.0, M + 1)
        F = lebesgue_cdf(N, M)
        f = GridFunction(N, Kind.DENSITY, xs + N - 1)
        h = 1.0 / M
        for k in range(1, 6):
            F = gk_step_cdf(F, t)
            f = gk_step_density(f, t)
            dF = (F.values[2:] - F.values[:-2]) / (2 * h)
            lhs = (xs[1:-1] + N - 1) * dF
            dev = np.max(np.abs(lhs - f.values[1:-1])[3:-3])
            d3 = np.max(np.abs(np.diff(F.values, 3)[4:-4])) / h ** 3
            assert dev <= 10 * (h ** 2 / 6 * d3 * 2 + 1e-9)


class TestContraction:
    def test_linear_start_ratios_bounded(self):
        q2 = float(qn_exact(2).q)
        f0 = GridFunction(2, Kind.DENSITY, np.linspace(0.0, 1.0, 2049))
        ratios = contraction_check(2, f0, 5)
        assert all(r <= q2 + 0.02 for r in ratios)

    def test_constant_rejected(self):
        f0 = GridFunction(2, Kind.DENSITY, np.ones(513))
        with pytest.raises(ValueError):
            contraction_check(2, f0, 3)


class TestMonteCarlo:
    def test_no_iterations_matches_uniform(self):
        res = monte_carlo_cdf(2, 0, 10 ** 5, seed=123)
        d = ks_distance(res.sorted_points, lambda u: u)
        assert d <= 1.63 / math.sqrt(10 ** 5)

    def test_deterministic_given_seed(self):
        a = monte_carlo_cdf(3, 4, 20000, seed=9)
        b = monte_carlo_cdf(3, 4, 20000, seed=9)
        assert np.array_equal(a.sorted_points, b.sorted_points)
        assert a.ks_to_rho == b.ks_to_rho
        assert a.to_csv() == b.to_csv()

    def test_converges_to_invariant_cdf(self):
        res = monte_carlo_cdf(10, 10, 10 ** 5, seed=5)
        q10 = float(qn_exact(10).q)
        assert res.ks_to_rho <= 3 / math.sqrt(10 ** 5) + q10 ** 10

    def test_empirical_cdf_endpoints(self):
        res = monte_carlo_cdf(2, 1, 1000, seed=1)
        assert res.empirical_cdf(1.0) == 1.0
        assert res.empirical_cdf(0.0) <= 0.01
