import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from labormarket.market import MarketParams, local_energies, ranking_factors, selection_probabilities
from labormarket.observables import (
    analytic_p_empty,
    analytic_pk,
    beveridge_sweep,
    empirical_distribution,
    employment,
    empty_fraction_series,
    expected_empty_fraction,
    gamma_sweep,
    order_parameter,
    residual_employment,
    simulate,
    unemployment_rate,
)
from labormarket.seeding import cell_seed
from oracles import boltzmann_no_history


@pytest.mark.parametrize("s, U", [((0, 1, 2, 0), 0.5), ((1, 3, 1), 0.0), ((0, 0, 0), 1.0)])
def test_unemployment_rate(s, U):
    assert unemployment_rate(s) == U


def test_order_parameter_examples():
    assert order_parameter([0.5] * 17) == 0.5
    assert order_parameter([0, 1] * 10) == 0.5
    assert order_parameter([1, 0.2, 0.2, 0.2], burn_in=1) == pytest.approx(0.2, abs=1e-15)
    with pytest.raises(ValueError):
        order_parameter([0.1, 0.2], burn_in=2)


@given(st.floats(0, 1), st.integers(1, 500))
def test_order_parameter_of_constant_is_exact(x, n):
    assert order_parameter([x] * n) == x


def test_empirical_distribution_examples():
    h = empirical_distribution([1, 1, 2])
    assert h.as_dict() == pytest.approx({1: 2 / 3, 2: 1 / 3})
    assert empirical_distribution([4] * 9).as_dict() == {4: 1.0}
    with pytest.raises(ValueError):
        empirical_distribution([])


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=300))
def test_histogram_normalized(xs):
    h = empirical_distribution(xs)
    assert np.all(h.mass >= 0)
    assert abs(h.mass.sum() - 1.0) < 1e-9


def test_analytic_pk_examples():
    assert analytic_pk(3, 40, 0.0) == 1 / 40
    assert analytic_pk(1000, 1000, 1.0) == pytest.approx(2 / 1000 * 2 / 3, rel=1e-12)
    K = 10**7
    assert analytic_pk(1, K, 1.0) == pytest.approx(2 / (3 * K), rel=1e-6)


def test_analytic_pk_bottom_company_large_gamma():
    # (g+1) / (2^(g+1) K) once 2^(g+1) >> 1
    K = 10**7
    for g in (10.0, 30.0, 60.0):
        target = (g + 1) / (2 ** (g + 1) * K)
        assert analytic_pk(1, K, g) == pytest.approx(target, rel=2.0 ** -g + g / K)


def test_analytic_pk_top_company_large_gamma():
    K = 1000
    for g in (20.0, 50.0, 200.0):
        assert analytic_pk(K, K, g) == pytest.approx((g + 1) / (2 * K), rel=2.0 ** -(g))


def test_analytic_pk_approximates_exact_normalization():
    K = 20_000
    for g in (0.5, 1.0, 3.0):
        exact = boltzmann_no_history(K, g)
        approx = np.array([analytic_pk(k, K, g) for k in (1, K // 2, K)])
        assert approx == pytest.approx(exact[[0, K // 2 - 1, K - 1]], rel=5e-3 * (g + 1))


def test_analytic_p_empty_examples():
    assert analytic_p_empty(1, 10_000, 1000, 1.0, "highest") == pytest.approx(math.exp(-10), rel=1e-12)
    assert math.exp(-10) == pytest.approx(4.54e-5, rel=1e-3)
    assert analytic_p_empty(1, 10_000, 1000, 1.0, "lowest") == pytest.approx(math.exp(-5), rel=1e-12)
    assert math.exp(-5) == pytest.approx(6.74e-3, rel=1e-3)
    values = [analytic_p_empty(1, 10_000, 1000, g, "lowest") for g in (1, 10, 40, 100, 1e4)]
    assert all(x <= y for x, y in zip(values, values[1:]))
    assert values[-1] == 1.0
    with pytest.raises(ValueError):
        analytic_p_empty(1, 10, 10, 1.0, "middle")


def test_residual_employment():
    assert residual_employment(10, 500) == 0.02
    assert residual_employment(0, 500) == 0.0
    assert residual_employment(500, 500) == 1.0
    with pytest.raises(ValueError):
        residual_employment(501, 500)


def test_simulate_records_requested_series():
    params = MarketParams(K=12, N=80, v=5, a=3, horizon=15, seed=4)
    obs = simulate(params, record_sheets=True, record_applications=True)
    assert obs.U_series.shape == (15,)
    assert obs.sheet_count_series.shape == (15, 12)
    assert obs.application_count_series.shape == (15, 80)
    assert np.array_equal(obs.sheet_count_series.sum(axis=1), obs.application_count_series.sum(axis=1))
    assert np.all((obs.U_series >= 0) & (obs.U_series <= 1))


def test_empty_fraction_matches_exponential_estimate_small():
    # beta = 0, so years are i.i.d. and P_k is fixed
    params = MarketParams(K=200, N=1000, v=5, a=1, gamma=5, beta_history=(0.0,), horizon=300, seed=11)
    obs = simulate(params, record_sheets=True)
    observed = empty_fraction_series(obs.sheet_count_series)
    P = selection_probabilities(local_energies(ranking_factors(200), np.zeros((1, 200)), [0.0], 5))
    q = np.exp(-1000 * np.minimum(1, P))
    sigma = math.sqrt(np.sum(q * (1 - q))) / 200 / math.sqrt(len(observed))
    assert abs(observed.mean() - expected_empty_fraction(P, 1, 1000)) < 3 * sigma


def test_degenerate_sweeps_equal_direct_runs():
    base = MarketParams(K=10, N=100, v=3, a=2, gamma=2, horizon=60, seed=21)
    res = gamma_sweep(base, [4.0], trials=1)
    direct = employment(MarketParams(K=10, N=100, v=3, a=2, gamma=4.0, horizon=60,
                                     seed=cell_seed(21, "gamma", 0, 0)))
    assert res.employment_mean[0] == direct and res.employment_stderr[0] == 0.0
    bev = beveridge_sweep(base, [0.5], trials=1)
    assert bev.grid[0] == 0.5
    direct = employment(MarketParams(K=10, N=100, v=5, a=2, gamma=2, horizon=60,
                                     seed=cell_seed(21, "alpha", 0, 0)))
    assert bev.employment_mean[0] == direct


def test_sweep_parallel_equals_serial():
    base = MarketParams(K=10, N=100, v=10, a=2, horizon=40, seed=5)
    serial = gamma_sweep(base, [0.0, 3.0, 10.0], trials=3, workers=1)
    parallel = gamma_sweep(base, [0.0, 3.0, 10.0], trials=3, workers=2)
    assert np.array_equal(serial.samples, parallel.samples)
    assert np.array_equal(serial.seeds, parallel.seeds)
    assert np.all((serial.employment_mean >= 0) & (serial.employment_mean <= 1))


def test_sweep_errors_carry_cell_coordinates():
    base = MarketParams(K=50, N=500, v=10)
    with pytest.raises(ValueError, match="alpha cell 1"):
        beveridge_sweep(base, [1.0, 0.01], trials=1)


def test_gamma_zero_matches_uniform_choice_market():
    base = MarketParams(K=50, N=500, v=10, a=1, beta_history=(1.0,), horizon=300, seed=8)
    ranked = gamma_sweep(base, [0.0], trials=5)
    uniform = gamma_sweep(MarketParams(K=50, N=500, v=10, a=1, beta_history=(0.0,), horizon=300, seed=9),
                          [0.0], trials=5)
    diff = abs(ranked.employment_mean[0] - uniform.employment_mean[0])
    se = math.hypot(ranked.employment_stderr[0], uniform.employment_stderr[0])
    assert diff < 3 * se + 1e-12


def test_cell_seed_stable_and_distinct():
    assert cell_seed(1, "gamma", 2, 3) == cell_seed(1, "gamma", 2, 3)
    seeds = {cell_seed(1, tag, i, j) for tag in ("gamma", "alpha") for i in range(5) for j in range(5)}
    assert len(seeds) == 50
