import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labormarket.fit import default_b_range, fit_offset_power_law, linear_fit_given_b
from oracles import synthetic_power_law

U_GRID = np.logspace(-2, 0, 25)


def test_linear_fit_recovers_exponent():
    pts = synthetic_power_law(1.0, 1.0, 0.5, U_GRID)
    c, logC, sse = linear_fit_given_b(pts, 1.0)
    assert c == pytest.approx(0.5, abs=1e-12)
    assert logC == pytest.approx(0.0, abs=1e-12)
    assert sse < 1e-24


def test_linear_fit_two_points_interpolates():
    c, logC, sse = linear_fit_given_b([[0.1, 0.3], [0.4, 0.05]], 0.2)
    assert sse < 1e-28
    assert c == pytest.approx(-np.log(0.25 / 0.5) / np.log(4.0), rel=1e-12)


def test_linear_fit_constant_inflation():
    c, _, sse = linear_fit_given_b([[0.1, 0.7], [0.3, 0.7], [0.9, 0.7]], 0.3)
    assert c == 0.0 and sse == 0.0


@pytest.mark.parametrize("pts, b", [
    ([[0.1, -0.5], [0.2, 0.1]], 0.3),    # pi + b <= 0
    ([[0.2, 0.1], [0.2, 0.3]], 1.0),     # no spread in U
    ([[0.2, 0.1]], 1.0),                 # single point
    ([[0.0, 0.1], [0.2, 0.3]], 1.0),     # log of zero
])
def test_linear_fit_domain_errors(pts, b):
    with pytest.raises(ValueError):
        linear_fit_given_b(pts, b)


@pytest.mark.parametrize("C, b, c", [(1.0, 1.0, 0.5), (0.7, 1.49, 0.54), (2.0, 3.0, 2.0), (1.0, 0.5, 0.01)])
def test_offset_fit_recovers_generators(C, b, c):
    res = fit_offset_power_law(synthetic_power_law(C, b, c, U_GRID))
    assert res.b == pytest.approx(b, rel=1e-6)
    assert res.c == pytest.approx(c, rel=1e-6)
    assert res.logC == pytest.approx(np.log(C), abs=1e-5)
    assert res.n == 25 and res.dropped == 0


def test_offset_fit_beats_every_grid_point():
    rng = np.random.default_rng(2)
    pts = synthetic_power_law(1.2, 0.8, 0.3, U_GRID)
    pts[:, 1] += rng.normal(0, 0.01, len(pts))
    res = fit_offset_power_law(pts, grid=200)
    lo, hi = default_b_range(pts[:, 1])
    for b in np.linspace(lo, hi, 201):
        assert res.sse <= linear_fit_given_b(pts, b)[2] + 1e-15


def test_offset_fit_drops_zero_unemployment():
    pts = np.vstack([synthetic_power_law(1.0, 1.0, 0.5, U_GRID), [[0.0, 5.0], [0.0, 1.0]]])
    res = fit_offset_power_law(pts)
    assert res.dropped == 2 and res.n == 25
    assert res.b == pytest.approx(1.0, rel=1e-6)


def test_offset_fit_errors():
    pts = synthetic_power_law(1.0, 1.0, 0.5, U_GRID)
    with pytest.raises(ValueError):
        fit_offset_power_law(pts[:2])
    with pytest.raises(ValueError):
        fit_offset_power_law(pts, b_range=(-5.0, -4.0))


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.floats(0.01, 100.0))
def test_offset_fit_permutation_and_scale(random, s):
    rng = np.random.default_rng(random.randint(0, 2**32))
    pts = synthetic_power_law(1.0, 1.3, 0.4, U_GRID)
    pts[:, 1] += rng.normal(0, 0.02, len(pts))
    base = fit_offset_power_law(pts)
    shuffled = fit_offset_power_law(pts[rng.permutation(len(pts))])
    assert shuffled.b == pytest.approx(base.b, rel=1e-9)
    assert shuffled.c == pytest.approx(base.c, rel=1e-9)
    scaled = pts.copy()
    scaled[:, 0] *= s
    res = fit_offset_power_law(scaled)
    assert res.c == pytest.approx(base.c, rel=1e-9)
    assert res.logC == pytest.approx(base.logC + base.c * np.log(s), abs=1e-7)


@given(st.floats(0.01, 100.0), st.floats(0.5, 3.0))
def test_linear_fit_scale_covariance(s, b):
    pts = synthetic_power_law(1.0, 1.0, 0.5, U_GRID)
    pts[::3, 1] += 0.01
    c0, l0, _ = linear_fit_given_b(pts, b)
    pts[:, 0] *= s
    c1, l1, _ = linear_fit_given_b(pts, b)
    assert abs(c1 - c0) < 1e-9
