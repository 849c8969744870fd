import numpy as np
import pytest

from oracles import trapezoid_areas
from trigmie import DomainError
from trigmie.analysis import (
    ErrorCurve,
    SweepConfig,
    absolute_error_integral,
    cumulative_error,
    per_mode_relative_error,
    pointwise_error_sweep,
    sign_changes,
)


@pytest.fixture(scope="module")
def fig4():
    return pointwise_error_sweep(SweepConfig("homogeneous", n=1, x_range=(10.0, 100.0), c=100.0))


def test_m_equal_one_line_is_exact():
    # c = x everywhere on [c, c] is degenerate; use a single-point-wide line at m = 1
    curve = pointwise_error_sweep(SweepConfig(n=1, x_range=(30.0, 30.0 + 1e-9), c=30.0, n_points=3))
    assert np.max(np.abs(curve.pointwise_error)) < 1e-8


def test_fig4_homogeneous(fig4):
    e = fig4.pointwise_error
    assert np.max(np.abs(e)) < 1
    assert sign_changes(e) >= 10
    # error shrinks toward x = c where m -> 1
    n = len(e) // 10
    assert np.max(np.abs(e[-n:])) < np.max(np.abs(e[:n]))


def test_factorisation(fig4):
    assert np.max(np.abs(fig4.pointwise_error - fig4.factorized_error)) < 1e-12


def test_cumulative_cancellation(fig4):
    total = cumulative_error(fig4)
    assert total == pytest.approx(fig4.cumulative_integral[-1], rel=1e-12)
    span = fig4.abscissa[-1] - fig4.abscissa[0]
    assert abs(total) <= 0.2 * np.mean(np.abs(fig4.pointwise_error)) * span
    assert abs(total) <= 0.2 * absolute_error_integral(fig4)


def test_cumulative_matches_independent_resummation(fig4):
    x = fig4.abscissa[:5000]
    e = fig4.pointwise_error[:5000]
    curve = ErrorCurve(x, e, np.zeros_like(x), e)
    assert cumulative_error(curve) == pytest.approx(trapezoid_areas(x, e), rel=1e-10)


def test_zero_curve():
    x = np.linspace(0, 1, 5)
    z = np.zeros(5)
    assert cumulative_error(ErrorCurve(x, z, z, z)) == 0.0
    with pytest.raises(DomainError):
        cumulative_error(ErrorCurve(np.array([]), np.array([]), np.array([]), np.array([])))


def test_layered_sweep_constraints():
    cfg = SweepConfig("layered", n=1, x_range=(40.0, 100.0), n_points=500)
    s = cfg.spheres(cfg.abscissa())
    np.testing.assert_allclose(s.m1 * s.x, 50.0)
    np.testing.assert_allclose(s.m2 * s.x, 30.0)
    np.testing.assert_allclose(s.m2 * s.y, 100.0)
    curve = pointwise_error_sweep(cfg)
    assert np.max(np.abs(curve.pointwise_error)) < 1
    assert sign_changes(curve.pointwise_error) >= 10
    with pytest.raises(DomainError):
        SweepConfig("layered", c2=120.0, c3=100.0)


def test_beta_channel():
    curve = pointwise_error_sweep(SweepConfig(kind="beta", x_range=(10.0, 60.0), n_points=4000))
    assert np.max(np.abs(curve.pointwise_error - curve.factorized_error)) < 1e-12


def test_per_mode_bounded_and_resolution_independent():
    coarse = per_mode_relative_error(range(2, 8))
    fine = per_mode_relative_error(range(2, 8), points_per_period=4000)
    for (n, e), (_, f) in zip(coarse, fine):
        assert np.isfinite(e) and 0 <= e <= 1
        assert abs(e - f) < 1e-3


def test_sign_changes():
    assert sign_changes([1, -1, 0, -2, 3]) == 2
    assert sign_changes([0, 0]) == 0
