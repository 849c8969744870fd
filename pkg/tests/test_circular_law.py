import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trigmie import DomainError
from trigmie.circular_law import (
    CoefficientAngle,
    angle_from_coefficient,
    circle_residual,
    coefficient_from_angle,
)
from trigmie.mie_exact import HomogeneousSphere, an_bn_homogeneous


def test_special_points():
    assert angle_from_coefficient(1 + 0j) == pytest.approx(math.pi / 2)
    assert angle_from_coefficient(0j) == 0.0
    assert coefficient_from_angle(0.0) == 0
    assert coefficient_from_angle(math.pi / 2) == pytest.approx(1 + 0j, abs=1e-16)


def test_against_exact_coefficient():
    a = an_bn_homogeneous(HomogeneousSphere(12, 1.5), 1).a
    alpha = angle_from_coefficient(a)
    assert abs(math.sin(alpha)) == pytest.approx(abs(a), abs=1e-10)


def test_off_circle_rejected():
    with pytest.raises(DomainError):
        angle_from_coefficient(0.5 + 0.0j)
    with pytest.raises(DomainError):
        angle_from_coefficient(np.array([0j, 0.3 + 0.1j]))


@given(st.floats(-10.0, 10.0))
def test_reconstruction_on_circle(theta):
    c = coefficient_from_angle(theta)
    assert abs(circle_residual(c)) < 1e-14


@given(st.floats(0.0, math.pi))
def test_round_trip(theta):
    c = coefficient_from_angle(theta)
    back = coefficient_from_angle(angle_from_coefficient(c))
    assert abs(back - c) < 1e-10
    assert math.sin(angle_from_coefficient(c)) ** 2 == pytest.approx(abs(c) ** 2, abs=1e-10)


def test_principal_range_is_abs_sin_form():
    t = np.linspace(0.0, math.pi, 50)
    ref = np.abs(np.sin(t)) * (np.sin(t) + 1j * np.cos(t))
    np.testing.assert_allclose(coefficient_from_angle(t), ref, atol=1e-15)


def test_pi_invariance():
    t = np.linspace(-5, 5, 101)
    np.testing.assert_allclose(coefficient_from_angle(t + math.pi), coefficient_from_angle(t), atol=1e-14)


def test_coefficient_angle_type():
    ca = CoefficientAngle(0.3, "alpha", 1)
    assert ca.sin2 == pytest.approx(math.sin(0.3) ** 2)
    assert abs(circle_residual(ca.coefficient)) < 1e-15
    with pytest.raises(ValueError):
        CoefficientAngle(0.3, "gamma", 1)
