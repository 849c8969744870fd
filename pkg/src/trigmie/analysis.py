"""
Error structure of the trigonometric approximation along lines of constant
optical path.

The pointwise error  e = sin^2(alpha) - sin^2(alpha_f)  factorises as
sin(alpha + alpha_f) sin(alpha - alpha_f); both forms are computed.  Along
such lines e oscillates in sign with quasi-period pi in the size parameter,
so its running integral stays far below the integral of |e|.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .circular_law import angle_from_coefficient
from .errors import DomainError
from .mie_exact import HomogeneousSphere, LayeredSphere, coefficient_sweep
from .trig_approx import odd_mode_directions

POINTS_PER_PERIOD = 2000
FACTORIZATION_TOL = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    """A line through parameter space.

    Homogeneous: m = c / x for x in ``x_range``.  Layered: the abscissa is
    the outer size y with m2 = c3 / y, m1 = c1 m2 / c2 and x = c2 / m2, so
    that m1 x = c1, m2 x = c2 and m2 y = c3 all hold.
    """

    family: str = "homogeneous"
    n: int = 1
    x_range: tuple = (10.0, 100.0)
    n_points: int = None
    c: float = 100.0
    c1: float = 50.0
    c2: float = 30.0
    c3: float = 100.0
    kind: str = "alpha"

    def __post_init__(self):
        if self.family not in ("homogeneous", "layered"):
            raise DomainError(f"unknown sphere family {self.family!r}")
        if self.kind not in ("alpha", "beta"):
            raise DomainError("kind must be 'alpha' or 'beta'")
        if self.n < 1:
            raise DomainError("mode index must be at least 1")
        lo, hi = self.x_range
        if not 0 < lo < hi:
            raise DomainError(f"invalid sweep range {self.x_range}")
        if min(self.c, self.c1, self.c2, self.c3) <= 0:
            raise DomainError("optical path constants must be positive")
        if self.family == "layered" and self.c2 > self.c3:
            # x = (c2 / c3) y must not exceed y
            raise DomainError("inconsistent constraints: need c2 <= c3 so that x <= y")

    def abscissa(self):
        lo, hi = self.x_range
        n = self.n_points or max(2, math.ceil((hi - lo) / math.pi * POINTS_PER_PERIOD) + 1)
        return np.linspace(lo, hi, n)

    def spheres(self, t):
        if self.family == "homogeneous":
            return HomogeneousSphere(t, self.c / t)
        m2 = self.c3 / t
        return LayeredSphere(self.c2 / m2, self.c1 * m2 / self.c2, t, m2)


@dataclass(frozen=True)
class ErrorCurve:
    abscissa: np.ndarray
    pointwise_error: np.ndarray
    cumulative_integral: np.ndarray
    factorized_error: np.ndarray

    def __len__(self):
        return len(self.abscissa)


def _angles(s, n, kind):
    """Exact and approximate angles of mode n, both as arrays."""
    a, b = coefficient_sweep(s, n)
    exact = angle_from_coefficient(a[-1] if kind == "alpha" else b[-1])
    da, db = odd_mode_directions(s)
    if n % 2 == 0:
        da, db = db, da
    d = da if kind == "alpha" else db
    return np.asarray(exact), np.arctan2(*d)


def _nearest_branch(alpha, alpha_f):
    # alpha_f is defined mod pi; pick the representative closest to alpha
    return alpha_f + np.pi * np.round((alpha - alpha_f) / np.pi)


def pointwise_error_sweep(config: SweepConfig) -> ErrorCurve:
    """sin^2(alpha) - sin^2(alpha_f) along the configured line.

    Raises ArithmeticError if the direct and factorised forms disagree by
    more than 1e-12 anywhere.
    """
    t = config.abscissa()
    alpha, alpha_f = _angles(config.spheres(t), config.n, config.kind)
    alpha_f = _nearest_branch(alpha, alpha_f)
    direct = np.sin(alpha) ** 2 - np.sin(alpha_f) ** 2
    factorized = np.sin(alpha + alpha_f) * np.sin(alpha - alpha_f)
    gap = np.max(np.abs(direct - factorized))
    if gap > FACTORIZATION_TOL:
        raise ArithmeticError(f"error factorisation violated by {gap:.3g}")
    running = cumulative_trapezoid(direct, t, initial=0.0)
    return ErrorCurve(t, direct, running, factorized)


def cumulative_error(curve: ErrorCurve) -> float:
    """Trapezoidal integral of the pointwise error over the whole sweep."""
    if len(curve) == 0:
        raise DomainError("empty error curve")
    if len(curve) == 1:
        return 0.0
    return float(trapezoid(curve.pointwise_error, curve.abscissa))


def absolute_error_integral(curve: ErrorCurve) -> float:
    return float(trapezoid(np.abs(curve.pointwise_error), curve.abscissa))


def sign_changes(values) -> int:
    """Number of strict sign flips, ignoring exact zeros."""
    s = np.sign(np.asarray(values))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def per_mode_relative_error(n_range, points_per_period=POINTS_PER_PERIOD, kind="alpha"):
    """Relative integral error of sin^2 of the mode angle, per mode.

    For each n the line m x = 2 pi n is swept over n <= x <= 2 pi n and

        |int exact - int approx| / int exact

    is returned as a list of (n, relative_error).
    """
    out = []
    for n in n_range:
        if n < 1:
            raise DomainError("mode index must be at least 1")
        c = 2.0 * math.pi * n
        cfg = SweepConfig("homogeneous", n=n, x_range=(float(n), c), c=c, kind=kind,
                          n_points=max(2, math.ceil((c - n) / math.pi * points_per_period) + 1))
        t = cfg.abscissa()
        alpha, alpha_f = _angles(cfg.spheres(t), n, kind)
        exact = trapezoid(np.sin(alpha) ** 2, t)
        approx = trapezoid(np.sin(alpha_f) ** 2, t)
        out.append((n, abs(exact - approx) / exact))
    return out
