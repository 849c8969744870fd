"""
Angle form of scattering coefficients of lossless spheres.

For real refractive index every a_n, b_n satisfies Re(z) = |z|^2, i.e. it
lies on the circle of radius 1/2 centred at 1/2.  A point on that circle
is fixed by one angle alpha = pi/2 - Arg(z), with |sin(alpha)| = |z|.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

OFF_CIRCLE_TOLERANCE = 1e-6


def circle_residual(c):
    """|c|^2 - Re(c); zero for points on the circle."""
    return c.real * c.real + c.imag * c.imag - c.real


def angle_from_coefficient(c, tol=OFF_CIRCLE_TOLERANCE):
    """alpha = pi/2 - Arg(c), with alpha = 0 at c = 0.

    Raises DomainError when c is farther than ``tol`` from the circle.
    The result lies in [0, pi] for on-circle input.
    """
    if np.ndim(c) == 0:
        c = complex(c)
        if abs(circle_residual(c)) > tol:
            raise DomainError(f"coefficient {c} is off the circle")
        if c == 0:
            return 0.0
        return math.pi / 2 - cmath.phase(c)
    c = np.asarray(c, dtype=complex)
    if np.any(np.abs(circle_residual(c)) > tol):
        raise DomainError("coefficient off the circle")
    return np.where(c == 0, 0.0, np.pi / 2 - np.angle(c))


def coefficient_from_sincos(s, c):
    """sin(t) (sin(t) + i cos(t)) from s = sin(t), c = cos(t).

    Invariant under t -> t + pi, so on the circle for every t.
    """
    return s * (s + 1j * c)


def coefficient_from_angle(angle):
    """Coefficient on the circle for angle ``angle``.

    Equals |sin a| (sin a + i cos a) on the principal range [0, pi].
    """
    if np.ndim(angle) == 0:
        return coefficient_from_sincos(math.sin(angle), math.cos(angle))
    angle = np.asarray(angle, dtype=float)
    return coefficient_from_sincos(np.sin(angle), np.cos(angle))


@dataclass(frozen=True)
class CoefficientAngle:
    angle: float
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("alpha", "beta"):
            raise ValueError("kind must be 'alpha' or 'beta'")

    @property
    def coefficient(self):
        return coefficient_from_angle(self.angle)

    @property
    def sin2(self):
        return np.sin(self.angle) ** 2
