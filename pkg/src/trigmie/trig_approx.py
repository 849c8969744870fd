"""
Trigonometric (Fraunhofer) approximations of sin^2(alpha_n), sin^2(beta_n).

Replacing psi_n, chi_n by their one-term asymptotic forms reduces the
coefficient angles of a homogeneous sphere, for odd n, to

    alpha ~ x - atan(tan(mx) / m),     beta ~ x - atan(m tan(mx)),

and for even n the two expressions trade places.  For a core (x, m1)
inside a shell (y, m2) the same reduction nests:

    alpha ~ y - atan(tan(m2 y - d1) / m2),   d1 = m2 x - atan((m2/m1) tan(m1 x))
    beta  ~ y - atan(m2 tan(m2 y - g1)),     g1 = m2 x - atan((m1/m2) tan(m1 x))

Every ``p - atan(sa tan(q) / sb)`` is evaluated as a direction
(sin, cos) from the angle-difference identity

    sin(.) ~ sb sin p cos q - sa cos p sin q
    cos(.) ~ sb cos p cos q + sa sin p sin q

which has no tangent poles, is exact modulo pi (all that sin^2 and the
circular-law reconstruction need), and vanishes identically when the
particle does (m = 1).

The printed layered beta formula, y - atan(tan(m2 (m2 y - g1))) with
g1 = m1 x - ..., is kept behind ``literal=True`` for comparison only; it
does not reduce to the homogeneous case and disagrees with the exact
coefficients.
"""
import math
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .circular_law import coefficient_from_sincos
from .errors import DomainError
from .mie_exact import (
    CrossSections,
    HomogeneousSphere,
    LayeredSphere,
    default_n_max,
    sum_cross_sections,
)

_SCALAR = SimpleNamespace(sin=math.sin, cos=math.cos, atan2=math.atan2)
_ARRAY = SimpleNamespace(sin=np.sin, cos=np.cos, atan2=np.arctan2)


def _ops(*values):
    # sphere fields are normalised to float or ndarray on construction
    for v in values:
        if not isinstance(v, (float, int)):
            return _ARRAY
    return _SCALAR


@dataclass(frozen=True)
class ApproxCoefficients:
    n: int
    sin2_alpha: float
    sin2_beta: float
    alpha: float
    beta: float

    @property
    def a(self):
        return coefficient_from_sincos(np.sin(self.alpha), np.cos(self.alpha))

    @property
    def b(self):
        return coefficient_from_sincos(np.sin(self.beta), np.cos(self.beta))


def _direction(sp, cp, sq, cq, sa, sb):
    """(sin, cos) of p - atan(sa tan(q) / sb), up to a common factor."""
    return sb * (sp * cq) - sa * (cp * sq), sb * (cp * cq) + sa * (sp * sq)


def _homogeneous_odd(ops, x, m):
    sx, cx = ops.sin(x), ops.cos(x)
    mx = m * x
    sm, cm = ops.sin(mx), ops.cos(mx)
    return _direction(sx, cx, sm, cm, 1.0, m), _direction(sx, cx, sm, cm, m, 1.0)


def _layered_odd(ops, x, m1, y, m2, literal=False):
    u = m1 * x
    su, cu = ops.sin(u), ops.cos(u)
    big_x = m2 * x
    sx, cx = ops.sin(big_x), ops.cos(big_x)
    d1 = ops.atan2(*_direction(sx, cx, su, cu, m2, m1))
    sy, cy = ops.sin(y), ops.cos(y)
    v = m2 * y
    z = v - d1
    alpha = _direction(sy, cy, ops.sin(z), ops.cos(z), 1.0, m2)
    if literal:
        g1 = u - ops.atan2(m1 * su, m2 * cu)
        t = y - m2 * (v - g1)
        return alpha, (ops.sin(t), ops.cos(t))
    g1 = ops.atan2(*_direction(sx, cx, su, cu, m1, m2))
    z = v - g1
    beta = _direction(sy, cy, ops.sin(z), ops.cos(z), m2, 1.0)
    return alpha, beta


def odd_mode_directions(s, literal=False):
    """(sin, cos) directions of alpha and beta for odd modes.

    Even modes use the same pair with alpha and beta exchanged.
    """
    if isinstance(s, HomogeneousSphere):
        return _homogeneous_odd(_ops(s.x, s.m), s.x, s.m)
    if isinstance(s, LayeredSphere):
        return _layered_odd(_ops(s.x, s.m1, s.y, s.m2), s.x, s.m1, s.y, s.m2, literal)
    raise TypeError(f"unsupported sphere type {type(s).__name__}")


def _sin2(direction):
    s, c = direction
    return s * s / (s * s + c * c)


def _approx(s, n, literal=False):
    if n < 1:
        raise DomainError("mode index must be at least 1")
    da, db = odd_mode_directions(s, literal)
    if n % 2 == 0:
        da, db = db, da
    ops = _ops(da[0], db[0])
    return ApproxCoefficients(
        n=n,
        sin2_alpha=_sin2(da),
        sin2_beta=_sin2(db),
        alpha=ops.atan2(*da),
        beta=ops.atan2(*db),
    )


def approx_homogeneous(s: HomogeneousSphere, n: int) -> ApproxCoefficients:
    """Approximate angles of mode ``n``; meant for the regime n <= x."""
    return _approx(s, n)


def approx_layered(s: LayeredSphere, n: int, literal=False) -> ApproxCoefficients:
    """Approximate angles of mode ``n`` of a coated sphere (n <= y).

    ``literal=True`` uses the printed beta formula instead of the
    symmetric one (see module docstring).
    """
    return _approx(s, n, literal)


def _unit_coefficient(direction):
    s, c = direction
    r2 = s * s + c * c
    return coefficient_from_sincos(s, c) / r2


def approx_cross_section(s, k=1.0, n_max=None, literal=False) -> CrossSections:
    """Cross-sections with every a_n, b_n replaced by its trigonometric form.

    The approximate coefficients only alternate between two values, A (the
    odd-mode alpha form) and B (the odd-mode beta form); even modes swap
    them.  Each backscatter term (-1)^n (2n+1)(a_n - b_n) is therefore
    -(2n+1)(A - B) regardless of parity, and all mode sums collapse onto
    the weight total W = sum_{n<=N} (2n+1) = N(N+2):

        sca = (|A|^2 + |B|^2) W,   back = -(A - B) W,   fwd = (A + B) W

    Extinction equals scattering since Re(z) = |z|^2 by construction.
    """
    if not k > 0:
        raise DomainError("wavenumber must be positive")
    if n_max is None:
        n_max = default_n_max(s.outer_size)
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    da, db = odd_mode_directions(s, literal)
    big_a, big_b = _unit_coefficient(da), _unit_coefficient(db)
    w = n_max * (n_max + 2)
    sca = (big_a.real + big_b.real) * w
    back = (big_b - big_a) * w
    fwd = (big_a + big_b) * w
    area = 2.0 * math.pi / (k * k)
    diff = 1.0 / (2.0 * k) ** 2
    return CrossSections(
        mode_sum_sca=sca,
        mode_sum_ext=sca,
        c_sca=area * sca,
        c_ext=area * sca,
        sigma_b=diff * (back.real * back.real + back.imag * back.imag),
        sigma_f=diff * (fwd.real * fwd.real + fwd.imag * fwd.imag),
        n_max=n_max,
    )


@dataclass(frozen=True)
class OpticalPathSweep:
    c: float
    n: int
    x: np.ndarray
    m: np.ndarray
    sin2_alpha: np.ndarray
    sin2_beta: np.ndarray

    def rows(self):
        return zip(self.x, self.m, self.sin2_alpha, self.sin2_beta)


def constant_optical_path_sweep(c, x_range, n, n_points) -> OpticalPathSweep:
    """Homogeneous approximation along m = c / x.

    sin(c) and cos(c) are shared by the whole line, so each point costs
    one sine and one cosine.
    """
    lo, hi = x_range
    if not c > 0:
        raise DomainError("optical path length must be positive")
    if not (0 < lo <= hi <= c):
        raise DomainError(f"x range must lie in (0, {c}]")
    if n < 1 or n_points < 1:
        raise DomainError("need n >= 1 and at least one point")
    x = np.linspace(lo, hi, n_points)
    m = c / x
    sc, cc = math.sin(c), math.cos(c)
    sx, cx = np.sin(x), np.cos(x)
    da = _direction(sx, cx, sc, cc, 1.0, m)
    db = _direction(sx, cx, sc, cc, m, 1.0)
    if n % 2 == 0:
        da, db = db, da
    return OpticalPathSweep(c, n, x, m, _sin2(da), _sin2(db))
