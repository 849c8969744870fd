"""
Exact scattering coefficients and cross-sections of homogeneous and
two-layer dielectric spheres.

The coefficient formulas are the standard Bohren & Huffman ones written
with xi_n = psi_n + i chi_n (see ``special_functions`` for the sign of
chi).  Inputs may be scalars or broadcastable arrays.  Scalars go through
plain-Python arithmetic and arrays through numpy; the formulas are shared.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import circular_law
from .errors import DomainError, NumericalDegeneracyError
from .special_functions import MAX_ORDER, _riccati

DEGENERATE_DENOMINATOR = 1e-300


def _is_scalar(*values):
    for v in values:
        if not isinstance(v, (float, int)):
            return False
    return True


def _require(condition, message):
    if not np.all(condition):
        raise DomainError(message)


def _real_parameter(value, name):
    if np.iscomplexobj(value):
        raise DomainError(f"{name} must be real (dielectric spheres only)")
    if np.ndim(value) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


@dataclass(frozen=True)
class HomogeneousSphere:
    """Size parameter ``x = kR`` and relative refractive index ``m``."""

    x: float
    m: float

    def __post_init__(self):
        object.__setattr__(self, "x", _real_parameter(self.x, "x"))
        object.__setattr__(self, "m", _real_parameter(self.m, "m"))
        _require(np.isfinite(self.x) & (self.x > 0), "x must be positive")
        _require(np.isfinite(self.m) & (self.m > 0), "m must be positive")

    @property
    def outer_size(self):
        return self.x


@dataclass(frozen=True)
class LayeredSphere:
    """Core (``x = kR1``, ``m1``) inside a shell (``y = kR2``, ``m2``)."""

    x: float
    m1: float
    y: float
    m2: float

    def __post_init__(self):
        for name in ("x", "m1", "y", "m2"):
            object.__setattr__(self, name, _real_parameter(getattr(self, name), name))
        _require(np.isfinite(self.x) & (self.x > 0), "x must be positive")
        _require(np.isfinite(self.y) & (self.x <= self.y), "need 0 < x <= y")
        _require(np.isfinite(self.m1) & (self.m1 > 0), "m1 must be positive")
        _require(np.isfinite(self.m2) & (self.m2 > 0), "m2 must be positive")

    @property
    def outer_size(self):
        return self.y


@dataclass(frozen=True)
class ModeCoefficients:
    n: int
    a: complex
    b: complex

    @property
    def alpha(self):
        return circular_law.angle_from_coefficient(self.a)

    @property
    def beta(self):
        return circular_law.angle_from_coefficient(self.b)

    @property
    def circle_residual(self):
        """Largest of | |a|^2 - Re a | and | |b|^2 - Re b |."""
        return np.maximum(np.abs(circular_law.circle_residual(self.a)),
                          np.abs(circular_law.circle_residual(self.b)))


@dataclass(frozen=True)
class CrossSections:
    """Partial mode sums and the derived cross-sections.

    ``c_sca``/``c_ext`` carry the 2 pi / k^2 prefactor and ``sigma_b``/
    ``sigma_f`` the 1 / (2k)^2 prefactor; the mode sums are dimensionless.
    """

    mode_sum_sca: float
    mode_sum_ext: float
    c_sca: float
    c_ext: float
    sigma_b: float
    sigma_f: float
    n_max: int


def default_n_max(size_param):
    """Wiscombe-style truncation ceil(x + 4 x^(1/3) + 2)."""
    size_param = float(np.max(size_param))
    if size_param <= 0:
        raise DomainError("size parameter must be positive")
    return math.ceil(size_param + 4.0 * size_param ** (1.0 / 3.0) + 2.0)


def fixed_n_max(size_param=None):
    """Fixed three-mode truncation used for the distribution experiments."""
    return 3


def _divide(num, den):
    if isinstance(den, complex):
        if abs(den) < DEGENERATE_DENOMINATOR:
            raise NumericalDegeneracyError("vanishing coefficient denominator")
    elif np.any(np.abs(den) < DEGENERATE_DENOMINATOR):
        raise NumericalDegeneracyError("vanishing coefficient denominator")
    return num / den


def _core_ratio(num, den):
    # den is non-finite only when chi_n(m2 x) overflowed: the core is then
    # negligible at this order and the ratio tends to zero
    if isinstance(den, float):
        if not math.isfinite(den):
            return 0.0
        if abs(den) < DEGENERATE_DENOMINATOR:
            raise NumericalDegeneracyError("vanishing core-ratio denominator")
        return num / den
    finite = np.isfinite(den)
    if np.any(finite & (np.abs(den) < DEGENERATE_DENOMINATOR)):
        raise NumericalDegeneracyError("vanishing core-ratio denominator")
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(finite, num / np.where(finite, den, 1.0), 0.0)


def _homogeneous_sweep(x, m, n_max):
    if not _is_scalar(x, m):
        x, m = np.broadcast_arrays(x, m)
    mx = m * x
    tx = _riccati(n_max, x, max(MAX_ORDER, n_max))
    tm = _riccati(n_max, mx, max(MAX_ORDER, n_max))
    a, b = [], []
    for n in range(1, n_max + 1):
        psi_x, dpsi_x = tx.psi[n], tx.dpsi[n]
        xi_x = psi_x + 1j * tx.chi[n]
        dxi_x = dpsi_x + 1j * tx.dchi[n]
        psi_m, dpsi_m = tm.psi[n], tm.dpsi[n]
        a.append(_divide(m * (psi_m * dpsi_x) - psi_x * dpsi_m,
                         m * psi_m * dxi_x - xi_x * dpsi_m))
        b.append(_divide(psi_m * dpsi_x - m * (psi_x * dpsi_m),
                         psi_m * dxi_x - m * xi_x * dpsi_m))
    return a, b


def _layered_sweep(x, m1, y, m2, n_max):
    if not _is_scalar(x, m1, y, m2):
        x, m1, y, m2 = np.broadcast_arrays(x, m1, y, m2)
    order_cap = max(MAX_ORDER, n_max)
    t1 = _riccati(n_max, m1 * x, order_cap)
    t2 = _riccati(n_max, m2 * x, order_cap)
    ty = _riccati(n_max, y, order_cap)
    tv = _riccati(n_max, m2 * y, order_cap)
    a, b = [], []
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max + 1):
            p1, dp1 = t1.psi[n], t1.dpsi[n]
            p2, dp2, c2, dc2 = t2.psi[n], t2.dpsi[n], t2.chi[n], t2.dchi[n]
            big_a = _core_ratio(m2 * (p2 * dp1) - m1 * (dp2 * p1),
                                m2 * c2 * dp1 - m1 * dc2 * p1)
            big_b = _core_ratio(m2 * (p1 * dp2) - m1 * (p2 * dp1),
                                m2 * dc2 * p1 - m1 * dp1 * c2)

            pv, dpv, cv, dcv = tv.psi[n], tv.dpsi[n], tv.chi[n], tv.dchi[n]
            py, dpy = ty.psi[n], ty.dpsi[n]
            xi_y = py + 1j * ty.chi[n]
            dxi_y = dpy + 1j * ty.dchi[n]

            pa, qa = dpv - big_a * dcv, pv - big_a * cv
            pb, qb = dpv - big_b * dcv, pv - big_b * cv
            a.append(_divide(py * pa - m2 * (dpy * qa), xi_y * pa - m2 * dxi_y * qa))
            b.append(_divide(m2 * (py * pb) - dpy * qb, m2 * xi_y * pb - dxi_y * qb))
    return a, b


def coefficient_sweep(s, n_max):
    """a_n, b_n for n = 1..n_max as two lists (one entry per mode)."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if isinstance(s, HomogeneousSphere):
        return _homogeneous_sweep(s.x, s.m, n_max)
    if isinstance(s, LayeredSphere):
        return _layered_sweep(s.x, s.m1, s.y, s.m2, n_max)
    raise TypeError(f"unsupported sphere type {type(s).__name__}")


def an_bn_homogeneous(s: HomogeneousSphere, n: int) -> ModeCoefficients:
    if n < 1:
        raise DomainError("mode index must be at least 1")
    a, b = _homogeneous_sweep(s.x, s.m, n)
    return ModeCoefficients(n, a[-1], b[-1])


def an_bn_layered(s: LayeredSphere, n: int) -> ModeCoefficients:
    if n < 1:
        raise DomainError("mode index must be at least 1")
    a, b = _layered_sweep(s.x, s.m1, s.y, s.m2, n)
    return ModeCoefficients(n, a[-1], b[-1])


def sum_cross_sections(a, b, k=1.0):
    """Cross-sections from per-mode coefficients a[n-1], b[n-1].

    One pass accumulates the scattering, extinction, backward and forward
    sums; backscattering alternates as (-1)^n (a_n - b_n).
    """
    sca = ext = 0.0
    back = fwd = 0j
    n_max = len(a)
    for n in range(1, n_max + 1):
        an, bn = a[n - 1], b[n - 1]
        w = 2 * n + 1
        sca = sca + w * (an.real * an.real + an.imag * an.imag
                         + bn.real * bn.real + bn.imag * bn.imag)
        ext = ext + w * (an.real + bn.real)
        back = back + (w if n % 2 == 0 else -w) * (an - bn)
        fwd = fwd + w * (an + bn)
    area = 2.0 * math.pi / (k * k)
    diff = 1.0 / (2.0 * k) ** 2
    return CrossSections(
        mode_sum_sca=sca,
        mode_sum_ext=ext,
        c_sca=area * sca,
        c_ext=area * ext,
        sigma_b=diff * (back.real * back.real + back.imag * back.imag),
        sigma_f=diff * (fwd.real * fwd.real + fwd.imag * fwd.imag),
        n_max=n_max,
    )


def cross_sections(s, k=1.0, n_max=None) -> CrossSections:
    """Exact cross-sections through mode ``n_max``.

    ``n_max=None`` applies :func:`default_n_max` to the outer size
    parameter (the largest one, for array input).
    """
    if not k > 0:
        raise DomainError("wavenumber must be positive")
    if n_max is None:
        n_max = default_n_max(s.outer_size)
    a, b = coefficient_sweep(s, n_max)
    return sum_cross_sections(a, b, k)
