"""Independent reference implementations used to freeze expected values.

Nothing here imports from the package under test.
"""
import mpmath
import numpy as np
from scipy.special import spherical_jn, spherical_yn

mpmath.mp.dps = 120


def _double_factorial(k):
    out = mpmath.mpf(1)
    while k > 1:
        out *= k
        k -= 2
    return out


def psi_series(n, rho, terms=400):
    """rho * j_n(rho) from the ascending series, in extended precision."""
    z = mpmath.mpf(rho)
    h = -z * z / 2
    term = mpmath.mpf(1)
    total = mpmath.mpf(0)
    for k in range(terms):
        if k:
            term *= h / (k * (2 * n + 2 * k + 1))
        total += term
    return z ** (n + 1) / _double_factorial(2 * n + 1) * total


def chi_series(n, rho, terms=400):
    """rho * y_n(rho) from the ascending series, in extended precision."""
    z = mpmath.mpf(rho)
    h = -z * z / 2
    term = mpmath.mpf(1)
    total = mpmath.mpf(0)
    for k in range(1, terms + 1):
        total += term
        term *= h / (k * (2 * k - 1 - 2 * n))
    return -_double_factorial(2 * n - 1) / z ** n * total


def riccati_quadruple(n, rho):
    """(psi, psi', chi, chi') with derivatives by numerical differentiation."""
    z = mpmath.mpf(rho)
    dpsi = mpmath.diff(lambda t: psi_series(n, t), z)
    dchi = mpmath.diff(lambda t: chi_series(n, t), z)
    return tuple(float(v) for v in (psi_series(n, z), dpsi, chi_series(n, z), dchi))


def _log_derivative(n_max, z):
    """psi_n'(z)/psi_n(z) by downward recurrence from a zero seed."""
    n_start = int(max(n_max, abs(z)) + 15 * abs(z) ** (1 / 3) + 16)
    d = 0.0
    out = np.zeros(n_start + 1)
    for n in range(n_start, 0, -1):
        d = n / z - 1.0 / (d + n / z)
        out[n - 1] = d
    return out


def mie_ratio_form(x, m, n_max):
    """Homogeneous-sphere a_n, b_n (n = 1..n_max) in logarithmic-derivative form.

    psi and xi at the size parameter come from scipy's spherical Bessel
    functions; the interior enters only through D_n(mx).
    """
    d = _log_derivative(n_max, m * x)
    a, b = [], []
    for n in range(1, n_max + 1):
        psi_n = x * spherical_jn(n, x)
        psi_m1 = x * spherical_jn(n - 1, x)
        xi_n = psi_n + 1j * x * spherical_yn(n, x)
        xi_m1 = psi_m1 + 1j * x * spherical_yn(n - 1, x)
        ta = d[n] / m + n / x
        tb = m * d[n] + n / x
        a.append((ta * psi_n - psi_m1) / (ta * xi_n - xi_m1))
        b.append((tb * psi_n - psi_m1) / (tb * xi_n - xi_m1))
    return np.array(a), np.array(b)


def trapezoid_areas(x, y):
    total = 0.0
    for i in range(len(x) - 1):
        total += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1])
    return total
