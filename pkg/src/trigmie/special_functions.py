"""
Riccati-Bessel functions of real argument.

    psi_n(rho) = rho * j_n(rho)
    chi_n(rho) = rho * y_n(rho)

Note the sign of chi.  Bohren & Huffman use chi_n = -rho * y_n and
xi_n = psi_n - i chi_n; here chi_0 = -cos(rho) and xi_n = psi_n + i chi_n.
Both conventions give the same xi_n, so scattering coefficients built from
xi_n agree.  With this convention the Wronskian is

    psi_n chi_n' - psi_n' chi_n = +1.

psi_n is obtained by downward recurrence seeded with the ratio
psi_N / psi_{N-1} from a continued fraction (modified Lentz), then scaled
with the cross product psi_1 chi_0 - psi_0 chi_1 = 1.  chi_n comes from
upward recurrence, which is stable for it.

Every evaluator has two kernels with the same algorithm: a plain-Python
loop for scalar arguments (single-point evaluation, where numpy call
overhead would dominate) and a numpy loop over orders for arrays.
"""
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_ORDER = 200

_BIG = 1e250
_TINY = 1e-300
_CF_EPS = 1e-15

# psi, dpsi, chi, dchi: each indexable by order n = 0..n_max
_Table = namedtuple("_Table", "psi dpsi chi dchi")


@dataclass(frozen=True)
class RiccatiPair:
    """psi_n, chi_n and their first derivatives at one argument.

    When produced by :func:`riccati_table` the fields are arrays whose
    leading axis is the order.
    """

    psi: float
    psi_prime: float
    chi: float
    chi_prime: float

    @property
    def wronskian(self):
        return self.psi * self.chi_prime - self.psi_prime * self.chi


def _start_order(n_max):
    return n_max + max(30, math.ceil(math.sqrt(40 * n_max)))


def _is_scalar(rho):
    return isinstance(rho, (float, int)) or np.ndim(rho) == 0


def _check_args(n, rho, max_order):
    if n < 0 or n > max_order:
        raise DomainError(f"order {n} outside [0, {max_order}]")
    if _is_scalar(rho):
        if not (rho > 0 and math.isfinite(rho)):
            raise DomainError(f"argument must be positive and finite, got {rho}")
    else:
        rho = np.asarray(rho)
        if not np.all(np.isfinite(rho) & (rho > 0)):
            raise DomainError("arguments must be positive and finite")


def _ratio_scalar(n, rho):
    """psi_n(rho) / psi_{n-1}(rho) by the continued fraction

    1/r_n = b_n - 1/(b_{n+1} - 1/(b_{n+2} - ...)),  b_k = (2k+1)/rho.
    """
    f = (2 * n + 1) / rho
    if f == 0.0:
        f = _TINY
    c, d = f, 0.0
    k = n
    limit = n + 10_000 + 2 * int(rho)
    while True:
        k += 1
        b = (2 * k + 1) / rho
        d = b - d
        if d == 0.0:
            d = _TINY
        c = b - 1.0 / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        # convergents oscillate while k < rho; only trust the test beyond it
        if k > rho and abs(delta - 1.0) < _CF_EPS:
            return 1.0 / f
        if k > limit:
            raise ArithmeticError("continued fraction for psi ratio did not converge")


def _ratio_array(n, rho):
    f = (2 * n + 1) / rho
    f = np.where(f == 0.0, _TINY, f)
    c = f.copy()
    d = np.zeros_like(rho)
    k = n
    rho_max = float(rho.max())
    limit = n + 10_000 + 2 * int(rho_max)
    while True:
        k += 1
        b = (2 * k + 1) / rho
        d = b - d
        d[d == 0.0] = _TINY
        c = b - 1.0 / c
        c[c == 0.0] = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if k > rho_max and np.max(np.abs(delta - 1.0)) < _CF_EPS:
            return 1.0 / f
        if k > limit:
            raise ArithmeticError("continued fraction for psi ratio did not converge")


def _table_scalar(n_max, rho):
    top = max(n_max, 1)
    start = _start_order(top)

    psi = [0.0] * (top + 1)
    f_next, f = _ratio_scalar(start, rho), 1.0
    for k in range(start - 1, 0, -1):
        f_next, f = f, (2 * k + 1) / rho * f - f_next
        if k - 1 <= top:
            psi[k - 1] = f
        if abs(f) > _BIG:
            f /= _BIG
            f_next /= _BIG
            for i in range(k - 1, top + 1):
                psi[i] /= _BIG

    sin_r, cos_r = math.sin(rho), math.cos(rho)
    chi = [0.0] * (top + 1)
    chi[0] = -cos_r
    chi[1] = -cos_r / rho - sin_r
    for k in range(1, top):
        chi[k + 1] = (2 * k + 1) / rho * chi[k] - chi[k - 1]

    scale = 1.0 / (psi[1] * chi[0] - psi[0] * chi[1])
    psi = [scale * v for v in psi]

    dpsi = [cos_r] + [psi[k - 1] - k / rho * psi[k] for k in range(1, top + 1)]
    dchi = [sin_r] + [chi[k - 1] - k / rho * chi[k] for k in range(1, top + 1)]
    n = n_max + 1
    return _Table(psi[:n], dpsi[:n], chi[:n], dchi[:n])


def _table_array(n_max, rho):
    top = max(n_max, 1)
    start = _start_order(top)

    psi = np.zeros((top + 1,) + rho.shape)
    f_next, f = _ratio_array(start, rho), np.ones_like(rho)
    for k in range(start - 1, 0, -1):
        f_next, f = f, (2 * k + 1) / rho * f - f_next
        if k - 1 <= top:
            psi[k - 1] = f
        big = np.abs(f) > _BIG
        if big.any():
            s = np.where(big, 1.0 / _BIG, 1.0)
            f = f * s
            f_next = f_next * s
            psi[max(k - 1, 0):] *= s

    sin_r, cos_r = np.sin(rho), np.cos(rho)
    chi = np.empty_like(psi)
    chi[0] = -cos_r
    chi[1] = -cos_r / rho - sin_r
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, top):
            chi[k + 1] = (2 * k + 1) / rho * chi[k] - chi[k - 1]

    psi *= 1.0 / (psi[1] * chi[0] - psi[0] * chi[1])

    orders = np.arange(1, top + 1).reshape((-1,) + (1,) * rho.ndim)
    dpsi = np.empty_like(psi)
    dchi = np.empty_like(chi)
    dpsi[0] = cos_r
    dchi[0] = sin_r
    with np.errstate(over="ignore", invalid="ignore"):
        dpsi[1:] = psi[:-1] - orders / rho * psi[1:]
        dchi[1:] = chi[:-1] - orders / rho * chi[1:]
    n = n_max + 1
    return _Table(psi[:n], dpsi[:n], chi[:n], dchi[:n])


def _riccati(n_max, rho, max_order=MAX_ORDER):
    """Raw table for internal callers: lists for scalar rho, arrays otherwise."""
    _check_args(n_max, rho, max_order)
    if _is_scalar(rho):
        return _table_scalar(n_max, float(rho))
    return _table_array(n_max, np.asarray(rho, dtype=float))


def riccati_table(n_max, rho, max_order=MAX_ORDER):
    """psi, psi', chi, chi' for all orders 0..n_max.

    Parameters
    ----------
    n_max : int
        Highest order, at most ``max_order``.
    rho : float or array_like
        Positive argument(s).

    Returns
    -------
    RiccatiPair
        Fields are arrays of shape ``(n_max + 1,) + np.shape(rho)``.
    """
    t = _riccati(n_max, rho, max_order)
    return RiccatiPair(*(np.asarray(v) for v in t))


def riccati_pair(n, rho, max_order=MAX_ORDER):
    """psi_n, psi_n', chi_n, chi_n' at ``rho``."""
    t = _riccati(n, rho, max_order)
    return RiccatiPair(t.psi[n], t.dpsi[n], t.chi[n], t.dchi[n])


def psi(n, rho, max_order=MAX_ORDER):
    """Riccati-Bessel function of the first kind, rho * j_n(rho)."""
    return _riccati(n, rho, max_order).psi[n]


def chi(n, rho, max_order=MAX_ORDER):
    """Riccati-Bessel function of the second kind, rho * y_n(rho)."""
    return _riccati(n, rho, max_order).chi[n]


def _pq_coefficient(n, k):
    # (n + 1/2, k) = (n + k)! / (k! (n - k)!)
    return math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k))


def pq_series(n, rho, n_terms=None):
    """Partial sums of the terminating Hankel series P(n+1/2, rho), Q(n+1/2, rho).

    ``n_terms`` caps the number of terms in each sum; ``None`` keeps all of
    them (floor(n/2)+1 for P and floor((n-1)/2)+1 for Q), in which case

        psi_n = P sin(rho - n pi/2) + Q cos(rho - n pi/2)
        chi_n = (-1)**(n+1) (P cos(rho + n pi/2) - Q sin(rho + n pi/2))

    hold exactly.
    """
    if n < 0:
        raise DomainError(f"order must be non-negative, got {n}")
    if n_terms is not None and n_terms < 1:
        raise DomainError("n_terms must be at least 1")
    if np.any(np.asarray(rho) <= 0):
        raise DomainError("argument must be positive")
    inv = 1.0 / (2.0 * np.asarray(rho, dtype=float))
    p_len = n // 2 + 1
    q_len = (n - 1) // 2 + 1 if n >= 1 else 0
    if n_terms is not None:
        p_len = min(p_len, n_terms)
        q_len = min(q_len, n_terms)
    p = sum((-1) ** k * _pq_coefficient(n, 2 * k) * inv ** (2 * k) for k in range(p_len))
    q = sum((-1) ** k * _pq_coefficient(n, 2 * k + 1) * inv ** (2 * k + 1)
            for k in range(q_len))
    p = p + 0.0 * inv
    q = q + 0.0 * inv
    if np.ndim(rho) == 0:
        return float(p), float(q)
    return p, q


def psi_asymptotic(n, rho, n_terms=None):
    """psi_n rebuilt from the P, Q series; exact when all terms are kept."""
    p, q = pq_series(n, rho, n_terms)
    phase = np.asarray(rho) - n * np.pi / 2
    return p * np.sin(phase) + q * np.cos(phase)


def chi_asymptotic(n, rho, n_terms=None):
    """chi_n rebuilt from the P, Q series; exact when all terms are kept."""
    p, q = pq_series(n, rho, n_terms)
    phase = np.asarray(rho) + n * np.pi / 2
    return (-1) ** (n + 1) * (p * np.cos(phase) - q * np.sin(phase))


def psi_fraunhofer(n, rho):
    """Leading large-argument form sin(rho - n pi/2)."""
    if np.any(np.asarray(rho) <= 0):
        raise DomainError("argument must be positive")
    return np.sin(rho - n * np.pi / 2)


def chi_fraunhofer(n, rho):
    """Leading large-argument form (-1)**(n+1) cos(rho + n pi/2)."""
    if np.any(np.asarray(rho) <= 0):
        raise DomainError("argument must be positive")
    return (-1) ** (n + 1) * np.cos(rho + n * np.pi / 2)
