"""
Expected cross-sections over a distribution of particles.

    I = iint p(x, m) C_sca(x, m) dx dm

is evaluated by tensor-product Gauss-Legendre quadrature on a rectangle
in (x, m).  For coated spheres the integration variables are the core
size and index (x, m1); the shell follows deterministically as
y = x + y_offset with fixed m2.

Normal and bimodal densities are truncated to mu +- 4 sigma in each
dimension (clipped to x >= 1e-3, m >= 1) and renormalised there.
"""
import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .mie_exact import HomogeneousSphere, LayeredSphere, cross_sections
from .trig_approx import approx_cross_section

TRUNCATION_SIGMAS = 4.0
MIN_SIZE = 1e-3  # truncated supports keep x strictly positive
CONVERGENCE_ORDERS = (8, 16, 32, 64, 128)
THREADS_ENV = "TRIGMIE_THREADS"


def gauss_legendre(order, a=-1.0, b=1.0):
    """Gauss-Legendre nodes and weights on [a, b].

    The weights sum to b - a and the rule is exact for polynomials of
    degree up to 2*order - 1.
    """
    if int(order) != order or order < 1:
        raise DomainError(f"quadrature order must be a positive integer, got {order}")
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"invalid interval [{a}, {b}]")
    t, w = np.polynomial.legendre.leggauss(int(order))
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * t, half * w


@dataclass(frozen=True)
class NormalComponent:
    mu_x: float
    sigma_x: float
    mu_m: float
    sigma_m: float

    def __post_init__(self):
        if not (self.sigma_x > 0 and self.sigma_m > 0):
            raise DomainError("standard deviations must be positive")

    def box(self, n_sigma=TRUNCATION_SIGMAS):
        return (max(self.mu_x - n_sigma * self.sigma_x, MIN_SIZE),
                self.mu_x + n_sigma * self.sigma_x,
                max(self.mu_m - n_sigma * self.sigma_m, 1.0),
                self.mu_m + n_sigma * self.sigma_m)


def _normal_mass(mu, sigma, lo, hi):
    # probability of [lo, hi] under N(mu, sigma^2)
    s = sigma * math.sqrt(2.0)
    return 0.5 * (math.erf((hi - mu) / s) - math.erf((lo - mu) / s))


def _normal_pdf(t, mu, sigma):
    z = (t - mu) / sigma
    return np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))


@dataclass(frozen=True)
class ParametricDistribution:
    """Density p(x, m) on a rectangle; the two dimensions are independent.

    Build with :meth:`uniform`, :meth:`normal` or :meth:`bimodal`.
    """

    kind: str
    support: tuple
    components: tuple = ()
    weights: tuple = ()
    _norms: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("uniform", "normal", "bimodal"):
            raise DomainError(f"unknown distribution kind {self.kind!r}")
        x_lo, x_hi, m_lo, m_hi = self.support
        if not (0 < x_lo < x_hi and m_lo < m_hi):
            raise DomainError(f"invalid support {self.support}")
        if self.kind != "uniform":
            if len(self.weights) != len(self.components) or not self.components:
                raise DomainError("need one weight per normal component")
            if any(w < 0 for w in self.weights) or abs(sum(self.weights) - 1.0) > 1e-12:
                raise DomainError("weights must be non-negative and sum to 1")
            norms = tuple(
                _normal_mass(c.mu_x, c.sigma_x, x_lo, x_hi)
                * _normal_mass(c.mu_m, c.sigma_m, m_lo, m_hi)
                for c in self.components
            )
            object.__setattr__(self, "_norms", norms)

    @classmethod
    def uniform(cls, x_range, m_range):
        return cls("uniform", (*map(float, x_range), *map(float, m_range)))

    @classmethod
    def normal(cls, mu_x, sigma_x, mu_m, sigma_m, n_sigma=TRUNCATION_SIGMAS):
        c = NormalComponent(mu_x, sigma_x, mu_m, sigma_m)
        return cls("normal", c.box(n_sigma), (c,), (1.0,))

    @classmethod
    def bimodal(cls, first: NormalComponent, second: NormalComponent,
                weights=(0.5, 0.5), n_sigma=TRUNCATION_SIGMAS):
        """Mixture of two normals on the bounding box of both truncations.

        Warns when neither dimension has its means at least two average
        standard deviations apart, in which case there is a single peak.
        """
        first, second = (c if isinstance(c, NormalComponent) else NormalComponent(*c)
                         for c in (first, second))
        sep_x = abs(first.mu_x - second.mu_x) >= first.sigma_x + second.sigma_x
        sep_m = abs(first.mu_m - second.mu_m) >= first.sigma_m + second.sigma_m
        if not (sep_x or sep_m):
            warnings.warn("bimodal components are not separated by 2 average sigmas; "
                          "the mixture has a single peak", stacklevel=2)
        a, b = first.box(n_sigma), second.box(n_sigma)
        box = (min(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), max(a[3], b[3]))
        return cls("bimodal", box, (first, second), tuple(map(float, weights)))

    @property
    def area(self):
        x_lo, x_hi, m_lo, m_hi = self.support
        return (x_hi - x_lo) * (m_hi - m_lo)

    def density(self, x, m):
        """Renormalised density; zero outside the support."""
        x = np.asarray(x, dtype=float)
        m = np.asarray(m, dtype=float)
        x_lo, x_hi, m_lo, m_hi = self.support
        inside = (x >= x_lo) & (x <= x_hi) & (m >= m_lo) & (m <= m_hi)
        if self.kind == "uniform":
            p = np.full(np.broadcast(x, m).shape, 1.0 / self.area)
        else:
            p = 0.0
            for c, w, norm in zip(self.components, self.weights, self._norms):
                p = p + w / norm * _normal_pdf(x, c.mu_x, c.sigma_x) * _normal_pdf(m, c.mu_m, c.sigma_m)
        out = np.where(inside, p, 0.0)
        return float(out) if out.ndim == 0 else out


def density(d: ParametricDistribution, x, m):
    return d.density(x, m)


@dataclass(frozen=True)
class QuadratureGrid:
    nodes_x: np.ndarray
    weights_x: np.ndarray
    nodes_m: np.ndarray
    weights_m: np.ndarray

    @property
    def n_x(self):
        return len(self.nodes_x)

    @property
    def n_m(self):
        return len(self.nodes_m)

    @property
    def n_points(self):
        return self.n_x * self.n_m

    @property
    def bounds(self):
        return (self.nodes_x.min(), self.nodes_x.max(), self.nodes_m.min(), self.nodes_m.max())

    @classmethod
    def on_support(cls, support, n_x, n_m=None):
        x_lo, x_hi, m_lo, m_hi = support
        nx, wx = gauss_legendre(n_x, x_lo, x_hi)
        nm, wm = gauss_legendre(n_x if n_m is None else n_m, m_lo, m_hi)
        return cls(nx, wx, nm, wm)

    @classmethod
    def for_distribution(cls, d: ParametricDistribution, n_x=60, n_m=None):
        return cls.on_support(d.support, n_x, n_m)

    def mesh(self):
        """(X, M, W) arrays of shape (n_x, n_m); W holds the product weights."""
        X, M = np.meshgrid(self.nodes_x, self.nodes_m, indexing="ij")
        return X, M, np.outer(self.weights_x, self.weights_m)


@dataclass(frozen=True)
class LayeredModel:
    """Shell of fixed index ``m2`` and thickness: y = x + ``y_offset``."""

    y_offset: float = 20.0
    m2: float = 1.51


@dataclass(frozen=True)
class IntegralResult:
    value: float
    n_points: int
    evaluator: str
    elapsed: float


def _sphere(model, x, m):
    if model == "homogeneous":
        return HomogeneousSphere(x, m)
    if isinstance(model, LayeredModel):
        return LayeredSphere(x, m, x + model.y_offset, model.m2)
    raise DomainError(f"unknown model {model!r}")


def _evaluator(name, model, k, n_max) -> Callable:
    if callable(name):
        return name
    if name == "exact":
        return lambda x, m: cross_sections(_sphere(model, x, m), k, n_max).c_sca
    if name == "approx":
        return lambda x, m: approx_cross_section(_sphere(model, x, m), k, n_max).c_sca
    raise DomainError(f"unknown evaluator {name!r}")


def _thread_count(threads):
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def evaluate_on_grid(f, X, M, threads=1):
    """f at every node; row blocks are shared out when threads > 1."""
    if threads == 1:
        return np.broadcast_to(f(X, M), X.shape)
    blocks = np.array_split(np.arange(X.shape[0]), threads)
    with ThreadPoolExecutor(threads) as pool:
        parts = pool.map(lambda rows: np.broadcast_to(f(X[rows], M[rows]), X[rows].shape), blocks)
        return np.concatenate(list(parts))


def expected_cross_section(d: ParametricDistribution, grid: QuadratureGrid,
                           evaluator="exact", model="homogeneous", k=1.0,
                           n_max=3, threads=None) -> IntegralResult:
    """Tensor-product quadrature of p * C_sca.

    ``evaluator`` is ``"exact"``, ``"approx"`` or a callable f(x, m)
    returning C_sca on arrays.  ``elapsed`` covers the integrand
    evaluations only.  With several threads the sum is the same up to
    reordering, i.e. at the 1e-13 level.
    """
    x_lo, x_hi, m_lo, m_hi = d.support
    gx0, gx1, gm0, gm1 = grid.bounds
    if gx0 < x_lo or gx1 > x_hi or gm0 < m_lo or gm1 > m_hi:
        raise DomainError("quadrature grid extends outside the distribution support")
    f = _evaluator(evaluator, model, k, n_max)
    X, M, W = grid.mesh()
    P = d.density(X, M)
    t0 = time.perf_counter()
    C = evaluate_on_grid(f, X, M, _thread_count(threads))
    elapsed = time.perf_counter() - t0
    value = float(np.sum(W * P * C))
    label = evaluator if isinstance(evaluator, str) else getattr(evaluator, "__name__", "custom")
    return IntegralResult(value, grid.n_points, label, elapsed)


def convergence_study(d, orders: Sequence[int] = CONVERGENCE_ORDERS,
                      evaluator="exact", model="homogeneous", k=1.0, n_max=3):
    """One IntegralResult per n x n grid in ``orders``."""
    return [expected_cross_section(d, QuadratureGrid.for_distribution(d, n), evaluator,
                                   model, k, n_max)
            for n in orders]


def self_converged_order(results: Sequence[IntegralResult], rtol=0.01):
    """Smallest grid whose value is within ``rtol`` of every finer grid's.

    Returns the total point count, or None when even the last pair differs.
    """
    values = [r.value for r in results]
    for i, r in enumerate(results[:-1]):
        if all(abs(values[i] - v) <= rtol * abs(v) for v in values[i + 1:]):
            return r.n_points
    return None


def pointwise_relative_error(d, grid, model="homogeneous", k=1.0, n_max=3):
    """Mean over the grid nodes of |C_approx - C_exact| / C_exact."""
    X, M, _ = grid.mesh()
    exact = _evaluator("exact", model, k, n_max)(X, M)
    approx = _evaluator("approx", model, k, n_max)(X, M)
    return float(np.mean(np.abs(approx - exact) / exact))


# distributions used in the reference experiments, keyed by name
def reference_distributions():
    bi_h = (NormalComponent(13, 1, 1.4, 0.06), NormalComponent(17, 1, 1.6, 0.06))
    bi_l = (NormalComponent(45, 3.33, 1.30, 0.02), NormalComponent(55, 3.33, 1.35, 0.02))
    layered = LayeredModel(20.0, 1.51)
    return {
        "uniform-homogeneous": (ParametricDistribution.uniform((10, 20), (1.2, 1.8)), "homogeneous"),
        "uniform-layered": (ParametricDistribution.uniform((40, 60), (1.25, 1.4)), layered),
        "normal-homogeneous": (ParametricDistribution.normal(15, 1.67, 1.5, 0.1), "homogeneous"),
        "normal-layered": (ParametricDistribution.normal(50, 3.33, 1.325, 0.025), layered),
        "bimodal-homogeneous": (ParametricDistribution.bimodal(*bi_h), "homogeneous"),
        "bimodal-layered": (ParametricDistribution.bimodal(*bi_l), layered),
    }
