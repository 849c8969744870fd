"""Exact and trigonometric-approximate light scattering by dielectric spheres."""

__version__ = "0.1.0"

from .errors import DomainError, NumericalDegeneracyError
from .special_functions import (
    RiccatiPair,
    chi,
    chi_fraunhofer,
    pq_series,
    psi,
    psi_fraunhofer,
    riccati_pair,
    riccati_table,
)
from .mie_exact import (
    CrossSections,
    HomogeneousSphere,
    LayeredSphere,
    ModeCoefficients,
    an_bn_homogeneous,
    an_bn_layered,
    cross_sections,
    default_n_max,
    fixed_n_max,
)
from .circular_law import (
    CoefficientAngle,
    angle_from_coefficient,
    circle_residual,
    coefficient_from_angle,
)
from .trig_approx import (
    ApproxCoefficients,
    approx_cross_section,
    approx_homogeneous,
    approx_layered,
    constant_optical_path_sweep,
)
from .uncertainty import (
    IntegralResult,
    LayeredModel,
    NormalComponent,
    ParametricDistribution,
    QuadratureGrid,
    expected_cross_section,
    gauss_legendre,
)
from .analysis import (
    ErrorCurve,
    SweepConfig,
    cumulative_error,
    per_mode_relative_error,
    pointwise_error_sweep,
)
from .bench import BenchRecord, bench_point, bench_sweep
