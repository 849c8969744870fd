"""
Per-point timing of exact vs trigonometric cross-sections.

Each time is the median of ``reps`` measurements after ``warmup`` untimed
calls, taken with ``time.perf_counter``.  Exact and approximate calls are
interleaved so that slow drift of the machine affects both equally.  Run
single-threaded; nothing here spawns threads.
"""
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .mie_exact import cross_sections
from .trig_approx import approx_cross_section
from .uncertainty import LayeredModel, _sphere

HOMOGENEOUS_DOMAIN = (10.0, 20.0, 1.2, 1.8)
LAYERED_DOMAIN = (40.0, 60.0, 1.25, 1.4)


def timer_resolution():
    return time.get_clock_info("perf_counter").resolution


@dataclass(frozen=True)
class BenchRecord:
    point: tuple
    t_exact: float
    t_approx: float
    speedup: float
    checksum: float = 0.0


def _timed(fn, number):
    """Seconds per call over ``number`` back-to-back calls, and the last output."""
    t0 = time.perf_counter()
    for _ in range(number):
        out = fn()
    return (time.perf_counter() - t0) / number, out


def bench_point(s, n_max=3, reps=11, warmup=3, number=1, k=1.0) -> BenchRecord:
    """Median wall time of one exact and one approximate evaluation at ``s``.

    Both paths sum modes 1..n_max.  ``number`` calls are timed together
    per repetition; the checksum adds up every C_sca produced while timing
    so the results cannot be discarded unused.
    """
    if reps < 11 or reps % 2 == 0:
        raise DomainError("reps must be odd and at least 11")
    if warmup < 3:
        raise DomainError("need at least 3 warmup calls")

    def exact():
        return cross_sections(s, k, n_max)

    def approx():
        return approx_cross_section(s, k, n_max)

    # results exist (and are checked) before any timing is recorded
    ref_e, ref_a = exact(), approx()
    if not (np.isfinite(ref_e.c_sca) and np.isfinite(ref_a.c_sca)):
        raise ArithmeticError("non-finite cross-section at benchmark point")
    for _ in range(warmup):
        exact()
        approx()

    te, ta = [], []
    checksum = 0.0
    for _ in range(reps):
        t, out = _timed(exact, number)
        te.append(t)
        checksum += out.c_sca
        t, out = _timed(approx, number)
        ta.append(t)
        checksum += out.c_sca
    t_exact = statistics.median(te)
    t_approx = statistics.median(ta)
    return BenchRecord(_point(s), t_exact, t_approx, t_exact / t_approx, checksum)


def _point(s):
    return tuple(float(getattr(s, f)) for f in s.__dataclass_fields__)


@dataclass(frozen=True)
class BenchSweep:
    records: list
    counts: np.ndarray
    edges: np.ndarray
    resolution: float = field(default_factory=timer_resolution)

    @property
    def speedups(self):
        return np.array([r.speedup for r in self.records])

    @property
    def median_speedup(self):
        return float(np.median(self.speedups))


def bench_sweep(domain=HOMOGENEOUS_DOMAIN, grid=(60, 60), n_max=3, model="homogeneous",
                reps=11, warmup=3, bins=20) -> BenchSweep:
    """Benchmark every point of an evenly spaced grid over ``domain``.

    ``domain`` is (x_lo, x_hi, m_lo, m_hi); for a layered ``model`` these
    are the core parameters and the shell follows the model.  Returns the
    records in row-major (x, m) order and a histogram of the speedups.
    """
    nx, nm = grid
    if nx < 2 or nm < 2:
        raise DomainError("benchmark grid must be at least 2x2")
    x_lo, x_hi, m_lo, m_hi = domain
    records = []
    for x in np.linspace(x_lo, x_hi, nx):
        for m in np.linspace(m_lo, m_hi, nm):
            s = _sphere(model, float(x), float(m))
            records.append(bench_point(s, n_max, reps, warmup))
    counts, edges = np.histogram([r.speedup for r in records], bins=bins)
    return BenchSweep(records, counts, edges)


def reference_sweep(layered=False, grid=(60, 60), **kw):
    if layered:
        return bench_sweep(LAYERED_DOMAIN, grid, model=LayeredModel(20.0, 1.51), **kw)
    return bench_sweep(HOMOGENEOUS_DOMAIN, grid, **kw)
