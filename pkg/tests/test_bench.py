import pytest

from trigmie import DomainError
from trigmie.bench import bench_point, bench_sweep, timer_resolution
from trigmie.mie_exact import HomogeneousSphere, LayeredSphere
from trigmie.uncertainty import LayeredModel


def test_point_record():
    r = bench_point(HomogeneousSphere(15.0, 1.5))
    assert r.t_exact > 0 and r.t_approx > 0 and r.speedup > 0
    assert r.point == (15.0, 1.5)
    assert r.checksum > 0


def test_layered_point():
    r = bench_point(LayeredSphere(45.0, 1.3, 65.0, 1.51), reps=13)
    assert r.speedup > 1
    assert len(r.point) == 4


def test_repeat_stability():
    s = HomogeneousSphere(12.0, 1.4)
    a = bench_point(s, reps=31, number=20)
    b = bench_point(s, reps=31, number=20)
    assert abs(a.speedup - b.speedup) / max(a.speedup, b.speedup) < 0.3


def test_sweep_conservation():
    sw = bench_sweep(grid=(2, 2), bins=5)
    assert len(sw.records) == 4
    assert sw.counts.sum() == 4
    sw = bench_sweep((40.0, 60.0, 1.25, 1.4), (3, 4), model=LayeredModel(), bins=7)
    assert sw.counts.sum() == 12 and len(sw.edges) == 8
    assert sw.resolution == timer_resolution() > 0


def test_argument_checks():
    s = HomogeneousSphere(15.0, 1.5)
    with pytest.raises(DomainError):
        bench_point(s, reps=10)
    with pytest.raises(DomainError):
        bench_point(s, reps=9)
    with pytest.raises(DomainError):
        bench_point(s, warmup=1)
    with pytest.raises(DomainError):
        bench_sweep(grid=(1, 5))
