import math

import numpy as np
import pytest

from spss.grid import (
    RadialField,
    integrate_volume,
    load_field_csv,
    make_grid,
    resample,
    save_field_csv,
)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_make_grid_fields():
    g = make_grid(20.0, 4000)
    assert g.h == pytest.approx(0.005, abs=0)
    assert g.r[100] == pytest.approx(0.5, abs=1e-14)
    assert g.r[0] == 0.0 and g.r[-1] == 20.0
    assert np.all(np.diff(g.r) > 0)
    g2 = make_grid(1.0, 16)
    assert g2.h == pytest.approx(0.0625, abs=0)


def test_make_grid_rejects_bad_radius():
    with pytest.raises(ValueError, match="invalid radius"):
        make_grid(0.0, 100)
    with pytest.raises(ValueError, match="invalid radius"):
        make_grid(float("nan"), 100)
    with pytest.raises(ValueError):
        make_grid(1.0, 15)


def test_volume_integral_gaussian():
    g = make_grid(20.0, 4000)
    f = RadialField(g, np.exp(-g.r ** 2))
    assert rel(integrate_volume(f), math.pi ** 1.5) < 1e-8


def test_volume_integral_trivia():
    g = make_grid(20.0, 4000)
    assert integrate_volume(RadialField(g, np.zeros(g.N + 1))) == 0.0
    g1 = make_grid(1.0, 16)
    ball = integrate_volume(RadialField(g1, np.ones(17)))
    assert rel(ball, 4.0 * math.pi / 3.0) < 1e-10


def test_quadrature_exact_low_degree():
    # integrand f(r) r^2 of degree <= 3 per cell is integrated exactly
    g = make_grid(1.0, 16)
    const = integrate_volume(RadialField(g, np.ones(17)))
    linear = integrate_volume(RadialField(g, g.r))
    assert rel(const, 4.0 * math.pi / 3.0) < 1e-14
    assert rel(linear, math.pi) < 1e-14


def test_quadrature_refinement_order():
    # coarse grids keep the error above roundoff; the decaying integrand
    # converges at least at the composite-Simpson rate
    errs = []
    for n in (16, 32, 64):
        g = make_grid(20.0, n)
        f = RadialField(g, np.exp(-g.r ** 2))
        errs.append(abs(integrate_volume(f) - math.pi ** 1.5))
    order1 = math.log2(errs[0] / errs[1])
    order2 = math.log2(errs[1] / errs[2])
    assert order1 >= 3.5 and order2 >= 3.5


def test_odd_interval_count_falls_back_to_trapezoid():
    g = make_grid(1.0, 17)
    assert float(np.sum(g.weights)) == pytest.approx(1.0, rel=1e-14)
    ball = integrate_volume(RadialField(g, np.ones(18)))
    assert rel(ball, 4.0 * math.pi / 3.0) < 5e-4  # trapezoid cell is O(h^3)


def test_resample_gaussian_refinement():
    coarse = make_grid(20.0, 2000)
    fine = make_grid(20.0, 4000)
    f = RadialField(coarse, np.exp(-0.5 * coarse.r ** 2))
    out = resample(f, fine)
    exact = np.exp(-0.5 * fine.r ** 2)
    assert np.max(np.abs(out.values - exact)) < 1e-8


def test_resample_identity_is_bitwise():
    g = make_grid(10.0, 100)
    f = RadialField(g, np.exp(-g.r))
    out = resample(f, make_grid(10.0, 100))
    assert np.array_equal(out.values, f.values)


def test_resample_rejects_undecayed_widening():
    g = make_grid(5.0, 50)
    f = RadialField(g, 0.1 * np.ones(51))
    with pytest.raises(ValueError, match="non-decayed boundary"):
        resample(f, make_grid(10.0, 100))


def test_resample_zero_fills_beyond_support():
    g = make_grid(5.0, 100)
    f = RadialField(g, np.exp(-3.0 * g.r ** 2))
    wide = resample(f, make_grid(8.0, 100))
    assert np.all(wide.values[wide.grid.r > 5.0] == 0.0)


def test_field_validation():
    g = make_grid(1.0, 16)
    with pytest.raises(ValueError, match="finite"):
        RadialField(g, np.full(17, np.nan))
    with pytest.raises(ValueError):
        RadialField(g, np.ones(5))
    f = RadialField(g, np.ones(17))
    assert not f.values.flags.writeable


def test_field_csv_roundtrip(tmp_path):
    g = make_grid(12.5, 64)
    f = RadialField(g, np.exp(-g.r) * np.cos(g.r))
    path = tmp_path / "field.csv"
    save_field_csv(f, path)
    first = path.read_text().splitlines()[0]
    assert first == "# R=12.5 N=64"
    back = load_field_csv(path)
    assert back.grid == g
    assert np.array_equal(back.values, f.values)
