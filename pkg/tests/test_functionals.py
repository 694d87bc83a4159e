import math

import numpy as np
import pytest
from scipy.special import erf

from spss.grid import RadialField, make_grid, resample
from spss.functionals import (
    EnergyBreakdown,
    ModelParams,
    coulomb_energy,
    coulomb_potential,
    cut_gaussian_bump,
    energy,
    flat_ball_field,
    g_from_breakdown,
    g_functional,
    gaussian_field,
    kinetic_integral,
    mass,
    multi_bump,
    power_integral,
    rescale,
    scale_to_mass,
)
from oracles import coulomb_potential_quadrature, smooth_test_fields

PI32 = math.pi ** 1.5


def rel(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# basic integrals against Gaussian closed forms


def test_mass_gaussian(grid20):
    assert rel(mass(gaussian_field(grid20)), PI32) < 1e-8


def test_mass_trivia(grid20):
    assert mass(RadialField(grid20, np.zeros(grid20.N + 1))) == 0.0
    f = gaussian_field(grid20)
    scaled = RadialField(grid20, 3.0 * f.values)
    assert rel(mass(scaled), 9.0 * mass(f)) < 1e-14


def test_kinetic_gaussian(grid20):
    assert rel(kinetic_integral(gaussian_field(grid20)), 1.5 * PI32) < 1e-5


def test_kinetic_nonnegative(grid20):
    for f in smooth_test_fields(grid20, 4, seed=7):
        assert kinetic_integral(f) >= 0.0


def test_kinetic_dilation_scaling(grid20):
    f = gaussian_field(grid20)
    g = rescale(f, 2.0, 1.5, 1.0)
    assert rel(kinetic_integral(g), 4.0 * kinetic_integral(f)) < 1e-6


def test_coulomb_potential_zero(grid20):
    v = coulomb_potential(RadialField(grid20, np.zeros(grid20.N + 1)))
    assert np.all(v.values == 0.0)


def test_coulomb_potential_gaussian_closed_form(grid20):
    v = coulomb_potential(gaussian_field(grid20))
    idx = [200, 400, 1000, 2000, 3000]
    r = grid20.r[idx]
    exact = PI32 * erf(r) / r
    assert np.max(np.abs(v.values[idx] / exact - 1.0)) < 1e-6
    assert v.values[0] == pytest.approx(2.0 * math.pi, rel=1e-8)


def test_coulomb_potential_against_quadrature_oracle():
    grid = make_grid(16.0, 1600)
    f = RadialField(grid, np.exp(-0.5 * grid.r ** 2) * (1.0 + 0.3 * grid.r))
    radii = [0.8, 2.4, 5.0, 8.0, 12.0]
    oracle = coulomb_potential_quadrature(f, radii)
    v = coulomb_potential(f)
    mine = np.interp(radii, grid.r, v.values)
    assert np.max(np.abs(mine / oracle - 1.0)) < 1e-6


def test_coulomb_potential_far_field(grid20):
    f = gaussian_field(grid20, width=0.1)
    q = mass(f)
    v = coulomb_potential(f)
    i = grid20.N // 2
    assert rel(v.values[i], q / grid20.r[i]) < 0.01


def test_coulomb_potential_monotone(grid20):
    for f in smooth_test_fields(grid20, 3, seed=3):
        v = coulomb_potential(f).values
        assert np.all(np.diff(v) <= 1e-12 * max(1.0, v[0]))


def test_coulomb_energy_gaussian(grid20):
    exact = math.sqrt(2.0) * math.pi ** 2.5
    assert rel(coulomb_energy(gaussian_field(grid20)), exact) < 1e-5


def test_coulomb_energy_trivia(grid20):
    assert coulomb_energy(RadialField(grid20, np.zeros(grid20.N + 1))) == 0.0
    f = gaussian_field(grid20)
    g = rescale(f, 2.0, 1.5, 1.0)
    assert rel(coulomb_energy(g), 2.0 * coulomb_energy(f)) < 1e-6


def test_power_integral_gaussian(grid20):
    f = gaussian_field(grid20)
    third = (math.pi / (4.0 / 3.0)) ** 1.5
    half = (math.pi / 1.5) ** 1.5
    assert rel(power_integral(f, 1.0 / 3.0), third) < 1e-8
    assert rel(power_integral(f, 0.5), half) < 1e-8
    assert power_integral(RadialField(grid20, np.zeros(grid20.N + 1)), 0.5) == 0.0
    with pytest.raises(ValueError):
        power_integral(f, 2.5)


def test_energy_gaussian_combination(grid20):
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    bd = energy(gaussian_field(grid20), p)
    exact = (0.5 * 1.5 * PI32
             + 0.25 * math.sqrt(2.0) * math.pi ** 2.5
             - 10.0 / (8.0 / 3.0) * (3.0 * math.pi / 4.0) ** 1.5)
    assert bd.total == pytest.approx(exact, abs=1e-4)
    assert rel(bd.total, exact) < 1e-5


def test_energy_nonnegative_without_coupling(grid20):
    p = ModelParams(alpha=0.7, coupling=0.0, mass=1.0)
    for f in smooth_test_fields(grid20, 5, seed=11):
        assert energy(f, p).total >= 0.0


def test_energy_zero_field(grid20):
    p = ModelParams(alpha=0.5, coupling=2.0, mass=1.0)
    bd = energy(RadialField(grid20, np.zeros(grid20.N + 1)), p)
    assert bd.total == 0.0 and bd.mass == 0.0 and bd.kinetic_integral == 0.0


def test_breakdown_total_identity():
    bd = EnergyBreakdown(kinetic_integral=2.0, coulomb=1.0, power_integral=3.0,
                         mass=1.0, alpha=0.5, coupling=6.0)
    assert bd.total == 0.5 * 2.0 + 0.25 * 1.0 - 6.0 / 3.0 * 3.0
    d = bd.to_json_dict()
    assert set(d) == {"kinetic_integral", "coulomb", "power_integral", "mass",
                      "total", "alpha", "coupling"}


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(alpha=2.0, coupling=1.0, mass=1.0)
    with pytest.raises(ValueError):
        ModelParams(alpha=0.5, coupling=-1.0, mass=1.0)
    with pytest.raises(ValueError):
        ModelParams(alpha=0.5, coupling=1.0, mass=0.0)
    with pytest.raises(ValueError, match="epsilon"):
        ModelParams(alpha=0.5, coupling=1.0, mass=1.0, epsilon=-1)


# ---------------------------------------------------------------------------
# dilation maps


def test_rescale_mass_preserving_suite(grid20):
    f = gaussian_field(grid20)
    m0, k0 = mass(f), kinetic_integral(f)
    d0, p0 = coulomb_energy(f), power_integral(f, 1.0 / 3.0)
    for lam in (0.5, 2.0):
        g = rescale(f, lam, 1.5, 1.0)
        assert rel(mass(g), m0) < 1e-8
        assert rel(kinetic_integral(g), lam ** 2 * k0) < 1e-5
        assert rel(coulomb_energy(g), lam * d0) < 1e-5
        assert rel(power_integral(g, 1.0 / 3.0), lam * p0) < 1e-5


def test_rescale_identity_and_errors(grid20):
    f = gaussian_field(grid20)
    same = rescale(f, 1.0, 1.5, 1.0)
    assert np.array_equal(same.values, f.values)
    with pytest.raises(ValueError):
        rescale(f, 0.0, 1.5, 1.0)
    with pytest.raises(ValueError):
        rescale(f, -2.0, 1.5, 1.0)


def test_rescale_general_mass_law(grid20):
    f = gaussian_field(grid20)
    g = rescale(f, 1.5, 2.0, 1.0)
    assert rel(mass(g), 1.5 ** (2 * 2 - 3 * 1) * mass(f)) < 1e-6


# ---------------------------------------------------------------------------
# separated-bump aggregates


@pytest.fixture(scope="module")
def bump():
    return cut_gaussian_bump(make_grid(1.0, 1024), target_mass=5.0)


def test_multi_bump_single_copy(bump):
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    bd, sep = multi_bump(bump, 1, p)
    assert rel(bd.mass, mass(bump)) < 1e-14
    assert rel(bd.power_integral, power_integral(bump, p.alpha)) < 1e-14
    assert rel(bd.kinetic_integral, kinetic_integral(bump)) < 1e-14
    assert rel(bd.coulomb, 2.0 * coulomb_energy(bump)) < 1e-14
    assert sep == pytest.approx(mass(bump) ** 2 / coulomb_energy(bump) + 2.0)


def test_multi_bump_eight_copies(bump):
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    d = coulomb_energy(bump)
    k = kinetic_integral(bump)
    bd, sep = multi_bump(bump, 8, p)
    assert rel(bd.coulomb, d / 2.0) < 1e-14          # 2 d / 8^(2/3)
    assert rel(bd.kinetic_integral, 4.0 * k) < 1e-14  # 8^(2/3) k
    assert sep == pytest.approx(mass(bump) ** 2 * 4.0 / d + 2.0)


def test_multi_bump_coulomb_bound_certificate(bump):
    # direct part + pairwise cross bound implied by the separation distance
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    m = mass(bump)
    d = coulomb_energy(bump)
    for n in (2, 8, 64, 1024):
        bd, sep = multi_bump(bump, n, p)
        shrink = n ** (2.0 / 3.0)
        direct = d / shrink
        cross = n * (n - 1) * (m / n) ** 2 / (sep - 2.0)
        assert direct + cross <= bd.coulomb * (1.0 + 1e-12)


def test_multi_bump_g_scan_reaches_negative(bump):
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    found = None
    n = 1
    while n <= 1 << 20:
        bd, _ = multi_bump(bump, n, p)
        if g_from_breakdown(bd)[0] < 0.0:
            found = n
            break
        n *= 2
    assert found is not None


def test_multi_bump_rejects_wide_support():
    g = make_grid(2.0, 128)
    eta = gaussian_field(g, width=0.8, target_mass=1.0)
    p = ModelParams(alpha=0.4, coupling=1.0, mass=1.0)
    with pytest.raises(ValueError, match="unit ball"):
        multi_bump(eta, 2, p)


# ---------------------------------------------------------------------------
# concentration functional


def test_g_functional_slater_degenerate_convention(grid20):
    f = gaussian_field(grid20)
    p = ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)
    g_val, lam_opt = g_functional(f, p)
    expected = coulomb_energy(f) / 2.0 - 7.5 * power_integral(f, p.alpha)
    assert rel(g_val, expected) < 1e-12
    assert math.isnan(lam_opt)
    # closed-form cross-check
    exact = 0.5 * math.sqrt(2.0) * math.pi ** 2.5 - 7.5 * (0.75 * math.pi) ** 1.5
    assert g_val == pytest.approx(exact, rel=1e-5)


def test_g_functional_lambda_opt_at_half(grid20):
    f = gaussian_field(grid20)
    p = ModelParams(alpha=0.5, coupling=3.0, mass=1.0)
    _, lam_opt = g_functional(f, p)
    k = kinetic_integral(f)
    pw = power_integral(f, 0.5)
    assert rel(lam_opt, (3.0 * k / (3.0 * pw)) ** 2) < 1e-12
    exact = (1.5 * PI32 / (math.pi / 1.5) ** 1.5) ** 2
    assert lam_opt == pytest.approx(exact, rel=1e-5)
    assert lam_opt == pytest.approx(7.594, rel=1e-3)


def test_g_functional_domain(grid20):
    f = gaussian_field(grid20)
    with pytest.raises(ValueError):
        g_functional(f, ModelParams(alpha=0.2, coupling=1.0, mass=1.0))
    with pytest.raises(ValueError, match="nonzero"):
        g_functional(RadialField(grid20, np.zeros(grid20.N + 1)),
                     ModelParams(alpha=0.5, coupling=1.0, mass=1.0))


def _min_dilation_energy(f, p):
    best = math.inf
    for t in np.linspace(-4, 4, 161):
        g = rescale(f, 10.0 ** t, 1.5, 1.0)
        g = scale_to_mass(g, p.mass)
        best = min(best, energy(g, p).total)
    return best


def test_g_sign_matches_dilation_family_sign(grid20):
    cases = [
        (gaussian_field(grid20, target_mass=5.0), ModelParams(alpha=0.4, coupling=10.0, mass=5.0)),
        (gaussian_field(grid20, target_mass=1.0), ModelParams(alpha=0.6, coupling=2.0, mass=1.0)),
        (scale_to_mass(RadialField(grid20, grid20.r * np.exp(-grid20.r)), 2.0),
         ModelParams(alpha=0.45, coupling=8.0, mass=2.0)),
    ]
    for f, p in cases:
        g_val, _ = g_functional(f, p)
        e_min = _min_dilation_energy(f, p)
        if g_val < 0:
            assert e_min < 0.0
        else:
            assert e_min >= -1e-10


# ---------------------------------------------------------------------------
# inequalities


def test_lions_inequality_random_fields(grid20):
    for f in smooth_test_fields(grid20, 20, seed=2):
        lhs = power_integral(f, 0.5) ** 2
        rhs = kinetic_integral(f) * coulomb_energy(f) / (4.0 * math.pi)
        assert lhs <= rhs * (1.0 + 1e-12)


def test_energy_lower_bound_from_interpolation(grid20, consts_06):
    # E >= D/4 * (1 - (C M^(4a-2) / V_c)^(1/(2-3a))) for subcritical points,
    # checked with the one-sided estimated threshold on fields whose own
    # interpolation quotient stays below the estimated constant
    alpha = 0.6
    C = 2.0
    p = ModelParams(alpha=alpha, coupling=C, mass=1.0)
    checked = 0
    for base in smooth_test_fields(grid20, 6, seed=5):
        for mu in (0.3, 1.0, 4.0):
            f = scale_to_mass(rescale(base, mu, 1.5, 1.0), p.mass)
            k = kinetic_integral(f)
            d = coulomb_energy(f)
            pw = power_integral(f, alpha)
            quotient = pw / (mass(f) ** (4 * alpha - 2) * d ** (2 - 3 * alpha)
                             * k ** (3 * alpha - 1))
            if quotient > consts_06.c_alpha_hat:
                continue
            x = (C * p.mass ** (4 * alpha - 2) / consts_06.v_c_hat) ** (1.0 / (2 - 3 * alpha))
            e = energy(f, p).total
            assert e >= 0.25 * d * (1.0 - x) - 1e-9 * (1.0 + abs(e))
            checked += 1
    assert checked >= 12


def test_kinetic_energy_lower_bound(grid20, consts_half):
    # E >= K/2 - C c_gn/(2a+2) M^((2-a)/2) K^(3a/2) via the kinetic-mass
    # interpolation estimate, for fields below the estimated constant
    alpha, C = 0.5, 3.0
    c_gn = consts_half.c_gn_hat
    p = ModelParams(alpha=alpha, coupling=C, mass=1.0)
    for f in smooth_test_fields(grid20, 10, seed=9):
        k = kinetic_integral(f)
        m = mass(f)
        pw = power_integral(f, alpha)
        if pw > c_gn * k ** (1.5 * alpha) * m ** ((2 - alpha) / 2.0):
            continue
        e = energy(f, p).total
        bound = 0.5 * k - C * c_gn / (2 * alpha + 2) * m ** ((2 - alpha) / 2) * k ** (1.5 * alpha)
        assert e >= bound - 1e-9 * (1.0 + abs(e))


# ---------------------------------------------------------------------------
# profiles


def test_scale_to_mass(grid20):
    f = scale_to_mass(gaussian_field(grid20), 7.0)
    assert rel(mass(f), 7.0) < 1e-12
    with pytest.raises(ValueError):
        scale_to_mass(RadialField(grid20, np.zeros(grid20.N + 1)), 1.0)


def test_flat_ball_profile(grid20):
    f = flat_ball_field(grid20, 6.0, 25.0)
    assert rel(mass(f), 25.0) < 1e-12
    assert np.all(f.values[grid20.r > 6.5] == 0.0)
    assert f.values[0] > 0


def test_cut_gaussian_bump_support():
    g = make_grid(1.0, 512)
    eta = cut_gaussian_bump(g, target_mass=3.0)
    assert rel(mass(eta), 3.0) < 1e-12
    assert np.all(eta.values[g.r >= 0.9] == 0.0)
