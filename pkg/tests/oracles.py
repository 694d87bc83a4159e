"""Independent reference computations used to validate the library.

Everything here deliberately avoids the code paths under test: potentials
come from direct angular quadrature of the interaction kernel, ground
states from ODE shooting, and derivatives from finite differences.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import CubicSpline, interp1d

from spss.grid import RadialField, RadialGrid, make_grid


def coulomb_potential_quadrature(f: RadialField, r_points) -> np.ndarray:
    """V(r) by direct quadrature of the double integral.

    The angular integral of 1/|x - y| over the sphere is evaluated
    numerically (adaptive quadrature in the angle), then the radial
    integral over the source density, so nothing here shares structure
    with the cumulative-pass implementation.
    """
    rho = CubicSpline(f.grid.r, f.values * f.values)
    R = f.grid.R

    def angular(r: float, s: float) -> float:
        val, _ = quad(
            lambda th: np.sin(th) / np.sqrt(r * r + s * s - 2.0 * r * s * np.cos(th)),
            0.0, np.pi, epsabs=1e-13, epsrel=1e-12,
        )
        return val

    out = []
    for r in r_points:
        val, _ = quad(lambda s: rho(s) * s * s * angular(r, s), 0.0, R,
                      epsabs=1e-13, epsrel=1e-11, limit=200)
        out.append(2.0 * np.pi * val)
    return np.asarray(out)


def shoot_ground_state(alpha: float, grid: RadialGrid, r_max: float = 25.0,
                       bracket: tuple[float, float] = (0.5, 8.0)) -> RadialField:
    """Radial ground state of  -lap Q + Q = Q^(2*alpha+1)  by bisection on Q(0)."""
    power = 2.0 * alpha + 1.0

    def rhs(r, y):
        phi, dphi = y
        force = phi - np.sign(phi) * np.abs(phi) ** power
        if r < 1e-12:
            return [dphi, force / 3.0]
        return [dphi, force - 2.0 / r * dphi]

    def overshoots(s: float) -> bool:
        sol = solve_ivp(rhs, (1e-8, r_max), [s, 0.0], rtol=1e-10, atol=1e-12,
                        max_step=0.05)
        for phi, dphi in zip(sol.y[0], sol.y[1]):
            if phi <= 0.0:
                return True
            if dphi > 1e-12 and phi > 1e-8:
                return False
        return False

    lo, hi = bracket
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if overshoots(mid):
            hi = mid
        else:
            lo = mid
    s = 0.5 * (lo + hi)
    sol = solve_ivp(rhs, (1e-8, r_max), [s, 0.0], rtol=1e-12, atol=1e-14,
                    max_step=0.02)
    profile = interp1d(sol.t, sol.y[0], kind="cubic", bounds_error=False,
                       fill_value=(s, 0.0))
    vals = profile(grid.r)
    vals[0] = s
    bad = np.where(vals <= 1e-14)[0]
    if len(bad):
        vals[bad[0]:] = 0.0
    return RadialField(grid, np.maximum(vals, 0.0))


def smooth_test_fields(grid: RadialGrid, count: int, seed: int) -> list[RadialField]:
    """Seeded random positive profiles, smooth and decayed at the boundary."""
    rng = np.random.default_rng(seed)
    fields = []
    for _ in range(count):
        vals = np.zeros(grid.N + 1)
        for _ in range(int(rng.integers(2, 5))):
            width = rng.uniform(0.5, 2.5)
            amp = rng.uniform(0.2, 1.0)
            centre = rng.uniform(0.0, 1.5)
            vals += amp * np.exp(-0.5 * ((grid.r - centre) / width) ** 2)
        vals *= np.exp(-(grid.r / (0.55 * grid.R)) ** 4)
        fields.append(RadialField(grid, vals))
    return fields
