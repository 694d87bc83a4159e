"""Energy functionals of radial fields and their dilation behaviour.

For a real radial profile phi on [0, R] the model uses four integrals,
all over 3-space:

    mass     M  = int phi^2
    kinetic  K  = int |grad phi|^2
    Coulomb  D  = int int phi^2(x) phi^2(y) / |x - y|
    power    P  = int |phi|^(2a+2)        (a = exponent of the local term)

and the total energy

    E = K/2 + D/4 - C/(2a+2) * P .

The Coulomb term is the repulsive self-interaction; the power term is the
attractive local correction with coupling C >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from .grid import FOUR_PI, RadialField, RadialGrid, integrate_volume, make_grid

_DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: exponent, coupling, target mass, interaction sign.

    ``coulomb_weight`` scales the Coulomb term of the energy (default 1).
    It exists for the rescaled functional used by the mass-scaling law at
    small exponents; all standard physics runs leave it at 1.
    """

    alpha: float
    coupling: float
    mass: float
    epsilon: int = 1
    coulomb_weight: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.alpha < 2.0) or not math.isfinite(self.alpha):
            raise ValueError(f"exponent alpha={self.alpha} outside [0, 2)")
        if not math.isfinite(self.coupling) or self.coupling < 0:
            raise ValueError(f"coupling must be a finite nonnegative real, got {self.coupling}")
        if not math.isfinite(self.mass) or self.mass <= 0:
            raise ValueError(f"target mass must be positive, got {self.mass}")
        if self.epsilon != 1:
            raise ValueError("only the repulsive interaction (epsilon=+1) is supported")
        if not math.isfinite(self.coulomb_weight) or self.coulomb_weight <= 0:
            raise ValueError("coulomb_weight must be positive")


@dataclass(frozen=True)
class EnergyBreakdown:
    """The four integrals of a field plus the assembled total energy.

    ``coulomb`` stores the effective Coulomb term entering the total, i.e.
    coulomb_weight * D; with the default weight it is D itself.  ``total``
    is derived in the constructor, so the identity

        total == kinetic_integral/2 + coulomb/4 - coupling/(2*alpha+2) * power_integral

    holds exactly for the stored fields.
    """

    kinetic_integral: float
    coulomb: float
    power_integral: float
    mass: float
    alpha: float
    coupling: float
    total: float = float("nan")

    def __post_init__(self):
        total = (
            0.5 * self.kinetic_integral
            + 0.25 * self.coulomb
            - self.coupling / (2.0 * self.alpha + 2.0) * self.power_integral
        )
        object.__setattr__(self, "total", total)

    def to_json_dict(self) -> dict:
        return {
            "kinetic_integral": self.kinetic_integral,
            "coulomb": self.coulomb,
            "power_integral": self.power_integral,
            "mass": self.mass,
            "total": self.total,
            "alpha": self.alpha,
            "coupling": self.coupling,
        }


def mass(f: RadialField) -> float:
    """Squared L2 norm of the field (total mass)."""
    return integrate_volume(RadialField(f.grid, f.values * f.values))


def _radial_slope_times_r(f: RadialField) -> np.ndarray:
    """r * phi'(r) on the nodes, via derivatives of u = r*phi.

    Since u' - u/r = r*phi', differencing u avoids the coordinate
    singularity; u extends oddly through r=0, which keeps the one-sided
    stencils fourth order at the inner boundary.
    """
    g = f.grid
    h = g.h
    u = g.r * f.values
    n = g.N
    du = np.empty_like(u)
    if n >= 4:
        du[2:-2] = (-u[4:] + 8.0 * u[3:-1] - 8.0 * u[1:-3] + u[:-4]) / (12.0 * h)
        du[1] = (-u[3] + 8.0 * u[2] - u[1]) / (12.0 * h)  # ghost u(-h) = -u(h)
    else:
        du[1:-1] = (u[2:] - u[:-2]) / (2.0 * h)
    du[0] = f.values[0]  # u'(0) = phi(0) exactly
    du[-2] = (u[-1] - u[-3]) / (2.0 * h)
    du[-1] = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h)
    out = du - f.values
    out[0] = 0.0  # r*phi' vanishes at the origin
    return out


def kinetic_integral(f: RadialField) -> float:
    """int |grad phi|^2 over 3-space, for a radial profile.

    Uses 4*pi * int (r phi')^2 dr; the r^2 weight is absorbed into the
    differenced quantity so no division by r occurs anywhere.
    """
    rphi = _radial_slope_times_r(f)
    return FOUR_PI * float(np.dot(f.grid.weights, rphi * rphi))


def coulomb_potential(f: RadialField) -> RadialField:
    """Newtonian potential generated by the density phi^2.

    V(r) = 4*pi * [ (1/r) int_0^r phi^2 s^2 ds + int_r^R phi^2 s ds ],
    computed with two cumulative Simpson passes in O(N).  V(0) takes the
    limit 4*pi int_0^R phi^2 s ds.
    """
    g = f.grid
    rho = f.values * f.values
    inner = cumulative_simpson(rho * g.r * g.r, dx=g.h, initial=0.0)
    outer_cum = cumulative_simpson(rho * g.r, dx=g.h, initial=0.0)
    outer = outer_cum[-1] - outer_cum
    v = np.empty(g.N + 1)
    v[1:] = FOUR_PI * (inner[1:] / g.r[1:] + outer[1:])
    v[0] = FOUR_PI * outer_cum[-1]
    return RadialField(g, v)


def coulomb_energy(f: RadialField) -> float:
    """Coulomb self-interaction D = int phi^2 V, with V the potential above."""
    v = coulomb_potential(f)
    return integrate_volume(RadialField(f.grid, f.values * f.values * v.values))


def power_integral(f: RadialField, alpha: float) -> float:
    """int |phi|^(2*alpha+2) over 3-space."""
    if not (0.0 <= alpha < 2.0):
        raise ValueError(f"exponent alpha={alpha} outside [0, 2)")
    p = np.abs(f.values) ** (2.0 * alpha + 2.0)
    return integrate_volume(RadialField(f.grid, p))


def energy(f: RadialField, p: ModelParams) -> EnergyBreakdown:
    """Assemble all integrals of the field into an EnergyBreakdown."""
    return EnergyBreakdown(
        kinetic_integral=kinetic_integral(f),
        coulomb=p.coulomb_weight * coulomb_energy(f),
        power_integral=power_integral(f, p.alpha),
        mass=mass(f),
        alpha=p.alpha,
        coupling=p.coupling,
    )


def rescale(f: RadialField, lam: float, p: float, q: float) -> RadialField:
    """Dilation map: returns lam^p * f(lam^q * r).

    For lam^q < 1 the support widens, so the output grid keeps N intervals
    on the enlarged radius R / lam^q and no mass is lost.  For lam^q > 1
    the output stays on the input grid and samples beyond R are zero.
    For (p, q) = (3/2, 1) the mass is preserved.
    """
    if not (lam > 0) or not math.isfinite(lam):
        raise ValueError(f"scale parameter must be positive, got {lam}")
    amp = lam ** p
    s = lam ** q
    g = f.grid
    if s == 1.0:
        return RadialField(g, amp * f.values)
    spline = CubicSpline(g.r, f.values)
    if s < 1.0:
        out_grid = make_grid(g.R / s, g.N)
        return RadialField(out_grid, amp * spline(s * out_grid.r))
    vals = np.zeros(g.N + 1)
    inside = s * g.r <= g.R
    vals[inside] = amp * spline(s * g.r[inside])
    return RadialField(g, vals)


def _bump_supported_in_unit_ball(eta: RadialField) -> bool:
    if eta.grid.R <= 1.0:
        return True
    scale = float(np.max(np.abs(eta.values)))
    tail = eta.values[eta.grid.r >= 1.0]
    return scale == 0.0 or float(np.max(np.abs(tail))) <= 1e-10 * scale


def multi_bump(eta: RadialField, n: int, p: ModelParams) -> tuple[EnergyBreakdown, float]:
    """Aggregate functionals of n widely separated shrunken copies of eta.

    The configuration places n copies of eta(n^(1/3) * x) at centres at
    least ``separation`` apart.  Its mass and power integral equal those of
    eta, the kinetic term is n^(2/3) times eta's, and the Coulomb energy is
    certified to be at most 2 D[eta] / n^(2/3).  The returned breakdown
    stores that upper bound, so its total is an upper bound for the energy
    of the configuration.  The sum itself is never materialised: it is not
    radial, and only these aggregates are needed.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"bump count must be a positive integer, got {n}")
    if not _bump_supported_in_unit_ball(eta):
        raise ValueError("bump profile must be supported in the unit ball")
    n = int(n)
    m = mass(eta)
    k = kinetic_integral(eta)
    d = coulomb_energy(eta)
    pw = power_integral(eta, p.alpha)
    shrink = float(n) ** (2.0 / 3.0)
    summary = EnergyBreakdown(
        kinetic_integral=shrink * k,
        coulomb=2.0 * d / shrink,
        power_integral=pw,
        mass=m,
        alpha=p.alpha,
        coupling=p.coupling,
    )
    separation = m * m * shrink / d + 2.0
    return summary, separation


def _g_terms(kin: float, cou: float, alpha: float) -> float:
    """Product of the two concentration terms, with the x^x = 1 convention
    at the degenerate exponents (alpha = 1/3 and alpha = 2/3)."""
    a = 3.0 * alpha - 1.0
    b = 2.0 - 3.0 * alpha
    t1 = 1.0 if abs(a) <= _DEGENERATE_TOL else (kin / a) ** a
    t2 = 1.0 if abs(b) <= _DEGENERATE_TOL else (cou / (2.0 * b)) ** b
    return t1 * t2


def _g_pair(kin: float, cou: float, pw: float, alpha: float, coupling: float) -> tuple[float, float]:
    g_val = _g_terms(kin, cou, alpha) - coupling / (alpha + 1.0) * pw
    a = 3.0 * alpha - 1.0
    b = 2.0 - 3.0 * alpha
    if abs(a) <= _DEGENERATE_TOL or abs(b) <= _DEGENERATE_TOL:
        lam_opt = float("nan")
    else:
        lam_opt = (a / (alpha + 1.0) * coupling * kin / pw) ** (1.0 / b)
    return g_val, lam_opt


def g_functional(f: RadialField, p: ModelParams) -> tuple[float, float]:
    """Concentration functional G and the dilation parameter lambda_opt.

    G < 0 is equivalent to the mass-preserving dilation family of f
    reaching negative energies (for exponents in [1/3, 2/3]).  lambda_opt
    is reported for exponents strictly inside (1/3, 2/3) and is NaN at the
    degenerate endpoints.
    """
    alpha = p.alpha
    if alpha < 1.0 / 3.0 - _DEGENERATE_TOL or alpha > 2.0 / 3.0 + _DEGENERATE_TOL:
        raise ValueError(f"g_functional needs alpha in [1/3, 2/3], got {alpha}")
    m = mass(f)
    if m <= 0.0:
        raise ValueError("g_functional needs a nonzero field")
    kin = kinetic_integral(f)
    cou = p.coulomb_weight * coulomb_energy(f)
    pw = power_integral(f, alpha)
    return _g_pair(kin, cou, pw, alpha, p.coupling)


def g_from_breakdown(bd: EnergyBreakdown) -> tuple[float, float]:
    """G and lambda_opt evaluated on stored integrals (e.g. bump aggregates)."""
    alpha = bd.alpha
    if alpha < 1.0 / 3.0 - _DEGENERATE_TOL or alpha > 2.0 / 3.0 + _DEGENERATE_TOL:
        raise ValueError(f"G is defined for alpha in [1/3, 2/3], got {alpha}")
    return _g_pair(bd.kinetic_integral, bd.coulomb, bd.power_integral, alpha, bd.coupling)


# ---------------------------------------------------------------------------
# reference profiles


def gaussian_field(grid: RadialGrid, width: float = 1.0, target_mass: float | None = None) -> RadialField:
    """Gaussian profile exp(-r^2 / (2 width^2)), optionally scaled to a mass."""
    vals = np.exp(-0.5 * (grid.r / width) ** 2)
    f = RadialField(grid, vals)
    if target_mass is not None:
        f = scale_to_mass(f, target_mass)
    return f


def exponential_field(grid: RadialGrid, rate: float = 1.0, target_mass: float | None = None) -> RadialField:
    vals = np.exp(-rate * grid.r)
    f = RadialField(grid, vals)
    if target_mass is not None:
        f = scale_to_mass(f, target_mass)
    return f


def flat_ball_field(grid: RadialGrid, radius: float, target_mass: float) -> RadialField:
    """Roughly uniform profile on a ball with a smoothstep edge.

    Low Coulomb repulsion per unit mass makes this the natural warm start
    for heavy configurations at small exponents, where the energy well is
    wide and shallow rather than peaked."""
    r = grid.r
    t = np.clip((radius - r) / (0.3 * radius), 0.0, 1.0)
    vals = t * t * (3.0 - 2.0 * t)
    return scale_to_mass(RadialField(grid, vals), target_mass)


def cut_gaussian_bump(grid: RadialGrid, target_mass: float, width: float = 0.25, edge: float = 0.9) -> RadialField:
    """Gaussian smoothly cut to vanish beyond r = edge < 1 (unit-ball bump)."""
    r = grid.r
    vals = np.exp(-0.5 * (r / width) ** 2)
    t = np.clip((edge - r) / (edge * 0.2), 0.0, 1.0)
    cut = t * t * (3.0 - 2.0 * t)
    return scale_to_mass(RadialField(grid, vals * cut), target_mass)


def scale_to_mass(f: RadialField, target: float) -> RadialField:
    """Multiply the field by the constant making its mass equal to target."""
    m = mass(f)
    if m <= 0.0:
        raise ValueError("cannot scale a zero field to a positive mass")
    return RadialField(f.grid, f.values * math.sqrt(target / m))
