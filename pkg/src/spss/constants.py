"""Numerical estimates of the sharp interpolation constants.

Each sharp constant is the supremum of a scale- and amplitude-invariant
quotient

    Q(u) = P(u) / ( M(u)^a * D(u)^b * K(u)^c )

over nonzero profiles, where P, M, D, K are the power, mass, Coulomb and
kinetic integrals.  The three quotients used here are

    gn      : a = (2-alpha)/2, b = 0,        c = 3*alpha/2
    c_alpha : a = 4*alpha-2,   b = 2-3*alpha, c = 3*alpha-1
    k_alpha : a = 1-2*alpha,   b = alpha,     c = alpha

Every value returned by the ascent is the quotient of an explicit trial
profile, hence a certified LOWER bound on the sharp constant (up to
quadrature error).  Derived thresholds inherit the opposite orientation:
the critical coupling estimate is an upper bound, and so is the critical
mass computed from it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .grid import RadialField, RadialGrid, integrate_volume, make_grid
from .functionals import (
    coulomb_energy,
    coulomb_potential,
    exponential_field,
    gaussian_field,
    kinetic_integral,
    mass,
    power_integral,
)
from .minimizer import SolveOptions, laplacian, solve_shifted

_ALPHA_TOL = 1e-9
LIONS_HALF_BOUND = 1.0 / (2.0 * math.sqrt(math.pi))

_QUOTIENTS = {
    "gn": lambda alpha: ((2.0 - alpha) / 2.0, 0.0, 1.5 * alpha),
    "c_alpha": lambda alpha: (4.0 * alpha - 2.0, 2.0 - 3.0 * alpha, 3.0 * alpha - 1.0),
    "k_alpha": lambda alpha: (1.0 - 2.0 * alpha, alpha, alpha),
}


@dataclass(frozen=True)
class ConstantsReport:
    """Estimated constants at one exponent, with their one-sided ranges.

    All quotient estimates are lower bounds of the sharp values; v_c_hat
    and m_c_hat are therefore upper bounds of the true thresholds.
    """

    alpha: float
    c_gn_hat: float
    c_alpha_hat: float | None
    k_alpha_hat: float | None
    v_c_hat: float | None
    m_c_hat: float | None
    quotient_maximizer: RadialField
    refinement_drift: float

    def __post_init__(self):
        if self.c_gn_hat <= 0:
            raise ValueError("constant estimates must be positive")
        for v in (self.c_alpha_hat, self.k_alpha_hat, self.v_c_hat, self.m_c_hat):
            if v is not None and v <= 0:
                raise ValueError("constant estimates must be positive")
        if abs(self.alpha - 0.5) <= _ALPHA_TOL and self.c_alpha_hat is not None:
            if self.c_alpha_hat > LIONS_HALF_BOUND + 1e-9:
                raise ValueError(
                    f"estimate {self.c_alpha_hat} exceeds the a-priori bound "
                    f"{LIONS_HALF_BOUND} at alpha=1/2"
                )

    def to_json_dict(self, maximizer_csv: str | None = None) -> dict:
        out = {
            "alpha": self.alpha,
            "c_gn_hat": self.c_gn_hat,
            "c_alpha_hat": self.c_alpha_hat,
            "k_alpha_hat": self.k_alpha_hat,
            "v_c_hat": self.v_c_hat,
            "m_c_hat": self.m_c_hat,
            "refinement_drift": self.refinement_drift,
        }
        if maximizer_csv is not None:
            out["quotient_maximizer_csv"] = maximizer_csv
        return out


def quotient_value(f: RadialField, alpha: float, kind: str) -> float:
    """Evaluate the requested interpolation quotient on a trial profile."""
    a, b, c = _QUOTIENTS[kind](alpha)
    m = mass(f)
    if m <= 0.0:
        raise ValueError("quotient undefined for the zero field")
    k = kinetic_integral(f)
    pw = power_integral(f, alpha)
    d = coulomb_energy(f) if b != 0.0 else 1.0
    return pw / (m ** a * (d ** b if b != 0.0 else 1.0) * k ** c)


def _renormalize(f: RadialField) -> RadialField:
    """Fix mass = 1 and kinetic = 1 using the two-parameter scaling."""
    m = mass(f)
    k = kinetic_integral(f)
    lam = math.sqrt(m / k)
    if not math.isfinite(lam) or lam <= 0:
        raise RuntimeError("degenerate profile during renormalization")
    g = f.grid
    if abs(lam - 1.0) > 1e-14:
        spline = CubicSpline(g.r, f.values)
        vals = np.zeros(g.N + 1)
        inside = lam * g.r <= g.R
        vals[inside] = spline(lam * g.r[inside])
    else:
        vals = f.values.copy()
    vals = np.abs(vals)
    out = RadialField(g, vals)
    m2 = mass(out)
    return RadialField(g, out.values / math.sqrt(m2))


def _ascend_quotient(alpha: float, kind: str, init: RadialField,
                     max_steps: int = 1200) -> tuple[float, RadialField]:
    """Gradient ascent on log Q with renormalization after each step."""
    a, b, c = _QUOTIENTS[kind](alpha)
    f = _renormalize(init)
    q = quotient_value(f, alpha, kind)
    tau = 0.5
    stall = 0
    for _ in range(max_steps):
        v = f.values
        m = mass(f)
        k = kinetic_integral(f)
        pw = power_integral(f, alpha)
        grad = (2.0 * alpha + 2.0) * np.abs(v) ** (2.0 * alpha + 1.0) / pw
        grad -= 2.0 * a * v / m
        if b != 0.0:
            d = coulomb_energy(f)
            grad -= 4.0 * b * coulomb_potential(f).values * v / d
        grad -= 2.0 * c * (-laplacian(f)) / k
        direction = solve_shifted(RadialField(f.grid, grad), 1.0).values

        accepted = False
        t = tau
        for _ in range(30):
            trial_vals = v + t * direction
            trial_vals[-1] = 0.0
            try:
                trial = _renormalize(RadialField(f.grid, trial_vals))
                q_trial = quotient_value(trial, alpha, kind)
            except (RuntimeError, ValueError, FloatingPointError):
                t *= 0.5
                continue
            if q_trial > q:
                gain = (q_trial - q) / q
                f, q = trial, q_trial
                tau = min(t * 1.3, 2.0)
                accepted = True
                stall = stall + 1 if gain < 1e-12 else 0
                break
            t *= 0.5
        if not accepted:
            stall += 1
        if stall >= 5:
            break
    return q, f


def _default_inits(grid: RadialGrid) -> list[RadialField]:
    g1 = gaussian_field(grid)
    g2 = exponential_field(grid)
    g3 = RadialField(grid, grid.r * np.exp(-grid.r))
    return [g1, g2, g3]


def _estimate(alpha: float, kind: str, opts: SolveOptions | None,
              grid: RadialGrid | None) -> tuple[float, RadialField]:
    grid = grid or make_grid(40.0, 4000)
    best_q = -math.inf
    best_f = None
    for init in _default_inits(grid):
        q, f = _ascend_quotient(alpha, kind, init)
        if q > best_q:
            best_q, best_f = q, f
    return best_q, best_f


def estimate_gn_constant(alpha: float, opts: SolveOptions | None = None,
                         grid: RadialGrid | None = None) -> tuple[float, RadialField]:
    """Lower estimate of the sharp kinetic-mass interpolation constant."""
    if not (0.0 < alpha < 2.0):
        raise ValueError(f"gn constant needs alpha in (0, 2), got {alpha}")
    return _estimate(alpha, "gn", opts, grid)


def estimate_interp_constant(alpha: float, opts: SolveOptions | None = None,
                             which: str = "c_alpha",
                             grid: RadialGrid | None = None) -> tuple[float, RadialField]:
    """Lower estimate of a Coulomb interpolation constant.

    ``which`` selects the quotient: "c_alpha" (valid for alpha in
    [1/3, 2/3]) or "k_alpha" (valid for alpha in (0, 1/2]).  At alpha=1/2
    the two quotients coincide.
    """
    if which == "c_alpha":
        if not (1.0 / 3.0 - _ALPHA_TOL <= alpha <= 2.0 / 3.0 + _ALPHA_TOL):
            raise ValueError(f"c_alpha estimate needs alpha in [1/3, 2/3], got {alpha}")
    elif which == "k_alpha":
        if not (0.0 < alpha <= 0.5 + _ALPHA_TOL):
            raise ValueError(f"k_alpha estimate needs alpha in (0, 1/2], got {alpha}")
    else:
        raise ValueError(f"unknown quotient kind {which!r}")
    return _estimate(alpha, which, opts, grid)


def v_critical(alpha: float, c_alpha: float) -> float:
    """Critical value of C * M^(4*alpha-2) separating zero from negative
    infimum, computed from an interpolation-constant value.

    Degenerate exponents use the x^x = 1 convention, so the value is
    3/(sqrt(2) c) at alpha=1/2 and 5/(3 c) at alpha=2/3."""
    if not (1.0 / 3.0 - _ALPHA_TOL <= alpha <= 2.0 / 3.0 + _ALPHA_TOL):
        raise ValueError(f"v_critical needs alpha in [1/3, 2/3], got {alpha}")
    if not (c_alpha > 0):
        raise ValueError("v_critical needs a positive constant")
    a = 3.0 * alpha - 1.0
    b = 2.0 - 3.0 * alpha
    t1 = 1.0 if abs(a) <= _ALPHA_TOL else (1.0 / a) ** a
    t2 = 1.0 if abs(b) <= _ALPHA_TOL else (1.0 / (2.0 * b)) ** b
    return (alpha + 1.0) / c_alpha * t1 * t2


def critical_mass(alpha: float, C: float, v_c: float) -> float:
    """Mass threshold (v_c / C)^(1/(4*alpha-2)) for exponents in (1/2, 2/3)."""
    if alpha <= 0.5 + _ALPHA_TOL:
        raise ValueError("critical mass undefined at alpha=1/2 and below")
    if alpha >= 2.0 / 3.0 - _ALPHA_TOL:
        raise ValueError(f"critical mass needs alpha in (1/2, 2/3), got {alpha}")
    if C <= 0 or v_c <= 0:
        raise ValueError("critical mass needs positive coupling and threshold")
    return (v_c / C) ** (1.0 / (4.0 * alpha - 2.0))


def constants_report(alpha: float, opts: SolveOptions | None = None,
                     coupling: float | None = None,
                     grid: RadialGrid | None = None) -> ConstantsReport:
    """Estimate every constant relevant at this exponent."""
    if not (0.0 < alpha < 2.0):
        raise ValueError(f"constants need alpha in (0, 2), got {alpha}")
    grid = grid or make_grid(40.0, 4000)
    c_gn, gn_max = estimate_gn_constant(alpha, opts, grid=grid)
    c_alpha = None
    k_alpha = None
    v_c = None
    m_c = None
    maximizer = gn_max
    if 1.0 / 3.0 - _ALPHA_TOL <= alpha <= 2.0 / 3.0 + _ALPHA_TOL:
        c_alpha, maximizer = estimate_interp_constant(alpha, opts, "c_alpha", grid=grid)
        v_c = v_critical(alpha, c_alpha)
    if 0.0 < alpha <= 0.5 + _ALPHA_TOL:
        k_alpha, _ = estimate_interp_constant(alpha, opts, "k_alpha", grid=grid)
    if coupling is not None and 0.5 + _ALPHA_TOL < alpha < 2.0 / 3.0 - _ALPHA_TOL:
        m_c = critical_mass(alpha, coupling, v_c)
    fine = make_grid(grid.R * 1.5, grid.N * 2)
    from .grid import resample

    kind = "c_alpha" if c_alpha is not None else "gn"
    base = c_alpha if c_alpha is not None else c_gn
    drift = abs(quotient_value(resample(maximizer, fine), alpha, kind) / base - 1.0)
    return ConstantsReport(
        alpha=alpha,
        c_gn_hat=c_gn,
        c_alpha_hat=c_alpha,
        k_alpha_hat=k_alpha,
        v_c_hat=v_c,
        m_c_hat=m_c,
        quotient_maximizer=maximizer,
        refinement_drift=drift,
    )


@functools.lru_cache(maxsize=16)
def default_gn_estimate(alpha: float) -> float:
    """Cached kinetic-mass constant estimate at the default desk grid."""
    value, _ = estimate_gn_constant(alpha, grid=make_grid(40.0, 2000))
    return value
