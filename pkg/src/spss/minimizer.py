"""Mass-constrained energy minimization over radial profiles.

The solver is a normalized gradient flow: descend the energy, clamp the
iterate to nonnegative values, and rescale it back onto the mass sphere
after every step.  Two ingredients make it practical on fine grids:

* the descent direction is the stationarity residual grad E + ell*phi
  passed through a shifted inverse Laplacian, which removes the grid
  stiffness while leaving the fixed points of the iteration exactly at
  the discrete Euler-Lagrange solutions;
* every ``scaling_period`` steps the energy is minimized over the
  mass-preserving dilation family of the iterate (golden-section search
  in log10 of the dilation parameter), which accelerates the soft scale
  mode and doubles as the dispersion detector: in the zero-infimum
  regime the optimal dilation collapses to zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solveh_banded

from .grid import RadialField, RadialGrid, integrate_volume, make_grid
from .functionals import (
    EnergyBreakdown,
    ModelParams,
    coulomb_potential,
    energy,
    exponential_field,
    gaussian_field,
    scale_to_mass,
)

_ALPHA_TOL = 1e-9
_E_SLACK = 1e-12


class SolveStatus(str, enum.Enum):
    CONVERGED = "CONVERGED"
    DISPERSED = "DISPERSED"
    UNBOUNDED = "UNBOUNDED"
    MAXITER = "MAXITER"


@dataclass(frozen=True)
class SolveOptions:
    tol_el: float = 1e-6
    max_iter: int = 50000
    step0: float = 1e-2
    backtrack: float = 0.5
    scaling_period: int = 50
    disperse_scale_floor: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.tol_el <= 0 or self.disperse_scale_floor <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not (0.0 < self.backtrack < 1.0):
            raise ValueError("backtrack factor must lie in (0, 1)")
        if self.step0 <= 0 or self.scaling_period < 1:
            raise ValueError("step0 and scaling_period must be positive")


@dataclass(frozen=True)
class MinimizerReport:
    field: RadialField
    breakdown: EnergyBreakdown
    I_hat: float
    ell: float
    virial_residual: float
    el_residual: float
    status: SolveStatus
    iterations: int
    grid: RadialGrid

    def to_json_dict(self, field_csv: str | None = None) -> dict:
        out = {
            "status": self.status.value,
            "I_hat": self.I_hat,
            "ell": self.ell,
            "virial_residual": self.virial_residual,
            "el_residual": self.el_residual,
            "iterations": self.iterations,
            "grid": {"R": self.grid.R, "N": self.grid.N},
            "breakdown": self.breakdown.to_json_dict(),
        }
        if field_csv is not None:
            out["field_csv"] = field_csv
        return out


@dataclass(frozen=True)
class CriticalMassIdentities:
    """Reconstruction of the three integrals from (mass, multiplier, infimum).

    eps_M = M*ell/(2*alpha - 1) and eta_M = I/(1 - 2*alpha); the three
    residuals compare the kinetic, Coulomb and power-energy terms against
    their linear expressions in (eps_M, eta_M).
    """

    eps_M: float
    eta_M: float
    res_kinetic: float
    res_coulomb: float
    res_power: float


def laplacian(f: RadialField) -> np.ndarray:
    """Radial Laplacian phi'' + 2 phi'/r via u = r*phi (so lap phi = u''/r).

    Fourth-order central differences on u in the interior (odd ghost
    extension of u through the origin); the origin value uses the even
    symmetry of phi.  The Dirichlet node r = R gets a one-sided stencil.
    """
    g = f.grid
    h = g.h
    v = f.values
    u = g.r * v
    n = g.N
    upp = np.empty_like(u)
    upp[2:-2] = (-u[4:] + 16.0 * u[3:-1] - 30.0 * u[2:-2] + 16.0 * u[1:-3] - u[:-4]) / (12.0 * h * h)
    upp[1] = (-u[3] + 16.0 * u[2] - 29.0 * u[1]) / (12.0 * h * h)  # ghost u(-h) = -u(h)
    upp[-2] = (u[-1] - 2.0 * u[-2] + u[-3]) / (h * h)
    upp[-1] = (2.0 * u[-1] - 5.0 * u[-2] + 4.0 * u[-3] - u[-4]) / (h * h)
    out = np.empty_like(u)
    out[1:] = upp[1:] / g.r[1:]
    out[0] = (8.0 * v[1] - 0.5 * v[2] - 7.5 * v[0]) / (h * h)  # 3 phi''(0), 4th order
    return out


def solve_shifted(f_rhs: RadialField, shift: float) -> RadialField:
    """Solve (shift - lap) psi = rhs with Dirichlet cutoff, via w = r*psi."""
    g = f_rhs.grid
    h = g.h
    n = g.N
    b = g.r[1:n] * f_rhs.values[1:n]
    ab = np.empty((2, n - 1))
    ab[0, :] = -1.0 / (h * h)
    ab[1, :] = shift + 2.0 / (h * h)
    w_int = solveh_banded(ab, b)
    psi = np.zeros(n + 1)
    psi[1:n] = w_int / g.r[1:n]
    psi[0] = (4.0 * w_int[0] - w_int[1]) / (2.0 * h)  # w'(0) with w(0) = 0
    return RadialField(g, psi)


def _power_term(values: np.ndarray, alpha: float) -> np.ndarray:
    return np.sign(values) * np.abs(values) ** (2.0 * alpha + 1.0)


def l2_gradient(f: RadialField, p: ModelParams) -> RadialField:
    """L2 gradient of the energy: -lap phi + w*V*phi - C*|phi|^(2a)*phi."""
    if not (_ALPHA_TOL < p.alpha <= 2.0 / 3.0 + _ALPHA_TOL):
        raise ValueError(f"l2_gradient needs alpha in (0, 2/3], got {p.alpha}")
    v = coulomb_potential(f).values
    grad = (
        -laplacian(f)
        + p.coulomb_weight * v * f.values
        - p.coupling * _power_term(f.values, p.alpha)
    )
    return RadialField(f.grid, grad)


def _l2_norm(f: RadialField) -> float:
    return math.sqrt(max(integrate_volume(RadialField(f.grid, f.values * f.values)), 0.0))


def lagrange_multiplier(f: RadialField, p: ModelParams) -> float:
    """Multiplier recovered from the integrated stationarity equation:
    ell = -(K + w*D - C*P) / mass."""
    from .functionals import coulomb_energy, kinetic_integral, mass, power_integral

    m = mass(f)
    if m <= 0.0:
        raise ValueError("lagrange multiplier undefined for the zero field")
    k = kinetic_integral(f)
    d = p.coulomb_weight * coulomb_energy(f)
    pw = power_integral(f, p.alpha)
    return -(k + d - p.coupling * pw) / m


def virial_residual(f: RadialField, p: ModelParams) -> float:
    """Relative residual of K + D/4 - 3aC/(2a+2) P = 0 (dilation stationarity)."""
    if not (0.0 < p.alpha < 2.0 / 3.0 + _ALPHA_TOL):
        raise ValueError(f"virial residual needs alpha in (0, 2/3), got {p.alpha}")
    from .functionals import coulomb_energy, kinetic_integral, power_integral

    k = kinetic_integral(f)
    d = p.coulomb_weight * coulomb_energy(f)
    pw = 3.0 * p.alpha * p.coupling / (2.0 * p.alpha + 2.0) * power_integral(f, p.alpha)
    denom = max(abs(k), abs(d) / 4.0, abs(pw), 1e-300)
    return (k + d / 4.0 - pw) / denom


def _el_residual(f: RadialField, p: ModelParams) -> tuple[float, float, RadialField]:
    """Relative stationarity residual, the multiplier, and the raw residual."""
    grad = l2_gradient(f, p)
    m = integrate_volume(RadialField(f.grid, f.values * f.values))
    if m <= 0.0:
        return math.inf, 0.0, grad
    ell = -integrate_volume(RadialField(f.grid, grad.values * f.values)) / m
    rho = grad.values + ell * f.values
    rho[-1] = 0.0  # Dirichlet node is not a degree of freedom
    rho_f = RadialField(f.grid, rho)
    den = max(_l2_norm(grad), abs(ell) * math.sqrt(m), 1e-300)
    return _l2_norm(rho_f) / den, ell, rho_f


def _project(values: np.ndarray, grid: RadialGrid, target_mass: float) -> RadialField:
    vals = np.maximum(values, 0.0)
    vals[-1] = 0.0
    f = RadialField(grid, vals)
    m = integrate_volume(RadialField(grid, vals * vals))
    if m <= 0.0:
        raise RuntimeError("iterate collapsed to zero mass")
    return RadialField(grid, vals * math.sqrt(target_mass / m))


def _total_energy(f: RadialField, p: ModelParams) -> float:
    return energy(f, p).total


def _dilation_family(f: RadialField, p: ModelParams):
    """Evaluator for E over the mass-preserving dilation family of f."""
    spline = CubicSpline(f.grid.r, f.values)
    R, N = f.grid.R, f.grid.N

    def member(lam: float) -> RadialField:
        amp = lam ** 1.5
        if lam == 1.0:
            return f
        if lam < 1.0:
            g = make_grid(R / lam, N)
            vals = amp * spline(lam * g.r)
        else:
            g = f.grid
            vals = np.zeros(N + 1)
            inside = lam * g.r <= R
            vals[inside] = amp * spline(lam * g.r[inside])
        return _project(vals, g, p.mass)

    def value(lam: float) -> float:
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                return _total_energy(member(lam), p)
        except (RuntimeError, ValueError, FloatingPointError):
            return math.inf  # unrepresentable on this grid

    return member, value


def _scan_and_golden(value, lo: float, hi: float, coarse: int = 25, iters: int = 48) -> float:
    """Minimize value(10^t) for t in [lo, hi]: coarse scan, then golden section."""
    ts = np.linspace(lo, hi, coarse)
    vals = [value(10.0 ** t) for t in ts]
    if not np.any(np.isfinite(vals)):
        return 1.0
    i = int(np.argmin(vals))
    a = ts[max(i - 1, 0)]
    b = ts[min(i + 1, coarse - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = value(10.0 ** c), value(10.0 ** d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = value(10.0 ** c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = value(10.0 ** d)
    t_best = c if fc < fd else d
    best = min([(vals[i], ts[i]), (fc, c), (fd, d)], key=lambda x: x[0])
    return 10.0 ** best[1]


def _initial_field(init, grid: RadialGrid, p: ModelParams, opts: SolveOptions) -> RadialField:
    if isinstance(init, RadialField):
        from .functionals import mass as _mass

        if _mass(init) <= 0.0:
            raise ValueError("initial field must have positive mass")
        return _project(np.asarray(init.values, dtype=float).copy(), init.grid, p.mass)
    name = "gaussian" if init is None else str(init)
    if name == "gaussian":
        return gaussian_field(grid, width=1.0, target_mass=p.mass)
    if name == "exp":
        return exponential_field(grid, rate=1.0, target_mass=p.mass)
    if name == "random":
        rng = np.random.default_rng(opts.seed)
        vals = np.zeros(grid.N + 1)
        for _ in range(3):
            w = rng.uniform(0.5, 3.0)
            a = rng.uniform(0.2, 1.0)
            vals += a * np.exp(-0.5 * (grid.r / w) ** 2)
        return _project(vals, grid, p.mass)
    raise ValueError(f"unknown initial profile {init!r}")


def _report(f: RadialField, p: ModelParams, status: SolveStatus, iterations: int,
            i_hat: float | None = None) -> MinimizerReport:
    bd = energy(f, p)
    if p.alpha <= 2.0 / 3.0 + _ALPHA_TOL:
        el, ell, _ = _el_residual(f, p)
        vir = virial_residual(f, p) if p.alpha < 2.0 / 3.0 - _ALPHA_TOL else float("nan")
    else:
        el, ell, vir = float("nan"), float("nan"), float("nan")
    if i_hat is None:
        i_hat = bd.total
    return MinimizerReport(
        field=f,
        breakdown=bd,
        I_hat=i_hat,
        ell=ell,
        virial_residual=vir,
        el_residual=el,
        status=status,
        iterations=iterations,
        grid=f.grid,
    )


def minimize(p: ModelParams, init=None, opts: SolveOptions | None = None,
             grid: RadialGrid | None = None, gn_constant: float | None = None) -> MinimizerReport:
    """Minimize the energy over the mass sphere within the radial class.

    ``init`` is a RadialField or a named profile ("gaussian", "exp",
    "random"); the default is a unit-width Gaussian scaled to the target
    mass.  Exponents above 2/3 (and exponent 2/3 with supercritical
    coupling) are reported UNBOUNDED without iterating, since the energy
    has no lower bound there.
    """
    opts = opts or SolveOptions()
    if grid is None:
        grid = make_grid(40.0, 4000) if not isinstance(init, RadialField) else init.grid
    if p.alpha <= _ALPHA_TOL:
        raise ValueError("minimize needs alpha in (0, 2); the flow is undefined at alpha = 0")

    f0 = _initial_field(init, grid, p, opts)
    if p.alpha > 2.0 / 3.0 + _ALPHA_TOL:
        return _report(f0, p, SolveStatus.UNBOUNDED, 0, i_hat=-math.inf)
    if abs(p.alpha - 2.0 / 3.0) <= _ALPHA_TOL:
        if gn_constant is None:
            from .constants import default_gn_estimate

            gn_constant = default_gn_estimate(2.0 / 3.0)
        if p.coupling * gn_constant * p.mass ** (2.0 / 3.0) >= 5.0 / 3.0:
            return _report(f0, p, SolveStatus.UNBOUNDED, 0, i_hat=-math.inf)

    f = f0
    e_cur = _total_energy(f, p)
    tau = opts.step0
    e_floor = -1.0 / opts.tol_el
    disperse_hits = 0
    stalled = False
    chain_event = False
    it = 0

    for it in range(1, opts.max_iter + 1):
        el_res, ell, rho = _el_residual(f, p)
        if el_res <= opts.tol_el:
            # guard against dilation saddles: accept only if the scaling
            # family cannot improve the energy any further
            member, value = _dilation_family(f, p)
            lam = _scan_and_golden(value, -6.0, 6.0)
            cand = member(lam)
            e_cand = _total_energy(cand, p)
            if e_cand < e_cur - 1e-8 * (1.0 + abs(e_cur)):
                f, e_cur = cand, e_cand
                tau = opts.step0
            else:
                return _report(f, p, SolveStatus.CONVERGED, it - 1)

        shift = max(1.0, abs(ell))
        direction = solve_shifted(rho, shift).values

        accepted = False
        t = tau
        for _ in range(60):
            try:
                trial = _project(f.values - t * direction, f.grid, p.mass)
                with np.errstate(over="ignore", invalid="ignore"):
                    e_trial = _total_energy(trial, p)
            except (RuntimeError, ValueError, FloatingPointError):
                t *= opts.backtrack
                continue
            if not math.isfinite(e_trial):
                t *= opts.backtrack
                continue
            if e_trial <= e_cur + _E_SLACK * (1.0 + abs(e_cur)):
                f, e_cur = trial, e_trial
                tau = min(t / opts.backtrack, 1.0)
                accepted = True
                break
            t *= opts.backtrack

        if e_cur < e_floor:
            return _report(f, p, SolveStatus.UNBOUNDED, it, i_hat=-math.inf)

        # periodic dilation search; paused in the endgame, where adopting
        # interpolated fields would inject noise above the residual scale
        # (the convergence gate above still vets the final state).  Once
        # the optimal dilation collapses below the floor the search chains
        # on consecutive iterations, so runaway spreading resolves quickly.
        endgame = accepted and el_res <= 100.0 * opts.tol_el
        run_scaling = ((it % opts.scaling_period == 0 and not endgame)
                       or not accepted or chain_event)
        if run_scaling:
            member, value = _dilation_family(f, p)
            lam = _scan_and_golden(value, -6.0, 6.0)
            cand = member(lam)
            e_cand = _total_energy(cand, p)
            if e_cand < e_floor:
                return _report(cand, p, SolveStatus.UNBOUNDED, it, i_hat=-math.inf)
            # adopt only above interpolation-noise level
            improved = e_cand < e_cur - 1e-10 * (1.0 + abs(e_cur))
            if improved:
                f, e_cur = cand, e_cand
            chain_event = lam < opts.disperse_scale_floor
            if chain_event and abs(e_cur) <= opts.tol_el:
                disperse_hits += 1
                if disperse_hits >= 2:
                    return _report(f, p, SolveStatus.DISPERSED, it, i_hat=0.0)
            elif not chain_event:
                disperse_hits = 0
            if not accepted and not improved:
                if stalled:
                    break
                stalled = True
            else:
                stalled = False

    el_res, _, _ = _el_residual(f, p)
    status = SolveStatus.CONVERGED if el_res <= opts.tol_el else SolveStatus.MAXITER
    return _report(f, p, status, it)


def critical_mass_identities(rep: MinimizerReport, p: ModelParams) -> CriticalMassIdentities:
    """Check the linear reconstruction of (K, D, power term) from (M, ell, I).

    The power-term relation is for the energy contribution
    C/(2a+2) * P, which is what the three stationarity identities force.
    """
    if abs(p.alpha - 0.5) <= 1e-9:
        raise ValueError("critical mass identities are undefined at alpha=1/2")
    if rep.status is not SolveStatus.CONVERGED:
        raise ValueError(f"need a converged minimizer, got status {rep.status.value}")
    alpha = p.alpha
    m = rep.breakdown.mass
    eps = m * rep.ell / (2.0 * alpha - 1.0)
    eta = rep.I_hat / (1.0 - 2.0 * alpha)

    def rel(lhs: float, rhs: float) -> float:
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    k_expr = 0.5 * (3.0 * alpha - 1.0) * eps - (5.0 * alpha - 1.0) * eta
    d_expr = (2.0 - 3.0 * alpha) * eps - 2.0 * (2.0 - alpha) * eta
    p_expr = 0.25 * eps - 1.5 * eta
    power_term = p.coupling / (2.0 * alpha + 2.0) * rep.breakdown.power_integral
    return CriticalMassIdentities(
        eps_M=eps,
        eta_M=eta,
        res_kinetic=rel(rep.breakdown.kinetic_integral, k_expr),
        res_coulomb=rel(rep.breakdown.coulomb, d_expr),
        res_power=rel(power_term, p_expr),
    )


def decay_check(rep: MinimizerReport) -> tuple[float, bool]:
    """Fit the tail decay rate and compare it with sqrt(ell).

    Least-squares slope of log phi over the window phi in [1e-10, 1e-4];
    ok when the fitted rate is within 10 percent of sqrt(ell).
    """
    if rep.status is not SolveStatus.CONVERGED:
        raise ValueError("decay check needs a converged minimizer")
    if rep.ell <= 0.0:
        raise ValueError("decay check needs a positive multiplier")
    v = rep.field.values
    r = rep.grid.r
    mask = (v >= 1e-10) & (v <= 1e-4)
    if int(mask.sum()) < 8:
        raise ValueError("decay window empty: increase R")
    slope = np.polyfit(r[mask], np.log(v[mask]), 1)[0]
    delta = abs(float(slope))
    root = math.sqrt(rep.ell)
    return delta, abs(delta - root) <= 0.1 * root
