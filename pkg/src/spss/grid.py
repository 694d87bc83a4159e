"""Uniform radial grids and quadrature for radially symmetric fields on a ball.

Radial profiles live on [0, R] with nodes r_i = i*h, h = R/N.  Volume
integrals use the rotation invariance of the integrand,

    integral over 3-space of f = 4*pi * integral_0^R f(r) r^2 dr,

evaluated with composite Simpson weights (fourth order).  Fields are
immutable; every operation returns a new object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

FOUR_PI = 4.0 * math.pi


def _simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights on n intervals (n+1 nodes).

    If n is odd, Simpson covers the first n-1 intervals and the last cell
    falls back to the trapezoid rule.
    """
    w = np.zeros(n + 1)
    m = n if n % 2 == 0 else n - 1
    w[0:m + 1:2] += 2.0 * h / 3.0
    w[1:m:2] += 4.0 * h / 3.0
    w[0] -= h / 3.0
    w[m] -= h / 3.0
    if m != n:
        w[-2] += 0.5 * h
        w[-1] += 0.5 * h
    return w


@dataclass(frozen=True)
class RadialGrid:
    """Uniform mesh on [0, R] with N intervals and quadrature weights."""

    R: float
    N: int
    r: np.ndarray = field(repr=False, compare=False)
    weights: np.ndarray = field(repr=False, compare=False)

    @property
    def h(self) -> float:
        return self.R / self.N

    def __eq__(self, other) -> bool:
        return isinstance(other, RadialGrid) and self.R == other.R and self.N == other.N

    def __hash__(self) -> int:
        return hash((self.R, self.N))


def make_grid(R: float, N: int) -> RadialGrid:
    """Build the uniform radial grid on [0, R] with N intervals."""
    if not (isinstance(R, (int, float)) and math.isfinite(R)) or R <= 0:
        raise ValueError(f"invalid radius: R={R!r}")
    if not isinstance(N, (int, np.integer)) or N < 16:
        raise ValueError(f"invalid interval count: N={N!r} (need integer N >= 16)")
    N = int(N)
    R = float(R)
    h = R / N
    r = h * np.arange(N + 1)
    r.flags.writeable = False
    w = _simpson_weights(N, h)
    w.flags.writeable = False
    return RadialGrid(R=R, N=N, r=r, weights=w)


@dataclass(frozen=True)
class RadialField:
    """Samples of a real radial function on a RadialGrid."""

    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.N + 1,):
            raise ValueError(
                f"field has {v.shape} values for a grid with {self.grid.N + 1} nodes"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        if v is not self.values or v.flags.writeable:
            v = v.copy()
            v.flags.writeable = False
            object.__setattr__(self, "values", v)


def field_from_callable(grid: RadialGrid, fn) -> RadialField:
    """Sample ``fn`` on the grid nodes."""
    return RadialField(grid, np.asarray(fn(grid.r), dtype=float))


def integrate_volume(f: RadialField) -> float:
    """Volume integral of a radial function: 4*pi * int f(r) r^2 dr."""
    g = f.grid
    return FOUR_PI * float(np.dot(g.weights, f.values * g.r * g.r))


def integrate_radial(f: RadialField) -> float:
    """Plain line integral int_0^R f(r) dr with the grid's Simpson weights."""
    return float(np.dot(f.grid.weights, f.values))


def resample(f: RadialField, g: RadialGrid) -> RadialField:
    """Cubic interpolation of ``f`` onto the nodes of ``g``.

    Values beyond the support of ``f`` are set to zero; widening the domain
    is only allowed when ``f`` has decayed at its own boundary.
    """
    src = f.grid
    if g == src:
        return RadialField(g, f.values)
    scale = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    if g.R > src.R and abs(f.values[-1]) > 1e-12 * max(1.0, scale):
        raise ValueError(
            "non-decayed boundary: cannot resample onto a larger radius "
            f"(|f(R)|={abs(f.values[-1]):.3e})"
        )
    spline = CubicSpline(src.r, f.values)
    inside = g.r <= src.R
    out = np.zeros(g.N + 1)
    out[inside] = spline(g.r[inside])
    return RadialField(g, out)


def derivative(f: RadialField) -> np.ndarray:
    """First derivative of the samples, fourth order in the interior."""
    v = f.values
    h = f.grid.h
    n = f.grid.N
    d = np.empty_like(v)
    if n >= 4:
        d[2:-2] = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    d[1] = (v[2] - v[0]) / (2.0 * h)
    d[-2] = (v[-1] - v[-3]) / (2.0 * h)
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    d[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    return d


def save_field_csv(f: RadialField, path) -> None:
    """Write a field in the CSV exchange format (17 significant digits)."""
    g = f.grid
    lines = [f"# R={g.R:.17g} N={g.N}"]
    for r, v in zip(g.r, f.values):
        lines.append(f"{r:.17g},{v:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_field_csv(path) -> RadialField:
    """Read a field written by :func:`save_field_csv`."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError(f"missing field header line in {path}")
        parts = dict(tok.split("=") for tok in header[1:].split())
        R = float(parts["R"])
        N = int(parts["N"])
        data = np.loadtxt(fh, delimiter=",")
    if data.shape != (N + 1, 2):
        raise ValueError(f"field file {path} has {data.shape[0]} rows, expected {N + 1}")
    grid = make_grid(R, N)
    return RadialField(grid, data[:, 1])
