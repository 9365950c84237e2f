"""Radial (K-bi-invariant) test functions: presets and sampled grids.

A radial function is an even function of the polar coordinate t; evaluation
takes |t| so the even extension is automatic.  Three specs:

    bump(center, width)   smooth, compactly supported on |t - c| < w,
                          value 1 at the center:
                          exp(1 - 1 / (1 - ((|t|-c)/w)^2))
    gauss(scale)          exp(-t^2 / scale^2)
    sampled(grid)         natural cubic spline through (t_i, v_i), zero
                          outside the grid range
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline


class RadialFunction:
    """Even function of t >= 0 with analytic first and second derivatives."""

    def __init__(self, kind: str, **params):
        if kind == "bump":
            self.center = float(params.pop("center"))
            self.width = float(params.pop("width"))
            if self.width <= 0:
                raise ValueError("bump width must be positive")
            if self.center - self.width < 0:
                raise ValueError("bump support must stay inside t >= 0")
        elif kind == "gauss":
            self.scale = float(params.pop("scale"))
            if self.scale <= 0:
                raise ValueError("gauss scale must be positive")
        elif kind == "sampled":
            grid = np.asarray(params.pop("grid"), dtype=float)
            values = np.asarray(params.pop("values"))
            if grid.ndim != 1 or grid.shape != values.shape:
                raise ValueError("sampled spec needs matching 1-d grid and values")
            if not np.all(np.diff(grid) > 0):
                raise ValueError("sampled grid must be strictly increasing")
            self.grid = grid
            self.values = values
            self._spline = CubicSpline(grid, values, bc_type="natural")
        else:
            raise ValueError(f"unknown radial function kind {kind!r}")
        if params:
            raise ValueError(f"unexpected parameters {sorted(params)}")
        self.kind = kind

    @classmethod
    def bump(cls, center: float, width: float) -> "RadialFunction":
        return cls("bump", center=center, width=width)

    @classmethod
    def gauss(cls, scale: float) -> "RadialFunction":
        return cls("gauss", scale=scale)

    @classmethod
    def sampled(cls, grid, values) -> "RadialFunction":
        return cls("sampled", grid=grid, values=values)

    # -- evaluation ---------------------------------------------------

    def __call__(self, t):
        return self.derivative(t, 0)

    def derivative(self, t, order: int = 1):
        if order not in (0, 1, 2):
            raise ValueError("derivative order must be 0, 1 or 2")
        t_in = np.asarray(t, dtype=float)
        sgn = np.sign(t_in)
        t_abs = np.abs(t_in)
        if self.kind == "bump":
            out = self._bump_deriv(t_abs, order)
        elif self.kind == "gauss":
            out = self._gauss_deriv(t_abs, order)
        else:
            out = self._sampled_deriv(t_abs, order)
        if order == 1:
            out = out * np.where(sgn == 0, 1.0, sgn)
        return out[()] if out.ndim == 0 else out

    def _bump_deriv(self, t, order):
        x = (t - self.center) / self.width
        out = np.zeros(np.shape(x), dtype=float)
        inside = np.abs(x) < 1.0
        xi = x[inside]
        g = 1.0 - xi * xi
        val = np.exp(1.0 - 1.0 / g)
        if order == 0:
            out[inside] = val
        elif order == 1:
            out[inside] = val * (-2.0 * xi / g ** 2) / self.width
        else:
            out[inside] = val * ((4.0 * xi * xi / g ** 4)
                                 - (2.0 / g ** 2)
                                 - (8.0 * xi * xi / g ** 3)) / self.width ** 2
        return out

    def _gauss_deriv(self, t, order):
        s2 = self.scale ** 2
        val = np.exp(-t * t / s2)
        if order == 0:
            return val
        if order == 1:
            return val * (-2.0 * t / s2)
        return val * (4.0 * t * t / s2 ** 2 - 2.0 / s2)

    def _sampled_deriv(self, t, order):
        out = np.asarray(self._spline(t, nu=order))
        lo, hi = self.grid[0], self.grid[-1]
        mask = (t < lo - 1e-12) | (t > hi + 1e-12)
        if np.any(mask):
            out = np.where(mask, 0.0, out)
        return out

    # -- support hints used by quadrature ------------------------------

    def support_radius(self, tiny: float = 1e-18) -> float:
        """t beyond which the function is below `tiny` (exact for bumps)."""
        if self.kind == "bump":
            return self.center + self.width
        if self.kind == "gauss":
            return self.scale * float(np.sqrt(-np.log(tiny))) + 0.5
        return float(self.grid[-1])

    def is_compact(self) -> bool:
        return self.kind in ("bump", "sampled")

    def __repr__(self):
        if self.kind == "bump":
            return f"RadialFunction.bump({self.center}, {self.width})"
        if self.kind == "gauss":
            return f"RadialFunction.gauss({self.scale})"
        return f"RadialFunction.sampled(<{len(self.grid)} nodes>)"


def read_radial_csv(path) -> RadialFunction:
    """Load a sampled radial function from CSV rows `t,value`."""
    rows = np.genfromtxt(path, delimiter=",", skip_header=_has_header(path))
    if rows.ndim != 2 or rows.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns t,value")
    return RadialFunction.sampled(rows[:, 0], rows[:, 1])


def write_radial_csv(path, grid, values):
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for t, v in zip(grid, values):
            fh.write(f"{t:.17g},{float(np.real(v)):.17g}\n")


def _has_header(path) -> int:
    with open(path) as fh:
        first = fh.readline()
    try:
        float(first.split(",")[0])
        return 0
    except ValueError:
        return 1
