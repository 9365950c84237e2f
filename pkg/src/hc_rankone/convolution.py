"""Convolutions on SL(2,R), K-type projections, and spherical eigenpackets.

The convolution of two radial functions reduces, by bi-invariance and the
polar decomposition of the integration variable, to

    (f * g)(a_t) = int_0^inf f(s) J(s)
                   [ (1/2pi) int_0^{2pi} g(rad(a_s k_theta a_t)) dtheta ] ds,

which serves as the transform-independent ground truth for the
multiplicativity of the spherical transform.

Functions that are not bi-invariant enter as samples on the polar
coordinates (theta1, t, theta2) of K x cl(A+) x K.  Convolution against a
compact-group character e^{-in theta} on either side extracts the n-th
Fourier mode in that angle; the trivial mode on both sides is the
bi-invariant projection (sphericalization).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import RadialFunction
from .group import RankOneGroup, SL2R, jacobian, radial_part_cartan_product
from .quadrature import gauss_legendre_panels, periodic_trapezoid_nodes
from .spherical import phi
from .transforms import SpectralFunction, spherical_transform_polar

THETA_NODES = 64
T_GRID_STEP = 0.05
T_GRID_MAX = 8.0


@dataclass(frozen=True)
class KTypeIndex:
    """Character index of the rotation group; the trivial type is n = 0.

    Every type is one-dimensional, with character k_theta -> e^{i n theta},
    so the projection idempotent is xi_n(k_theta) = e^{-i n theta}.
    """

    n: int

    def character(self, theta):
        return np.exp(-1j * self.n * np.asarray(theta, dtype=float))


class PolarSamples:
    """Function on the group sampled on uniform polar coordinates.

    values[i, j, l] = f(k_{theta1[i]} a_{t[j]} k_{theta2[l]}); both angle
    grids are uniform on [0, 2pi).
    """

    def __init__(self, theta1, t, theta2, values):
        self.theta1 = np.asarray(theta1, dtype=float)
        self.t = np.asarray(t, dtype=float)
        self.theta2 = np.asarray(theta2, dtype=float)
        self.values = np.asarray(values)
        expect = (len(self.theta1), len(self.t), len(self.theta2))
        if self.values.shape != expect:
            raise ValueError(f"values shape {self.values.shape} != {expect}")

    @classmethod
    def default_grid(cls, n_theta: int = THETA_NODES, t_max: float = T_GRID_MAX,
                     t_step: float = T_GRID_STEP):
        theta = periodic_trapezoid_nodes(n_theta)
        t = np.arange(0.0, t_max + 1e-12, t_step)
        return theta, t, theta.copy()

    @classmethod
    def from_function(cls, fn, n_theta: int = THETA_NODES,
                      t_max: float = T_GRID_MAX, t_step: float = T_GRID_STEP):
        """Sample fn(theta1, t, theta2) over the default grid (broadcasting)."""
        theta1, t, theta2 = cls.default_grid(n_theta, t_max, t_step)
        vals = fn(theta1[:, None, None], t[None, :, None], theta2[None, None, :])
        vals = np.broadcast_to(vals, (len(theta1), len(t), len(theta2))).copy()
        return cls(theta1, t, theta2, vals)

    def to_csv(self, path):
        vals = np.real(self.values)
        with open(path, "w") as fh:
            fh.write("theta1,t,theta2,value\n")
            for i, a in enumerate(self.theta1):
                for j, tt in enumerate(self.t):
                    for l, b in enumerate(self.theta2):
                        fh.write(f"{a:.17g},{tt:.17g},{b:.17g},{vals[i, j, l]:.17g}\n")

    def to_csv_left(self, path):
        """Two-angle-collapsed variant theta1,t,value for left-only sampling."""
        vals = np.real(self.values[:, :, 0])
        with open(path, "w") as fh:
            fh.write("theta1,t,value\n")
            for i, a in enumerate(self.theta1):
                for j, tt in enumerate(self.t):
                    fh.write(f"{a:.17g},{tt:.17g},{vals[i, j]:.17g}\n")

    @classmethod
    def from_csv(cls, path) -> "PolarSamples":
        with open(path) as fh:
            header = fh.readline().strip().split(",")
        rows = np.genfromtxt(path, delimiter=",", skip_header=1)
        rows = np.atleast_2d(rows)
        if header == ["theta1", "t", "theta2", "value"]:
            a = np.unique(rows[:, 0])
            t = np.unique(rows[:, 1])
            b = np.unique(rows[:, 2])
            if len(a) * len(t) * len(b) != rows.shape[0]:
                raise ValueError(f"{path}: polar grid is not a full product")
            vals = np.empty((len(a), len(t), len(b)))
            ia = np.searchsorted(a, rows[:, 0])
            it = np.searchsorted(t, rows[:, 1])
            ib = np.searchsorted(b, rows[:, 2])
            vals[ia, it, ib] = rows[:, 3]
            return cls(a, t, b, vals)
        if header == ["theta1", "t", "value"]:
            a = np.unique(rows[:, 0])
            t = np.unique(rows[:, 1])
            if len(a) * len(t) != rows.shape[0]:
                raise ValueError(f"{path}: polar grid is not a full product")
            vals = np.empty((len(a), len(t), 1))
            ia = np.searchsorted(a, rows[:, 0])
            it = np.searchsorted(t, rows[:, 1])
            vals[ia, it, 0] = rows[:, 2]
            return cls(a, t, np.array([0.0]), vals)
        raise ValueError(f"{path}: unrecognized polar-sample header {header}")


# ---------------------------------------------------------------------------
# radial convolution


def convolve_oracle(f: RadialFunction, g: RadialFunction, t,
                    group: RankOneGroup = SL2R, n_theta: int = 512):
    """(f * g)(a_t) by direct two-variable quadrature; t may be an array.

    The s-integral runs over the support of f, the compact average over a
    periodic trapezoid grid.  Compactly supported factors are nearly flat
    over parts of the circle, which slows the trapezoid rule's spectral
    convergence; 512 nodes keep the quadrature error near 1e-7.
    """
    group.require_sl2r()
    ss, ws = gauss_legendre_panels(0.0, f.support_radius())
    theta = periodic_trapezoid_nodes(n_theta)
    fw = f(ss) * jacobian(group, ss) * ws
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape, dtype=float)
    for j, tv in enumerate(t_arr):
        rad = radial_part_cartan_product(ss[:, None], theta[None, :], tv)
        out[j] = float(np.real(fw @ g(rad).mean(axis=1)))
    return out[0] if np.ndim(t) == 0 else out


def convolve_sampled(f: RadialFunction, g: RadialFunction,
                     group: RankOneGroup = SL2R,
                     step: float = 0.02) -> RadialFunction:
    """(f * g) tabulated on a uniform grid covering its support."""
    hi = f.support_radius() + g.support_radius()
    ts = np.arange(0.0, hi + step, step)
    return RadialFunction.sampled(ts, convolve_oracle(f, g, ts, group))


def convolve_spectral(f: RadialFunction, g: RadialFunction, lam_grid,
                      group: RankOneGroup = SL2R) -> SpectralFunction:
    """Pointwise product Hf * Hg on a real spectral grid."""
    lam_grid = np.asarray(lam_grid, dtype=float)
    hf = spherical_transform_polar(group, f, lam_grid)
    hg = spherical_transform_polar(group, g, lam_grid)
    return SpectralFunction(lam_grid, np.array([0.0]), (hf * hg)[None, :])


# ---------------------------------------------------------------------------
# K-type projections


def sphericalize(samples: PolarSamples) -> RadialFunction:
    """Bi-invariant projection f^#: the mean over both compact angles."""
    profile = samples.values.mean(axis=(0, 2))
    return RadialFunction.sampled(samples.t, profile)


def ktype_project(samples: PolarSamples, n, side: str) -> PolarSamples:
    """Convolution against the character e^{-in theta} in one Euler angle:
    keeps exactly the n-th Fourier mode of that angle."""
    if isinstance(n, KTypeIndex):
        n = n.n
    axis_grid = {"left": samples.theta1, "right": samples.theta2}.get(side)
    if axis_grid is None:
        raise ValueError("side must be 'left' or 'right'")
    axis = 0 if side == "left" else 2
    vals = np.asarray(samples.values, dtype=complex)
    nn = len(axis_grid)
    mode = np.exp(1j * n * axis_grid) / nn
    coeff = np.tensordot(mode, vals, axes=([0], [axis]))
    carrier = np.exp(-1j * n * axis_grid)
    if side == "left":
        out = carrier[:, None, None] * coeff[None, :, :]
    else:
        out = carrier[None, None, :] * coeff[:, :, None]
    return PolarSamples(samples.theta1, samples.t, samples.theta2, out)


# ---------------------------------------------------------------------------
# spherical eigenpackets


def spherical_convolution_g(f: RadialFunction, lam, t,
                            group: RankOneGroup = SL2R, n_theta: int = 128):
    """(f * phi_lambda)(a_t): convolution of a compactly supported radial
    function against the spherical function; t may be an array.

    Pointwise this is Hf(lambda) * phi_lambda(t) by the eigenfunction
    property; here it is computed by quadrature so that identity can be
    tested rather than assumed.  The compact average of this analytic
    integrand converges spectrally, so 128 angle nodes already reach
    rounding level; the t-grid is processed in blocks to keep the
    spherical-function evaluation in large vectorized batches.
    """
    group.require_sl2r()
    if not f.is_compact():
        raise ValueError("the convolving function must be compactly supported")
    lam = complex(lam)
    ss, ws = gauss_legendre_panels(0.0, f.support_radius())
    theta = periodic_trapezoid_nodes(n_theta)
    fw = f(ss) * jacobian(group, ss) * ws
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape, dtype=complex)
    block = max(1, (1 << 21) // (len(ss) * n_theta))
    for lo in range(0, t_arr.size, block):
        tv = t_arr[lo:lo + block]
        rad = radial_part_cartan_product(ss[None, :, None],
                                         theta[None, None, :],
                                         tv[:, None, None])
        ph = phi(group, lam, rad.reshape(-1)).reshape(rad.shape)
        out[lo:lo + block] = ph.mean(axis=2) @ fw
    return out[0] if np.ndim(t) == 0 else out
