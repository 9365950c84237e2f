"""Gauss hypergeometric function on the negative real axis.

The spherical functions of a rank-one group reduce to 2F1 evaluated at
z = -sinh(t)^2, so the whole engine rests on evaluating

    F(a,b;c;z) = sum_k (a)_k (b)_k / (c)_k * z^k / k!

for complex a, b (real c) on z <= 0.  Three evaluation paths cover the axis:

  * |z| <= 0.5          direct series summation;
  * -8 < z < -0.5       Pfaff transformation w = z/(z-1), which maps
                        z <= 0 into [0,1), followed by the series;
  * z <= -8             the 1/z connection formula (DLMF 15.8.2),
                        whose two inner series converge in a few terms.

The connection formula degenerates when a-b is an integer (Gamma poles).
F is symmetric under a <-> b, hence even in u = a-b at fixed a+b, so a
near-integer u is nudged off the integer by 1e-6 along the real axis; for
u near 0 the evenness makes the nudge error O(1e-12 * t^2), measured below
3e-10 over t <= 40.  Exact logarithmic cases are outside the supported
domain (callers needing lambda = 0 get the nudged value).

All entry points broadcast over numpy arrays in any argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

MAX_TERMS = 10000
SERIES_RTOL = 1e-16

# |z| bound for the direct series and the switch point to the 1/z formula;
# the Pfaff and 1/z inner series need comparable term counts at |z| equal
# to the golden ratio, so -2 leaves margin on both sides.  Near-integer
# a-b stays on the Pfaff path down to -8 where the nudged connection
# formula's Gamma cancellation is mild.
DIRECT_ZMAX = 0.5
ONZ_ZMIN = -2.0
ONZ_ZMIN_RESONANT = -8.0
RESONANCE_REROUTE = 1e-3

# distance from a-b to the nearest integer below which the connection
# formula is evaluated at a nudged parameter
RESONANCE_EPS = 1e-6


class HypergeomConvergenceError(ArithmeticError):
    """Series failed to meet the term tolerance within MAX_TERMS."""


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), empty product = 1."""
    if k < 0 or k != int(k):
        raise ValueError("pochhammer order k must be a nonnegative integer")
    a = np.asarray(a, dtype=complex)
    out = np.ones_like(a)
    for j in range(int(k)):
        out = out * (a + j)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class HypergeomParams:
    """Parameter bundle (a, b; c; z) with the validity checks callers rely on."""

    a: complex
    b: complex
    c: complex
    z: float

    def __post_init__(self):
        c = complex(self.c)
        if abs(c.imag) < 1e-14 and c.real <= 0 and abs(c.real - round(c.real)) < 1e-12:
            raise ValueError("c must not be zero or a negative integer")
        if not np.isfinite(self.z):
            raise ValueError("z must be finite")

    def evaluate(self):
        return gauss_2f1(self.a, self.b, self.c, self.z)


def _series(a, b, c, z):
    """Direct summation of the defining series.

    With scalar (a, b, c) the per-term work is three in-place array passes;
    the convergence check runs every eighth term to keep reductions off the
    inner loop (a handful of surplus cheap terms at worst).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    z = np.asarray(z, dtype=complex)
    shape = np.broadcast_shapes(a.shape, b.shape, c.shape, z.shape)
    total = np.ones(shape, dtype=complex)
    if a.ndim == 0 and b.ndim == 0 and c.ndim == 0:
        av, bv, cv = complex(a), complex(b), complex(c)
        term = np.ones(shape, dtype=complex)
        zb = np.broadcast_to(z, shape)
        for k in range(MAX_TERMS):
            term *= (av + k) * (bv + k) / ((cv + k) * (k + 1.0))
            term *= zb
            total += term
            if k % 8 == 7 or k < 2:
                if np.max(np.abs(term)) <= SERIES_RTOL * max(
                        np.max(np.abs(total)), 1e-300):
                    return total
        raise HypergeomConvergenceError(
            f"2F1 series did not converge within {MAX_TERMS} terms "
            f"(max |z| on this path: {np.max(np.abs(z)):.3g})")
    a, b, c, z = (np.broadcast_to(v, shape) for v in (a, b, c, z))
    term = np.ones(shape, dtype=complex)
    for k in range(MAX_TERMS):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0)) * z)
        total = total + term
        if np.max(np.abs(term)) <= SERIES_RTOL * max(np.max(np.abs(total)), 1e-300):
            return total
    raise HypergeomConvergenceError(
        f"2F1 series did not converge within {MAX_TERMS} terms "
        f"(max |z| on this path: {np.max(np.abs(z)):.3g})")


def _pfaff(a, b, c, z):
    """F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)) for real z < 0."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    log1z = np.log((1.0 - z).real)
    return np.exp(-a * log1z) * _series(a, np.asarray(c) - b, c, z / (z - 1.0))


def _connection_1z(a, b, c, z):
    """Analytic continuation to large negative z via the 1/z formula.

    Near-integer a-b is nudged off the Gamma poles keeping a+b fixed.
    Scalar parameters keep the Gamma coefficients scalar and replace the
    complex powers (-z)^(-a) by exp(-a log(-z)) with one real log.
    """
    a = np.asarray(a, dtype=complex).copy()
    b = np.asarray(b, dtype=complex).copy()
    c = np.asarray(c, dtype=complex)
    z = np.asarray(z, dtype=complex)
    u = a - b
    n = np.round(u.real)
    near = (np.abs(u.imag) < RESONANCE_EPS) & (np.abs(u.real - n) < RESONANCE_EPS)
    if near.any():
        if near.ndim == 0:
            h = max(abs(float(u.real) - float(n)), RESONANCE_EPS)
            shift = (float(n) + (h if u.real - n >= 0 else -h)) - complex(u)
            a = a + shift / 2
            b = b - shift / 2
        else:
            un, nn = u[near], n[near]
            h = np.maximum(np.abs(un.real - nn), RESONANCE_EPS)
            shift = (nn + np.where(un.real - nn < 0, -h, h)) - un
            a[near] += shift / 2
            b[near] -= shift / 2
        u = a - b
    lg = loggamma
    # a gamma pole in a denominator kills that branch (e.g. a = 0 when the
    # spectral parameter sits at +/- i*rho, where phi is identically 1)
    coef_a = np.where(_nonpos_int(b) | _nonpos_int(c - a), 0.0,
                      np.exp(lg(c) + lg(-u) - lg(_off_pole(b)) - lg(_off_pole(c - a))))
    coef_b = np.where(_nonpos_int(a) | _nonpos_int(c - b), 0.0,
                      np.exp(lg(c) + lg(u) - lg(_off_pole(a)) - lg(_off_pole(c - b))))
    fa = _series(a, a - c + 1.0, 1.0 + u, 1.0 / z)
    fb = _series(b, b - c + 1.0, 1.0 - u, 1.0 / z)
    log_mz = np.log(np.maximum(-z.real, 1e-300))
    pow_a = np.exp(-a * log_mz)
    pow_b = np.exp(-b * log_mz)
    return coef_a * pow_a * fa + coef_b * pow_b * fb


def _nonpos_int(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return ((np.abs(v.imag) < 1e-12) & (v.real < 0.5)
            & (np.abs(v.real - np.round(v.real)) < 1e-12))


def _off_pole(v):
    """Replace exact gamma poles by a harmless value; callers zero the result."""
    v = np.asarray(v, dtype=complex)
    return np.where(_nonpos_int(v), 1.0, v)


def gauss_2f1(a, b, c, z):
    """F(a,b;c;z) for z <= 0 (complex a, b allowed), broadcasting over arrays.

    The (a, b) pair is put in a canonical order first, so the symmetry
    F(a,b;c;z) = F(b,a;c;z) holds exactly in floating point.  Scalar
    parameters with an array argument (the spherical-function hot path)
    avoid expanding the parameters to the argument's shape.
    """
    a, b, c, z = (np.asarray(v, dtype=complex) for v in (a, b, c, z))
    swap = (a.real > b.real) | ((a.real == b.real) & (a.imag > b.imag))
    a, b = np.where(swap, b, a), np.where(swap, a, b)

    if a.ndim == 0 and b.ndim == 0 and c.ndim == 0:
        scalar = z.ndim == 0
        zz = np.atleast_1d(z)
        out = np.empty(zz.shape, dtype=complex)
        far_edge = ONZ_ZMIN_RESONANT if _near_resonant(a - b) else ONZ_ZMIN
        direct = np.abs(zz) <= DIRECT_ZMAX
        pfaff = (~direct) & (zz.real > far_edge)
        far = ~(direct | pfaff)
        if direct.any():
            out[direct] = _series(a, b, c, zz[direct])
        if pfaff.any():
            out[pfaff] = _pfaff(a, b, c, zz[pfaff])
        if far.any():
            out[far] = _connection_1z(a, b, c, zz[far])
        return out[0] if scalar else out

    a, b, c, z = np.broadcast_arrays(a, b, c, z)
    scalar = z.ndim == 0
    a, b, c, z = (np.atleast_1d(v) for v in (a, b, c, z))
    out = np.empty(z.shape, dtype=complex)
    far_edge = np.where(_near_resonant(a - b), ONZ_ZMIN_RESONANT, ONZ_ZMIN)
    direct = np.abs(z) <= DIRECT_ZMAX
    pfaff = (~direct) & (z.real > far_edge)
    far = ~(direct | pfaff)
    if direct.any():
        out[direct] = _series(a[direct], b[direct], c[direct], z[direct])
    if pfaff.any():
        out[pfaff] = _pfaff(a[pfaff], b[pfaff], c[pfaff], z[pfaff])
    if far.any():
        out[far] = _connection_1z(a[far], b[far], c[far], z[far])
    return out[0] if scalar else out


def _near_resonant(u):
    """True where a-b sits close enough to an integer that the connection
    formula's Gamma cancellation starts to cost digits."""
    u = np.asarray(u, dtype=complex)
    return ((np.abs(u.imag) < RESONANCE_REROUTE)
            & (np.abs(u.real - np.round(u.real)) < RESONANCE_REROUTE))


def gauss_2f1_dz(a, b, c, z):
    """d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    return a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z)
