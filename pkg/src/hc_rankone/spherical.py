"""Spherical functions, the radial Casimir operator, Harish-Chandra series,
and c-function extraction.

Spectral convention
-------------------
The package stores the spectral parameter lambda in the unitary convention:
the tempered spectrum is the real axis and the Casimir eigenvalue is
-(lambda^2 + rho^2).  The exponent variable of the Harish-Chandra series
and of the Frobenius recursion is s = i*lambda, so that

    phi_lambda(a_t) ~ c(lambda) e^{(s - rho) t} + c(-lambda) e^{(-s - rho) t}

as t -> infinity.  Functions taking `s` say so explicitly; everything else
takes lambda.

Evaluation
----------
phi reduces to the Gauss hypergeometric function,

    phi_lambda(a_t) = F((rho + i lambda)/2, (rho - i lambda)/2;
                        (p + q + 1)/2; -sinh(t)^2),

which the hypergeom module continues over all t >= 0.  The alternating
series loses roughly exp(|Re lambda| * sinh t) in precision for mid-range
t, so for groups with q = 0 and large |Re lambda| the evaluation switches
to the compact-group integral

    phi_lambda(a_t) = N_p int_0^pi (cosh t + sinh t cos u)^{i lambda - rho}
                                    sin(u)^{p-1} du,

which is oscillatory but cancellation-free.  For q > 0 the series paths
are used throughout; their full-precision envelope is
|Re lambda| * sinh(min(t, 1.77)) <~ 15, ample for the moderate spectral
parameters those groups are exercised at.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import RankOneGroup, radial_part_cartan_product
from .hypergeom import gauss_2f1
from .quadrature import periodic_trapezoid_nodes

# past this t the 1/z series is cancellation-free for every relevant
# spectral parameter (arcsinh(sqrt(8))); below it, large |Re lambda| is
# rerouted to the compact integral
_SERIES_T_EDGE = 1.7627471740390872
# cancellation exponent beyond which the compact-integral path takes over
_KINT_THRESHOLD = 15.0
_KINT_NODES = 1024

_FIT_POINTS = (4.0, 8.0)
_FIT_KMAX = 24
_COND_LIMIT = 1e8


class ResonanceError(ArithmeticError):
    """Spectral parameter lies in the exceptional set of the series."""


def _hyp_params(group: RankOneGroup, lam):
    lam = np.asarray(lam, dtype=complex)
    a = (group.rho + 1j * lam) / 2.0
    b = (group.rho - 1j * lam) / 2.0
    c = (group.p + group.q + 1) / 2.0
    return a, b, c


def _kint_mask(group: RankOneGroup, lam, t):
    if group.q != 0:
        return np.zeros(np.broadcast_shapes(lam.shape, t.shape), dtype=bool)
    lam_b, t_b = np.broadcast_arrays(lam, t)
    return ((t_b < _SERIES_T_EDGE)
            & (np.abs(lam_b.real) * np.sinh(np.minimum(t_b, _SERIES_T_EDGE))
               > _KINT_THRESHOLD))


def _kint_weights(p: int, n: int = _KINT_NODES):
    x, w = np.polynomial.legendre.leggauss(n)
    u = 0.5 * np.pi * (x + 1.0)
    w = 0.5 * np.pi * w
    sw = np.sin(u) ** (p - 1) * w
    return u, sw / sw.sum()


def _phi_kint(group: RankOneGroup, lam, t, order: int = 0, chunk: int = 512):
    """Compact-integral evaluation of phi (and d/dt, d2/dt2) for q = 0.

    base**e is factored through exp(e * log(base)); the real log is shared
    across derivative orders and cheaper than complex powers.
    """
    u, sw = _kint_weights(group.p)
    cu = np.cos(u)
    lam = np.atleast_1d(lam)
    t = np.atleast_1d(t)
    ex = 1j * lam - group.rho
    out = np.empty(lam.shape, dtype=complex)
    for lo in range(0, lam.size, chunk):
        sl = slice(lo, min(lo + chunk, lam.size))
        base = np.cosh(t[sl])[:, None] + np.sinh(t[sl])[:, None] * cu[None, :]
        logb = np.log(base)
        e = ex[sl][:, None]
        if order == 0:
            vals = np.exp(e * logb)
        else:
            bt = np.sinh(t[sl])[:, None] + np.cosh(t[sl])[:, None] * cu[None, :]
            if order == 1:
                vals = e * np.exp((e - 1.0) * logb) * bt
            else:
                # second t-derivative of base equals base itself
                vals = (e * (e - 1.0) * np.exp((e - 2.0) * logb) * bt * bt
                        + e * np.exp(e * logb))
        out[sl] = vals @ sw
    return out


def phi(group: RankOneGroup, lam, t):
    """Spherical function phi_lambda(a_t); broadcasts over lam and t.

    phi(., ., 0) = 1 and phi is even in lambda exactly (the hypergeometric
    parameter pair is symmetric under lambda -> -lambda).
    """
    return _phi_eval(group, lam, t, order=0)


def phi_derivative(group: RankOneGroup, lam, t, order: int = 1):
    """d^order/dt^order of phi_lambda(a_t) for order in {1, 2}, in closed form
    through the contiguous relation F' = (ab/c) F(a+1,b+1;c+1;.)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    return _phi_eval(group, lam, t, order=order)


def _phi_eval(group: RankOneGroup, lam, t, order: int):
    lam = np.asarray(lam, dtype=complex)
    t = np.asarray(t, dtype=float)
    if lam.ndim == 0:
        # scalar spectral parameter: keep the hypergeometric parameters
        # scalar so the series kernels run their fast path
        scalar = t.ndim == 0
        t_b = np.atleast_1d(t)
        out = np.empty(t_b.shape, dtype=complex)
        kzone = _kint_mask(group, np.broadcast_to(lam, t_b.shape), t_b)
        if kzone.any():
            lam_k = np.broadcast_to(lam, t_b.shape)[kzone]
            out[kzone] = _phi_kint(group, lam_k, t_b[kzone], order)
        rest = ~kzone
        if rest.any():
            out[rest] = _phi_series(group, lam, t_b[rest], order)
        return out[0] if scalar else out

    lam_b, t_b = np.broadcast_arrays(lam, t)
    lam_b = np.atleast_1d(lam_b)
    t_b = np.atleast_1d(t_b)
    out = np.empty(lam_b.shape, dtype=complex)
    kzone = _kint_mask(group, lam_b, t_b)
    if kzone.any():
        out[kzone] = _phi_kint(group, lam_b[kzone], t_b[kzone], order)
    rest = ~kzone
    if rest.any():
        out[rest] = _phi_series(group, lam_b[rest], t_b[rest], order)
    return out.reshape(np.broadcast_shapes(lam.shape, t.shape))


def _phi_series(group: RankOneGroup, lam, t, order: int):
    a, b, c = _hyp_params(group, lam)
    z = -np.sinh(t) ** 2
    f0 = gauss_2f1(a, b, c, z)
    if order == 0:
        return f0
    dz = -np.sinh(2.0 * t)
    f1 = a * b / c * gauss_2f1(a + 1, b + 1, c + 1, z)
    if order == 1:
        return f1 * dz
    d2z = -2.0 * np.cosh(2.0 * t)
    f2 = (a * (a + 1) * b * (b + 1) / (c * (c + 1))
          * gauss_2f1(a + 2, b + 2, c + 2, z))
    return f2 * dz * dz + f1 * d2z


class SphericalEvaluator:
    """phi_lambda bound to a fixed group and spectral parameter.

    Exposes the same value/derivative protocol as RadialFunction so it can
    be fed to casimir_residual and the seminorm machinery.
    """

    def __init__(self, group: RankOneGroup, lam):
        self.group = group
        self.lam = complex(lam)

    def __call__(self, t):
        return phi(self.group, self.lam, t)

    def derivative(self, t, order: int = 1):
        if order == 0:
            return phi(self.group, self.lam, t)
        return phi_derivative(self.group, self.lam, t, order)


def casimir_residual(group: RankOneGroup, lam, f, t):
    """Defect of the radial Casimir eigen-equation at t > 0:

        f''(t) + [(p+q) coth t + q tanh t] f'(t) + (lambda^2 + rho^2) f(t).

    Vanishes when f = phi_lambda.  `f` may be anything callable; objects
    with a .derivative(t, order) method (RadialFunction, SphericalEvaluator)
    use their analytic derivatives, otherwise central differences with
    h = 1e-4 are applied.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("casimir_residual needs t > 0 (coth is singular at 0)")
    if hasattr(f, "derivative"):
        f0 = f(t)
        f1 = f.derivative(t, 1)
        f2 = f.derivative(t, 2)
    else:
        h = 1e-4
        fp, fm, f0 = f(t + h), f(t - h), f(t)
        f1 = (fp - fm) / (2 * h)
        f2 = (fp - 2 * f0 + fm) / h ** 2
    lam = complex(lam)
    coeff = (group.p + group.q) / np.tanh(t) + group.q * np.tanh(t)
    return f2 + coeff * f1 + (lam ** 2 + group.rho ** 2) * f0


def hc_series_coeffs(group: RankOneGroup, s, k_max: int):
    """Coefficients a_k of the Frobenius solution
    e^{(s - rho) t} sum_{k>=0} a_k e^{-k t}, a_0 = 1 (s is the exponent
    variable, s = i*lambda).

    Substituting the series into the radial eigen-equation, with coth and
    tanh expanded in powers of e^{-2t}, gives the two-term recursion

        k (k - 2s) a_k = -2 sum_{m=1}^{floor(k/2)}
                          [p + q + (-1)^m q] (s - rho - k + 2m) a_{k-2m},

    so a_k = 0 for odd k.  Vanishing of k - 2s (2s a positive integer)
    is the exceptional set and raises ResonanceError.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    s = complex(s)
    rho = group.rho
    coeffs = np.zeros(k_max + 1, dtype=complex)
    coeffs[0] = 1.0
    for k in range(1, k_max + 1):
        denom = k * (k - 2.0 * s)
        if abs(k - 2.0 * s) < 1e-8:
            raise ResonanceError(
                f"2s = {2 * s} hits the integer {k}; series coefficients blow up")
        acc = 0.0 + 0.0j
        for m in range(1, k // 2 + 1):
            cm = group.p + group.q + (-1) ** m * group.q
            acc += cm * coeffs[k - 2 * m] * (s - rho - k + 2 * m)
        coeffs[k] = -2.0 * acc / denom
    return coeffs


def frobenius_solution(group: RankOneGroup, s, coeffs, t):
    """Value of the normalized Frobenius solution at t (t may be an array)."""
    s = complex(s)
    t = np.asarray(t, dtype=float)
    ks = np.arange(len(coeffs))
    vals = np.exp(np.multiply.outer(t, -ks)) @ coeffs
    return np.exp((s - group.rho) * t) * vals


@dataclass
class HCSeries:
    """Harish-Chandra expansion data of phi_lambda at infinity."""

    s_variable: complex
    coeffs: np.ndarray
    coeffs_minus: np.ndarray
    c_plus: complex
    c_minus: complex
    group: RankOneGroup

    def reconstruct(self, t):
        """c_+ Phi(s, t) + c_- Phi(-s, t); matches phi for t in the far zone."""
        return (self.c_plus * frobenius_solution(self.group, self.s_variable,
                                                 self.coeffs, t)
                + self.c_minus * frobenius_solution(self.group, -self.s_variable,
                                                    self.coeffs_minus, t))


def harish_chandra_series(group: RankOneGroup, lam, k_max: int = _FIT_KMAX,
                          fit_points=_FIT_POINTS) -> HCSeries:
    """Fit the two c-amplitudes from phi samples at two far points.

    Solves the 2x2 linear system phi(t_i) = c_+ Phi(s, t_i) + c_- Phi(-s, t_i)
    for i = 1, 2 with the normalized Frobenius solutions Phi.  An
    ill-conditioned system (condition number above 1e8, e.g. lambda ~ 0)
    raises ResonanceError.
    """
    lam = complex(lam)
    s = 1j * lam
    t1, t2 = fit_points
    cp = hc_series_coeffs(group, s, k_max)
    cm = hc_series_coeffs(group, -s, k_max)
    mat = np.array(
        [[complex(frobenius_solution(group, s, cp, t1)),
          complex(frobenius_solution(group, -s, cm, t1))],
         [complex(frobenius_solution(group, s, cp, t2)),
          complex(frobenius_solution(group, -s, cm, t2))]])
    if np.linalg.cond(mat) > _COND_LIMIT:
        raise ResonanceError(
            f"c-function fit is ill-conditioned at lambda = {lam}")
    rhs = np.array([complex(phi(group, lam, t1)), complex(phi(group, lam, t2))])
    c_plus, c_minus = np.linalg.solve(mat, rhs)
    return HCSeries(s_variable=s, coeffs=cp, coeffs_minus=cm,
                    c_plus=c_plus, c_minus=c_minus, group=group)


def c_function(group: RankOneGroup, lam) -> complex:
    """Harish-Chandra c(lambda): the amplitude of e^{(i lambda - rho) t}
    in phi_lambda at infinity.  lambda = 0 is excluded (degenerate fit)."""
    return harish_chandra_series(group, lam).c_plus


def c_pair(group: RankOneGroup, lam):
    """(c(lambda), c(-lambda)) from a single fit."""
    series = harish_chandra_series(group, lam)
    return series.c_plus, series.c_minus


def c_pair_batch(group: RankOneGroup, lams, k_max: int = _FIT_KMAX,
                 fit_points=_FIT_POINTS):
    """(c(lambda), c(-lambda)) over an array of parameters.

    The phi samples at the two fit points are evaluated in one vectorized
    pass; the per-parameter work is only the coefficient recursion and a
    closed-form 2x2 solve.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    t1, t2 = fit_points
    rhs1 = phi(group, lams, t1)
    rhs2 = phi(group, lams, t2)
    cp = np.empty(lams.shape, dtype=complex)
    cm = np.empty(lams.shape, dtype=complex)
    for i, lam in enumerate(lams):
        s = 1j * lam
        ap = hc_series_coeffs(group, s, k_max)
        am = hc_series_coeffs(group, -s, k_max)
        m11 = complex(frobenius_solution(group, s, ap, t1))
        m12 = complex(frobenius_solution(group, -s, am, t1))
        m21 = complex(frobenius_solution(group, s, ap, t2))
        m22 = complex(frobenius_solution(group, -s, am, t2))
        det = m11 * m22 - m12 * m21
        norm = max(abs(m11), abs(m12), abs(m21), abs(m22))
        if abs(det) < 1e-8 * norm * norm:
            raise ResonanceError(
                f"c-function fit is ill-conditioned at lambda = {lam}")
        cp[i] = (m22 * rhs1[i] - m12 * rhs2[i]) / det
        cm[i] = (-m21 * rhs1[i] + m11 * rhs2[i]) / det
    return cp, cm


def plancherel_density(group: RankOneGroup, lams):
    """|c(lambda)|^{-2} = 1 / (c(lambda) c(-lambda)) on real lambda arrays."""
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    cp, cm = c_pair_batch(group, lams)
    return 1.0 / (cp * cm).real


def functional_equation_defect(group: RankOneGroup, lam, s: float, t: float,
                               n: int = 256) -> float:
    """| (1/2pi) int_0^{2pi} phi(rad(a_s k_theta a_t)) dtheta - phi(a_s) phi(a_t) |.

    The product formula characterizing spherical functions, averaged over
    the compact factor with an n-point periodic trapezoid rule.
    """
    group.require_sl2r()
    theta = periodic_trapezoid_nodes(n)
    rads = radial_part_cartan_product(s, theta, t)
    avg = np.mean(phi(group, lam, rads))
    return abs(avg - complex(phi(group, lam, s)) * complex(phi(group, lam, t)))
