"""Rank-one group data, the SL(2,R) matrix realization, and gauge functions.

Conventions (fixed once, used everywhere):

  * root multiplicities p = mult(alpha), q = mult(2*alpha); rho = (p+2q)/2
    is the value of the half-sum on the basis vector H0 with alpha(H0) = 1;
  * a_t = exp(t*H0); in the SL(2,R) realization H0 = diag(1/2, -1/2), so
    a_t = diag(e^{t/2}, e^{-t/2}) and the positive chamber is t > 0;
  * Haar measure in polar coordinates is dx = J(t) dk dt dk with
    J(t) = sinh(t)^p * sinh(2t)^q and the compact factor normalized to
    total mass 1.  No further constant is attached; global constants
    produced by this choice are absorbed by the calibrated inversion and
    horocycle/polar constants in the transform module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import TruncationError, gauss_legendre_panels

DET_TOL = 1e-12
DEFAULT_T_MAX = 40.0


@dataclass(frozen=True)
class RankOneGroup:
    """Multiplicity data (p, q) of a real rank-one group.

    realization 'sl2r' unlocks the matrix-level oracles and requires
    (p, q) = (1, 0); 'abstract' supports everything that only needs the
    radial picture.
    """

    p: int
    q: int
    realization: str = "abstract"

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError("need nonnegative multiplicities with p + q >= 1")
        if self.realization not in ("abstract", "sl2r"):
            raise ValueError(f"unknown realization {self.realization!r}")
        if self.realization == "sl2r" and (self.p, self.q) != (1, 0):
            raise ValueError("the sl2r realization has (p, q) = (1, 0)")

    @property
    def rho(self) -> float:
        return (self.p + 2 * self.q) / 2.0

    @classmethod
    def sl2r(cls) -> "RankOneGroup":
        return cls(1, 0, "sl2r")

    def require_sl2r(self):
        if self.realization != "sl2r":
            raise ValueError("this operation needs the sl2r matrix realization")

    def tube(self, epsilon: float) -> "TubeDomain":
        return TubeDomain(epsilon=epsilon, rho=self.rho)


SL2R = RankOneGroup.sl2r()


@dataclass(frozen=True)
class TubeDomain:
    """Spectral strip |Im lambda| <= epsilon * rho around the real axis."""

    epsilon: float
    rho: float

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")

    @property
    def half_width(self) -> float:
        return self.epsilon * self.rho

    def contains(self, lam: complex, margin: float = 0.0) -> bool:
        return abs(complex(lam).imag) <= self.half_width * (1.0 - margin) + 1e-15

    @classmethod
    def for_schwartz_index(cls, group: RankOneGroup, p_schwartz: float) -> "TubeDomain":
        if not 0 < p_schwartz <= 2:
            raise ValueError("Schwartz index must lie in (0, 2]")
        return cls(epsilon=2.0 / p_schwartz - 1.0, rho=group.rho)


class GroupElement:
    """A 2x2 real unimodular matrix; products renormalize the determinant."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if d <= 0:
            raise ValueError("matrix must have positive determinant")
        if abs(d - 1.0) > DET_TOL:
            m = m / math.sqrt(d)
        self.m = m

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.m @ other.m)

    def inv(self) -> "GroupElement":
        a, b, c, d = self.m.ravel()
        return GroupElement(np.array([[d, -b], [-c, a]]))

    def __repr__(self):
        return f"GroupElement({self.m.tolist()})"

    @classmethod
    def rotation(cls, theta: float) -> "GroupElement":
        c, s = math.cos(theta), math.sin(theta)
        return cls(np.array([[c, -s], [s, c]]))

    @classmethod
    def boost(cls, t: float) -> "GroupElement":
        """a_t = exp(t * H0) = diag(e^{t/2}, e^{-t/2})."""
        return cls(np.array([[math.exp(t / 2), 0.0], [0.0, math.exp(-t / 2)]]))

    @classmethod
    def shear(cls, x: float) -> "GroupElement":
        """n_x = upper unipotent [[1, x], [0, 1]]."""
        return cls(np.array([[1.0, x], [0.0, 1.0]]))

    def mobius(self, z: complex) -> complex:
        """Action on the upper half-plane."""
        a, b, c, d = self.m.ravel()
        return (a * z + b) / (c * z + d)


def radial_part(g) -> float:
    """The unique t >= 0 with g in K a_t K, via arccosh(|g|_F^2 / 2).

    The squared Frobenius norm of k1 a_t k2 is e^t + e^{-t} = 2 cosh t.
    """
    m = g.m if isinstance(g, GroupElement) else np.asarray(g, dtype=float)
    n2 = float(np.sum(m * m))
    if n2 < 2.0 - 1e-9:
        raise ValueError("Frobenius norm below 2: input is not unimodular")
    return math.acosh(max(n2 / 2.0, 1.0))


def radial_part_cartan_product(s, theta, t):
    """radial_part(a_s k_theta a_t) in closed form; broadcasts over arrays.

    |a_s k a_t|_F^2 / 2 = cos^2(theta) cosh(s+t) + sin^2(theta) cosh(s-t).
    """
    s = np.asarray(s, dtype=float)
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    w = (np.cos(theta) ** 2 * np.cosh(s + t)
         + np.sin(theta) ** 2 * np.cosh(s - t))
    return np.arccosh(np.maximum(w, 1.0))


def radial_part_horocycle(u, x):
    """radial_part(a_u n_x) in closed form: cosh(rad) = cosh u + e^u x^2 / 2."""
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.arccosh(np.maximum(np.cosh(u) + np.exp(u) * x * x / 2.0, 1.0))


def iwasawa_log_a(g) -> float:
    """Coordinate u of the Iwasawa projection: g = k a_u n, u = log|first column|^2."""
    m = g.m if isinstance(g, GroupElement) else np.asarray(g, dtype=float)
    return math.log(m[0, 0] ** 2 + m[1, 0] ** 2)


def sigma(group: RankOneGroup, t) -> float:
    """Polar radius sigma(a_t) = |t|; the norm on the split part is calibrated
    so the basis vector H0 has length one."""
    return np.abs(t)


def jacobian(group: RankOneGroup, t):
    """Polar density J(a_t) = sinh(t)^p * sinh(2t)^q."""
    t = np.asarray(t, dtype=float)
    out = np.sinh(t) ** group.p
    if group.q:
        out = out * np.sinh(2.0 * t) ** group.q
    return out[()] if out.ndim == 0 else out


def xi(group: RankOneGroup, t):
    """Gauge function Xi(a_t): the spherical function at spectral parameter 0."""
    from .spherical import phi

    val = phi(group, 0.0, t)
    return np.real(val)


def integrate_radial(group: RankOneGroup, f, t_max: float = DEFAULT_T_MAX,
                     tol: float = 1e-8, check_tail: bool = True):
    """Integral of a bi-invariant function against Haar measure:
    int_0^{t_max} f(t) J(t) dt by composite Gauss-Legendre panels.

    A single panel beyond t_max estimates the discarded tail; a tail above
    tol raises TruncationError.  Integrands that are only meant to be
    integrated over [0, t_max] (not decaying) pass check_tail=False.
    """
    ts, ws = gauss_legendre_panels(0.0, t_max)
    vals = np.asarray(f(ts)) * jacobian(group, ts)
    total = np.sum(vals * ws)
    if check_tail:
        tail_ts, tail_ws = gauss_legendre_panels(t_max, t_max + 1.0)
        tail = np.sum(np.asarray(f(tail_ts)) * jacobian(group, tail_ts) * tail_ws)
        if abs(tail) > tol:
            raise TruncationError(
                f"tail estimate {abs(tail):.3g} beyond t_max={t_max} exceeds tol={tol:.3g}")
    return total
