"""Numerical spherical harmonic analysis on real rank-one reductive groups."""

from .functions import RadialFunction
from .group import (GroupElement, RankOneGroup, SL2R, TubeDomain,
                    integrate_radial, jacobian, radial_part, sigma, xi)
from .hypergeom import HypergeomParams, gauss_2f1, pochhammer
from .quadrature import TruncationError
from .spherical import (HCSeries, ResonanceError, SphericalEvaluator,
                        c_function, c_pair, casimir_residual,
                        functional_equation_defect, harish_chandra_series,
                        hc_series_coeffs, phi, plancherel_density)
from .transforms import (SpectralFunction, abel_transform, inverse_transform,
                         seminorm_mu_p, spherical_transform_horocycle,
                         spherical_transform_polar, symmetric_transform,
                         tube_holomorphy_defect)

__version__ = "0.1.0"

__all__ = [
    "GroupElement", "HCSeries", "HypergeomParams", "RadialFunction",
    "RankOneGroup", "ResonanceError", "SL2R", "SphericalEvaluator",
    "SpectralFunction", "TruncationError", "TubeDomain", "abel_transform",
    "c_function", "c_pair", "casimir_residual", "functional_equation_defect",
    "gauss_2f1", "harish_chandra_series", "hc_series_coeffs",
    "integrate_radial", "inverse_transform", "jacobian", "phi",
    "plancherel_density", "pochhammer", "radial_part", "seminorm_mu_p",
    "sigma", "spherical_transform_horocycle", "spherical_transform_polar",
    "symmetric_transform", "tube_holomorphy_defect", "xi",
]
