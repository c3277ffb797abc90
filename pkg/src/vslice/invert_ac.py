"""Reconstruction formulas obtained by continuing the spherical-mean family.

Both reconstruction routes here consume the FULL slice transform V = 2 V_+;
`vslice_forward` produces V_+, so callers double it first (see
`full_transform`).  The formulas assume functions that vanish identically
near the equator; for such data the filtered profiles g_theta(t) =
F(theta, t) (1-t^2)^(-1/2) drop to zero before the endpoints, which is what
makes the t-differentiation and the log filter well behaved.  The module
warns when the data visibly violates that decay.
"""

import warnings

import numpy as np
from numpy.polynomial import chebyshev

from .grid import SliceData
from .invert_john import (
    JOHN_RESOLUTION_N2,
    JOHN_RESOLUTION_N3,
    _backproject_laplacian,
    _plane_data,
)
from .specfun import method_constants, sphere_area
from .xform import dual_radon, log_backprojection

DECAY_BAND = 0.02  # relative width of the rim band probed before inverting
DECAY_TOLERANCE = 1e-8


def full_transform(F):
    """Full slice transform from the half-sphere one: V = 2 V_+ (even f)."""
    if not isinstance(F, SliceData):
        raise TypeError("full_transform expects SliceData")
    return SliceData(F.grid, 2.0 * F.smooth, F.boundary_exponent)


def t_derivative(F, order):
    """Spectral d/dt of the full t-profiles, returned with exponent 0.

    The profiles of admissible data vanish near t = +-1, so their
    derivatives are plain smooth functions; each profile is interpolated in
    the Chebyshev basis (the t nodes are Chebyshev points) and differentiated
    exactly there.
    """
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return F
    t = F.grid.t
    coef = chebyshev.chebfit(t, F.values.T, len(t) - 1)
    for _ in range(order):
        coef = chebyshev.chebder(coef)
    return SliceData(F.grid, chebyshev.chebval(t, coef), 0.0)


def check_equator_decay(F, margin):
    """Peak of |g_theta(t)| over |t| > 1 - margin, relative to its global peak.

    g_theta = F (1-t^2)^(-1/2).  A phantom vanishing for |x_{n+1}| <= m has
    slice support inside |t| <= sqrt(1-m^2), i.e. a t-margin of
    1 - sqrt(1-m^2); passing that margin here should return ~0.
    """
    if not 0.0 < margin < 1.0:
        raise ValueError("need 0 < margin < 1")
    g = np.abs(_plane_data(F).values)
    band = np.abs(F.grid.t) > 1.0 - margin
    peak = g.max()
    if peak == 0.0 or not np.any(band):
        return 0.0
    return float(g[:, band].max() / peak)


def _decay_guard(F):
    ratio = check_equator_decay(F, DECAY_BAND)
    if ratio > DECAY_TOLERANCE:
        warnings.warn(
            "slice data does not vanish near t = +-1 (rim ratio %.2e); the "
            "continuation formulas assume data from functions vanishing near "
            "the equator" % ratio,
            stacklevel=3,
        )


def invert_ac_odd(F, resolution=None):
    """Three-dimensional reconstruction from the full transform V.

    The t-derivative order n-3 is zero here, so the formula is a pure
    backprojection (an unnormalized integral over directions) followed by
    the scaled Laplacian.
    """
    if F.grid.spec.n != 3:
        raise ValueError("invert_ac_odd requires n = 3 slice data")
    _decay_guard(F)
    g = _plane_data(F)
    c = method_constants(3).lambda_n
    area = sphere_area(3)
    res = resolution or JOHN_RESOLUTION_N3
    return _backproject_laplacian(F, lambda pts: area * dual_radon(g, pts), c, res)


def invert_ac_n2(F, resolution=None):
    """Two-dimensional reconstruction from the full transform V.

    The published constant is 1/(8 pi^2) against an unnormalized direction
    integral and +Delta; folding in the 2 pi normalization of the averaged
    log filter and the sign of -Delta gives the factor below.
    """
    if F.grid.spec.n != 2:
        raise ValueError("invert_ac_n2 requires n = 2 slice data")
    _decay_guard(F)
    g = _plane_data(F)
    c = -sphere_area(2) / (8.0 * np.pi**2)
    res = resolution or JOHN_RESOLUTION_N2
    return _backproject_laplacian(F, lambda pts: log_backprojection(g, pts), c, res)


def invert_ac_even_general(F, resolution=None):
    """Log-kernel continuation route for even n, from the full transform V.

    Stated for even n > 2; this toolkit only builds n = 2 and n = 3 grids,
    so n = 2 is accepted as the degenerate case (derivative order 0), where
    the route coincides with invert_ac_n2 exactly — which is also the only
    executable check of the composition.
    """
    n = F.grid.spec.n
    if n % 2:
        raise ValueError("the log-kernel route needs slice data of even n")
    _decay_guard(F)
    g = t_derivative(_plane_data(F), n - 2)
    c = -(method_constants(n).lambda_n / np.pi) * sphere_area(n)
    res = resolution or JOHN_RESOLUTION_N2
    return _backproject_laplacian(F, lambda pts: log_backprojection(g, pts), c, res)


def invert_ac(F, resolution=None):
    """Dispatch on the dimension of the slice data."""
    if F.grid.spec.n == 2:
        return invert_ac_n2(F, resolution)
    return invert_ac_odd(F, resolution)
