"""Backprojection-plus-Laplacian reconstruction from slice data.

Dividing slice data by sqrt(1-t^2) turns slice integrals into plane
integrals of the lifted chart function.  Backprojecting those and applying
the negative Laplacian recovers the lift: directly in three dimensions,
through a logarithmic filter in the offset variable in two.  The result is
multiplied back by |x_{n+1}| to give the even function on the sphere.
"""

import numpy as np

from .cartesian import cartesian_nodes, grid_step, neg_laplacian, sample_box
from .grid import BallFunction, SliceData, project
from .specfun import method_constants
from .xform import dual_radon, log_backprojection

JOHN_RESOLUTION_N2 = 256
JOHN_RESOLUTION_N3 = 64


def _plane_data(F):
    """Divide out sqrt(1-t^2): exact shift of the stored boundary exponent."""
    if not isinstance(F, SliceData):
        raise TypeError("expected SliceData")
    if not np.all(np.isfinite(F.smooth)):
        raise ValueError("slice data contains non-finite values")
    return SliceData(F.grid, F.smooth, F.boundary_exponent - 0.5)


def _backproject_laplacian(F, backprojector, constant, resolution):
    grid = F.grid
    n = grid.spec.n
    axis, pts = cartesian_nodes(n, resolution)
    h = grid_step(resolution)
    table = backprojector(pts).reshape((resolution,) * n)
    lap = constant * neg_laplacian(table, h)
    smooth = sample_box(lap, grid.ball_points)
    return project(BallFunction(grid, smooth))


def invert_odd(F, resolution=None):
    """Three-dimensional reconstruction: local filtered backprojection."""
    if F.grid.spec.n != 3:
        raise ValueError("invert_odd requires n = 3 slice data")
    phi = _plane_data(F)
    c = method_constants(3).c_n
    res = resolution or JOHN_RESOLUTION_N3
    return _backproject_laplacian(F, lambda pts: dual_radon(phi, pts), c, res)


def invert_even(F, resolution=None):
    """Two-dimensional reconstruction: log-filtered backprojection.

    The log filter has unbounded support in the offset variable, so the
    backprojection is evaluated through a fine offset table rather than by
    composing the two grid-level operators.
    """
    if F.grid.spec.n != 2:
        raise ValueError("invert_even requires n = 2 slice data")
    phi = _plane_data(F)
    c = method_constants(2).c_hat_n
    res = resolution or JOHN_RESOLUTION_N2
    return _backproject_laplacian(F, lambda pts: log_backprojection(phi, pts), c, res)


def invert_john(F, resolution=None):
    """Dispatch on the dimension of the slice data."""
    n = F.grid.spec.n
    if n == 2:
        return invert_even(F, resolution)
    return invert_odd(F, resolution)
