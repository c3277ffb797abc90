import math
import warnings

import numpy as np
import pytest

from vslice.grid import GridSpec, SliceData, make_grid
from vslice.harness import Phantom, compare, make_phantom
from vslice.invert_ac import (
    check_equator_decay,
    full_transform,
    invert_ac,
    invert_ac_even_general,
    invert_ac_n2,
    invert_ac_odd,
    t_derivative,
)
from vslice.invert_john import invert_john
from vslice.xform import vslice_forward

SPEC2 = GridSpec(2, 128, 48, 64)
SPEC3 = GridSpec(3, 16, 24, 32)
BUMP2 = Phantom(kind="bump", center=(0.3, -0.2, 0.93), width=0.7, equator_margin=0.25)
BUMP3 = Phantom(kind="bump", center=(0.0, 0.0, 0.3, 0.95), width=0.7, equator_margin=0.25)


@pytest.fixture(scope="module")
def round2():
    phantom = make_phantom(BUMP2, SPEC2)
    return phantom, full_transform(vslice_forward(phantom))


@pytest.fixture(scope="module")
def round3():
    phantom = make_phantom(BUMP3, SPEC3)
    return phantom, full_transform(vslice_forward(phantom))


def test_full_transform_doubles(round2):
    _, V = round2
    F = SliceData(V.grid, 0.5 * V.smooth, V.boundary_exponent)
    again = full_transform(F)
    assert np.array_equal(again.smooth, V.smooth)
    assert again.boundary_exponent == V.boundary_exponent
    with pytest.raises(TypeError):
        full_transform(np.zeros(3))


def test_t_derivative_matches_analytic():
    grid = make_grid(GridSpec(2, 8, 12, 64))
    profile = np.sin(2.5 * grid.t)
    F = SliceData(grid, np.tile(profile, (grid.n_ang_total, 1)), 0.0)
    d1 = t_derivative(F, 1)
    assert np.max(np.abs(d1.values - 2.5 * np.cos(2.5 * grid.t))) < 1e-10
    d2 = t_derivative(F, 2)
    assert np.max(np.abs(d2.values + 2.5**2 * np.sin(2.5 * grid.t))) < 1e-8
    assert t_derivative(F, 0) is F
    with pytest.raises(ValueError):
        t_derivative(F, -1)


def test_equator_decay_flags_constant(round2):
    _, V = round2
    assert check_equator_decay(V, 0.02) == 0.0
    flat = full_transform(vslice_forward(make_phantom(Phantom(kind="even_constant"), SPEC2)))
    assert check_equator_decay(flat, 0.02) > 0.9
    with pytest.raises(ValueError):
        check_equator_decay(V, 0.0)


def test_dimension_guards(round2, round3):
    _, V2 = round2
    _, V3 = round3
    with pytest.raises(ValueError):
        invert_ac_odd(V2)
    with pytest.raises(ValueError):
        invert_ac_n2(V3)
    with pytest.raises(ValueError):
        invert_ac_even_general(V3)


def test_zero_data(round2):
    _, V = round2
    zero = SliceData(V.grid, np.zeros_like(V.smooth), V.boundary_exponent)
    assert np.max(np.abs(invert_ac_n2(zero).smooth)) < 1e-14


def test_round_trip_n2(round2):
    phantom, V = round2
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rec = invert_ac(V)
    report = compare(phantom, rec, method="ac")
    assert report.rel_l2_after_scale < 0.02
    assert abs(report.best_fit_scalar - 1.0) < 0.05


def test_round_trip_n3(round2, round3):
    phantom, V = round3
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rec = invert_ac(V, resolution=48)
    report = compare(phantom, rec, method="ac")
    assert report.rel_l2_after_scale < 0.03
    assert abs(report.best_fit_scalar - 1.0) < 0.05


def test_even_general_degenerates_to_n2(round2):
    _, V = round2
    a = invert_ac_n2(V)
    b = invert_ac_even_general(V)
    scale = np.max(np.abs(a.smooth))
    assert np.max(np.abs(a.smooth - b.smooth)) < 1e-13 * scale


def test_agrees_with_john_n2(round2):
    """Same filtered-backprojection pipeline; the published constants differ
    by exactly -sqrt(pi), which is the even-route constant discrepancy."""
    phantom, V = round2
    rec_ac = invert_ac_n2(V)
    rec_john = invert_john(SliceData(V.grid, 0.5 * V.smooth, V.boundary_exponent))
    cross = compare(rec_john, rec_ac, method="cross")
    assert cross.rel_l2_after_scale < 1e-6
    assert abs(cross.best_fit_scalar + math.sqrt(math.pi)) < 1e-3


def test_agrees_with_john_n3(round3):
    phantom, V = round3
    rec_ac = invert_ac_odd(V, resolution=48)
    rec_john = invert_john(SliceData(V.grid, 0.5 * V.smooth, V.boundary_exponent), resolution=48)
    cross = compare(rec_john, rec_ac, method="cross")
    assert cross.rel_l2_after_scale < 1e-6
    assert abs(cross.best_fit_scalar - 1.0) < 1e-6


def test_warns_on_rim_coupled_data(round2):
    flat = full_transform(vslice_forward(make_phantom(Phantom(kind="even_constant"), SPEC2)))
    with pytest.warns(UserWarning, match="vanish near"):
        invert_ac_n2(flat)


def test_quarter_turn_equivariance(round2):
    _, V = round2
    grid = V.grid
    quarter = grid.n_ang_total // 4
    rolled = SliceData(grid, np.roll(V.smooth, quarter, axis=0), V.boundary_exponent)
    rec = invert_ac_n2(V)
    rec_rolled = invert_ac_n2(rolled)
    expected = np.roll(rec.values, quarter, axis=0)
    scale = np.max(np.abs(rec.values))
    assert np.max(np.abs(rec_rolled.values - expected)) < 1e-10 * scale


def test_reconstruction_error_decreases_with_resolution():
    errs = []
    for spec, res in [
        (GridSpec(2, 64, 24, 32), 64),
        (GridSpec(2, 128, 48, 64), 128),
        (GridSpec(2, 256, 96, 128), 256),
    ]:
        phantom = make_phantom(BUMP2, spec)
        V = full_transform(vslice_forward(phantom))
        rec = invert_ac_n2(V, resolution=res)
        errs.append(compare(phantom, rec).rel_l2_after_scale)
    assert errs[0] > errs[1] > errs[2]
