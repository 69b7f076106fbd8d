"""Grid, shift-operator, ambiguity and symplectic-Fourier unit tests."""

import math

import numpy as np
import pytest

from ltvbounds import (
    AmbiguitySurface,
    Signal,
    TFGrid,
    TFShift,
    TimeGrid,
    ambiguity,
    ambiguity_surface,
    commutation_defect,
    default_grid,
    dual_grid,
    make_gaussian,
    shift,
    symplectic_fourier,
)
from ltvbounds.core_tf import (
    ambiguity_on_points,
    inner,
    shift_many,
    surface_norm2,
    symplectic_form,
)
from ltvbounds.errors import GridMismatch, GridTooSmall

from conftest import random_pulse


# ---------------------------------------------------------------- grids


def test_default_grid_covers_centered_window():
    g = default_grid()
    assert g.n_samples == 256
    assert g.dt == 1.0 / 16.0
    assert g.times[0] == -8.0
    assert g.times[-1] == 8.0 - g.dt
    assert g.duration == 16.0


def test_time_grid_validation():
    with pytest.raises(ValueError):
        TimeGrid(1, 0.1)
    with pytest.raises(ValueError):
        TimeGrid(16, -0.5)


def test_signal_requires_matching_length(grid):
    with pytest.raises(ValueError):
        Signal(grid, np.zeros(grid.n_samples - 1))


def test_tf_grid_centers_and_area():
    tf = TFGrid(4, 2, 0.5, 0.25, (1.0, -1.0))
    assert np.allclose(tf.centers1, [1.25, 1.75, 2.25, 2.75])
    assert np.allclose(tf.centers2, [-0.875, -0.625])
    assert tf.cell_area == 0.125
    centered = TFGrid.centered(4, 4, 0.5, 0.5)
    assert np.allclose(centered.centers1, [-0.75, -0.25, 0.25, 0.75])


# ---------------------------------------------------------------- pulses


def test_gaussian_is_unit(gauss):
    assert abs(gauss.norm(2.0) - 1.0) <= 1e-9


def test_gaussian_energy_trapezoid_oracle(grid, gauss):
    # independent quadrature rule on |g|^2
    energy = np.trapezoid(np.abs(gauss.samples) ** 2, dx=grid.dt)
    # the trapezoid rule differs from the rectangle rule only through the
    # (negligible) endpoint samples of the localized pulse
    assert abs(energy - 1.0) <= 1e-8


def test_gaussian_tail_guard():
    small = TimeGrid(16, 1.0 / 16.0, -0.5)
    with pytest.raises(GridTooSmall):
        make_gaussian(small)
    with pytest.raises(ValueError):
        make_gaussian(default_grid(), width=0.0)


def test_signal_norms_match_manual(grid):
    rng = np.random.default_rng(5)
    f = random_pulse(grid, rng)
    mag = np.abs(f.samples)
    assert np.isclose(f.norm(1.0), mag.sum() * grid.dt)
    assert np.isclose(f.norm(4.0), (np.sum(mag**4) * grid.dt) ** 0.25)
    assert np.isclose(f.norm(np.inf), mag.max())


# ---------------------------------------------------------------- shifts


def test_polarization_phase_law(grid):
    rng = np.random.default_rng(11)
    for _ in range(25):
        f = random_pulse(grid, rng)
        mu1, mu2 = rng.uniform(-2, 2, size=2)
        alpha = rng.uniform(-1, 1)
        lhs = shift(f, TFShift(mu1, mu2, alpha)).samples
        phase = np.exp(-2j * np.pi * mu1 * mu2 * (0.5 - alpha))
        rhs = phase * shift(f, TFShift(mu1, mu2, 0.5)).samples
        assert np.abs(lhs - rhs).max() <= 1e-10


def test_shift_isometry_all_p(grid):
    rng = np.random.default_rng(12)
    for _ in range(100):
        f = random_pulse(grid, rng)
        mu2 = rng.uniform(-3, 3)
        alpha = rng.uniform(-1, 1)
        # fractional time shift for the integral norms ...
        mu1 = rng.uniform(-3, 3)
        s = shift(f, TFShift(mu1, mu2, alpha))
        for p in (1.0, 2.0, 4.0):
            assert abs(s.norm(p) - f.norm(p)) <= 1e-8 * f.norm(p)
        # ... and a grid-aligned one for the sup norm, where the sampled
        # maximum is only preserved when the samples are permuted
        mu1 = grid.dt * rng.integers(-48, 48)
        s = shift(f, TFShift(mu1, mu2, alpha))
        assert abs(s.norm(np.inf) - f.norm(np.inf)) <= 1e-8 * f.norm(np.inf)


def test_integer_shift_is_sample_roll(grid):
    rng = np.random.default_rng(13)
    f = random_pulse(grid, rng)
    shifted = shift(f, TFShift(4 * grid.dt, 0.0, 0.5))
    assert np.abs(shifted.samples - np.roll(f.samples, 4)).max() <= 1e-12


def test_shift_many_matches_single(grid):
    rng = np.random.default_rng(14)
    f = random_pulse(grid, rng)
    mu1 = rng.uniform(-2, 2, size=6)
    mu2 = rng.uniform(-2, 2, size=6)
    cols = shift_many(f, mu1, mu2, 0.25)
    for j in range(6):
        single = shift(f, TFShift(mu1[j], mu2[j], 0.25)).samples
        assert np.abs(cols[:, j] - single).max() <= 1e-12


def test_symplectic_form_antisymmetry():
    assert symplectic_form((1.0, 2.0), (3.0, 5.0)) == -symplectic_form((3.0, 5.0), (1.0, 2.0))
    assert symplectic_form((1.0, 0.0), (0.0, 1.0)) == 1.0


def test_commutation_defect(grid):
    rng = np.random.default_rng(15)
    f = random_pulse(grid, rng)
    # self-commutation and the integer-phase pair are exact
    assert commutation_defect(TFShift(0.7, -1.2), TFShift(0.7, -1.2), f) <= 1e-10
    assert commutation_defect(TFShift(1.0, 0.0), TFShift(0.0, 1.0), f) <= 1e-9
    for _ in range(100):
        f = random_pulse(grid, rng)
        mu = TFShift(*rng.uniform(-2, 2, size=2), rng.uniform(-1, 1))
        nu = TFShift(*rng.uniform(-2, 2, size=2), rng.uniform(-1, 1))
        assert commutation_defect(mu, nu, f) <= 1e-8 * f.norm(2.0)


# ---------------------------------------------------------------- ambiguity


def test_ambiguity_at_origin_and_bound(grid, gauss):
    assert abs(ambiguity(gauss, gauss, TFShift(0.0, 0.0, 0.0)) - 1.0) <= 1e-9
    tf = TFGrid.centered(24, 24, 0.25, 0.25)
    surf = ambiguity_surface(gauss, gauss, tf, 0.0)
    assert np.abs(surf.values).max() <= 1.0 + 1e-9


def test_gaussian_ambiguity_closed_form(grid, gauss):
    rng = np.random.default_rng(16)
    mu1 = rng.uniform(-2, 2, size=40)
    mu2 = rng.uniform(-2, 2, size=40)
    vals = ambiguity_on_points(gauss, gauss, mu1, mu2, 0.0)
    expected = np.exp(-np.pi * (mu1**2 + mu2**2) / 2.0)
    assert np.abs(vals - expected).max() <= 1e-6


def test_ambiguity_matches_direct_quadrature(grid, gauss):
    # oracle: build the shifted Gaussian from its analytic formula (alpha=0)
    # and integrate by rectangle rule, bypassing the FFT shift entirely
    t = grid.times
    for mu1, mu2 in [(0.4, -0.7), (1.3, 0.55)]:
        analytic = (
            2.0**0.25
            * np.exp(-np.pi * (t - mu1) ** 2)
            * np.exp(2j * np.pi * mu2 * (t - 0.5 * mu1))
        )
        direct = np.vdot(gauss.samples, analytic) * grid.dt
        val = ambiguity(gauss, gauss, TFShift(mu1, mu2, 0.0))
        assert abs(val - direct) <= 1e-9


def test_inner_conjugate_linearity_and_grid_check(grid, gauss):
    other = Signal(grid, 1j * gauss.samples)
    assert np.isclose(inner(other, gauss), -1j * inner(gauss, gauss))
    with pytest.raises(GridMismatch):
        inner(gauss, make_gaussian(default_grid(128)))


def test_ambiguity_surface_rejects_bound_violation():
    tf = TFGrid(2, 2, 1.0, 1.0)
    with pytest.raises(ValueError):
        AmbiguitySurface(tf, 2.0 * np.ones((2, 2)), norm_bound=1.0)


# ------------------------------------------------------- symplectic Fourier


def _double_sum_oracle(values, tf, out):
    res = np.zeros((out.n1, out.n2), dtype=complex)
    for k, m1 in enumerate(out.centers1):
        for l, m2 in enumerate(out.centers2):
            phase = np.exp(
                -2j
                * np.pi
                * (tf.centers1[:, None] * m2 - tf.centers2[None, :] * m1)
            )
            res[k, l] = np.sum(values * phase) * tf.cell_area
    return res


def test_symplectic_fourier_double_sum_oracle():
    rng = np.random.default_rng(21)
    tf = TFGrid(8, 6, 0.3, 0.45, (-1.0, 0.5))
    out = TFGrid.centered(5, 7, 0.4, 0.35)
    values = rng.standard_normal((8, 6)) + 1j * rng.standard_normal((8, 6))
    fast = symplectic_fourier(values, tf, out)
    assert np.abs(fast - _double_sum_oracle(values, tf, out)).max() <= 1e-10


def test_dual_grid_pairing():
    tf = TFGrid(8, 6, 0.3, 0.45, (-1.0, 0.5))
    dual = dual_grid(tf)
    assert (dual.n1, dual.n2) == (6, 8)
    assert np.isclose(dual.d1, 1.0 / (6 * 0.45))
    assert np.isclose(dual.d2, 1.0 / (8 * 0.3))
    assert np.isclose(dual.centers1.mean(), 0.0)


def test_symplectic_fourier_parseval():
    rng = np.random.default_rng(22)
    tf = TFGrid(16, 16, 0.2, 0.2, (-1.6, -1.6))
    values = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    out = symplectic_fourier(values, tf)
    norm_in = surface_norm2(values, tf)
    assert abs(surface_norm2(out, dual_grid(tf)) - norm_in) <= 1e-8 * norm_in


def test_symplectic_fourier_involution_on_self_dual_grid():
    n = 32
    d = 1.0 / math.sqrt(n)
    tf = TFGrid.centered(n, n, d, d)  # its own canonical dual
    rng = np.random.default_rng(23)
    values = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    twice = symplectic_fourier(symplectic_fourier(values, tf, tf), tf, tf)
    assert np.abs(twice - values).max() <= 1e-8
