import numpy as np
import pytest

from chiralsieve.errors import AmplitudeTooLow
from chiralsieve.errors import Undersampled
from chiralsieve.fields import ComplexField
from chiralsieve.fields import GridSpec
from chiralsieve.fields import angular_peak_count
from chiralsieve.fields import measure_winding
from chiralsieve.fields import phase_winding
from chiralsieve.modes import lg_field


@pytest.mark.parametrize("ell", [-11, -1, 0, 3, 7])
def test_winding_of_synthesized_vortex(lg_grid, w0, ell):
    f = lg_field(0, ell, w0, lg_grid)
    radius = w0 * np.sqrt(max(abs(ell), 1) / 2)

    assert phase_winding(f, radius, 2048, expected=ell) == ell


def test_winding_of_conjugate_flips_sign(lg_grid, w0):
    f = lg_field(0, -11, w0, lg_grid)
    radius = w0 * np.sqrt(5.5)

    assert phase_winding(f.conjugate(), radius, 2048) == -phase_winding(f, radius, 2048)


def test_winding_reports_small_residual(lg_grid, w0):
    winding = measure_winding(lg_field(0, 4, w0, lg_grid), w0 * np.sqrt(2), 2048)

    assert int(winding) == 4
    assert abs(winding.residual) < 1e-6


def test_winding_needs_amplitude(lg_grid):
    with pytest.raises(AmplitudeTooLow):
        phase_winding(ComplexField.zeros(lg_grid), 1e-9, 256)


def test_winding_detects_too_few_samples(lg_grid, w0):
    with pytest.raises(Undersampled):
        phase_winding(lg_field(0, 11, w0, lg_grid), w0 * np.sqrt(5.5), 64, expected=11)


def test_winding_detects_large_phase_steps(lg_grid, w0):
    with pytest.raises(Undersampled):
        phase_winding(lg_field(0, 11, w0, lg_grid), w0 * np.sqrt(5.5), 16)


def necklace(n_dots, grid):
    rho, theta = grid.polar_coords()
    return ComplexField(grid=grid, samples=(2 + np.cos(n_dots * theta)) * np.exp(-(((rho - 3e-9) / 1e-9) ** 2)))


@pytest.mark.parametrize("n_dots", [5, 44, 55])
def test_peak_count_of_necklace(n_dots):
    grid = GridSpec.square(512, 10e-9)
    assert angular_peak_count(necklace(n_dots, grid), 3e-9, 1024, expected=n_dots) == n_dots


def test_peak_count_of_constant_ring():
    grid = GridSpec.square(64, 10e-9)
    f = ComplexField(grid=grid, samples=np.ones(grid.shape))

    assert angular_peak_count(f, 3e-9, 256) == 0


def test_peak_count_detects_too_few_samples():
    grid = GridSpec.square(64, 10e-9)

    with pytest.raises(Undersampled):
        angular_peak_count(necklace(44, grid), 3e-9, 100, expected=44)
