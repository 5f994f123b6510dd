import numpy as np
import pandas as pd
import pytest

from chiralsieve.diffraction import FreeSpace
from chiralsieve.diffraction import OpticalSetup
from chiralsieve.diffraction import propagate_sieve
from chiralsieve.diffraction import write_z_stack
from chiralsieve.diffraction import z_stack
from chiralsieve.diffraction.zstack import ring_rms_radius
from chiralsieve.errors import ConfigError
from chiralsieve.fields import ComplexField
from chiralsieve.fields import GridSpec
from chiralsieve.fields.io import read_cvf1
from chiralsieve.fields.io import read_pgm

from ..conftest import WAVELENGTH


DELTA_FS = [-36e-6, -33.6e-6, -31e-6]


@pytest.fixture(scope="module")
def obs():
    return GridSpec.square(32, 12.8e-9)


@pytest.fixture(scope="module")
def stack(fermat_mask, fig1_setup, obs):
    return z_stack(fermat_mask, fig1_setup, DELTA_FS, obs, ring_cut=4e-9)


def test_slices_follow_defocus(stack, fermat_mask, fig1_setup, obs):
    assert len(stack) == 3
    assert stack.delta_fs == tuple(DELTA_FS)

    middle = propagate_sieve(fermat_mask, fig1_setup.with_defocus(-33.6e-6), obs)

    assert np.array_equal(stack.fields[1].samples, middle.samples)
    assert stack.fields[0].z_label == -36e-6


def test_yz_slice_is_central_column(stack, obs):
    assert stack.yz_slice.shape == (3, obs.ny)
    assert np.array_equal(stack.yz_slice[2], stack.fields[2].intensity[:, obs.nx // 2])


def test_waist_is_smallest_ring(stack):
    assert stack.ring_rms_radii[stack.waist_index] == stack.ring_rms_radii.min()
    assert stack.waist_delta_f in DELTA_FS


def test_ring_rms_radius_of_thin_ring():
    grid = GridSpec.square(256, 10e-9)
    rho, _ = grid.polar_coords()
    f = ComplexField(grid=grid, samples=np.exp(-(((rho - 3e-9) / 0.1e-9) ** 2)))

    assert ring_rms_radius(f, 4e-9) == pytest.approx(3e-9, rel=1e-2)
    assert ring_rms_radius(ComplexField.zeros(grid), 4e-9) == 0


@pytest.mark.parametrize("delta_fs", [[], [-30e-6, -31e-6, -29e-6], [-30e-6, -30e-6]])
def test_defoci_must_be_monotone(fermat_mask, fig1_setup, obs, delta_fs):
    with pytest.raises(ConfigError):
        z_stack(fermat_mask, fig1_setup, delta_fs, obs)


def test_stack_needs_lens_model(fermat_mask, obs):
    setup = OpticalSetup(wavelength=WAVELENGTH, model=FreeSpace(z=6.7))

    with pytest.raises(ConfigError):
        z_stack(fermat_mask, setup, DELTA_FS, obs)


def test_written_stack(tmp_path, stack, obs):
    paths = write_z_stack(tmp_path / "zstack", stack)
    names = sorted(path.name for path in paths)

    assert names == ["manifest.csv", "slice_0000.cvf1", "slice_0001.cvf1", "slice_0002.cvf1", "yz_slice.pgm"]
    assert np.array_equal(read_cvf1(tmp_path / "zstack" / "slice_0001.cvf1").samples, stack.fields[1].samples)
    assert read_pgm(tmp_path / "zstack" / "yz_slice.pgm").shape == (3, obs.ny)

    manifest = pd.read_csv(tmp_path / "zstack" / "manifest.csv")

    assert list(manifest.columns) == ["delta_f_m", "ring_rms_radius_m"]
    assert manifest["delta_f_m"].tolist() == DELTA_FS
