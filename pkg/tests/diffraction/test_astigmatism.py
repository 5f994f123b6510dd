import numpy as np
import pytest

from chiralsieve.diffraction import Astigmatism
from chiralsieve.diffraction import Lens
from chiralsieve.diffraction import OpticalSetup
from chiralsieve.diffraction import astigmatic_propagate
from chiralsieve.diffraction import astigmatic_transform
from chiralsieve.diffraction import count_dark_stripes
from chiralsieve.diffraction import propagate_sieve
from chiralsieve.diffraction import stripe_normal
from chiralsieve.diffraction.astigmatism import matched_waist
from chiralsieve.errors import ConfigError
from chiralsieve.errors import NoPattern
from chiralsieve.fields import ComplexField
from chiralsieve.fields import GridSpec
from chiralsieve.fields import field_power
from chiralsieve.modes import lg_field

from ..conftest import FOCAL_LENGTH
from ..conftest import WAVELENGTH


@pytest.fixture(scope="module")
def grid():
    return GridSpec.square(512, 10e-9)


def converted(ell, grid, orientation=0.0):
    return astigmatic_transform(lg_field(0, ell, matched_waist(grid), grid), orientation)


def lens(delta_f, astig=None):
    return OpticalSetup(wavelength=WAVELENGTH, model=Lens(f=FOCAL_LENGTH, delta_f=delta_f), astig=astig)


@pytest.mark.parametrize("ell, stripes", [(0, 0), (1, 1), (3, 3), (-3, 3), (11, 11)])
def test_vortex_becomes_stripes(grid, ell, stripes):
    f = converted(ell, grid)

    assert count_dark_stripes(f, stripe_normal(f)) == stripes


def test_stripe_tilt_follows_charge_sign(grid):
    plus = stripe_normal(converted(2, grid))
    minus = stripe_normal(converted(-2, grid))

    assert min(abs(plus - np.pi / 4), abs(plus - 3 * np.pi / 4)) < 0.05
    assert abs(abs(plus - minus) - np.pi / 2) < 0.05


def test_transform_keeps_power(grid):
    f = lg_field(1, 4, matched_waist(grid), grid)
    assert field_power(astigmatic_transform(f, 0.0)) == pytest.approx(field_power(f), rel=1e-9)


def test_transform_axis_rotates_pattern(grid):
    aligned = stripe_normal(converted(3, grid))
    turned = stripe_normal(converted(3, grid, orientation=np.pi / 6))

    difference = np.mod(turned - aligned, np.pi)

    assert min(difference, np.pi - difference) == pytest.approx(np.pi / 6, abs=0.05)


def test_transform_needs_square_grid():
    grid = GridSpec(nx=8, ny=4, pitch_x=1e-9, pitch_y=1e-9)

    with pytest.raises(ConfigError):
        astigmatic_transform(ComplexField.zeros(grid), 0.0)


def test_dark_field_has_no_pattern(grid):
    with pytest.raises(NoPattern):
        count_dark_stripes(ComplexField.zeros(grid), 0.0)


def test_stripes_counted_along_profile():
    grid = GridSpec.square(256, 10e-9)
    x, _ = grid.coords()

    # four bright bands separated by three zeros
    samples = np.sin(2 * np.pi * x / 4e-9) * np.exp(-((x / 3e-9) ** 8))
    f = ComplexField(grid=grid, samples=samples)

    assert count_dark_stripes(f, 0.0, half_length=4e-9) == 3


def test_isotropic_astigmatism_is_plain_propagation(five_pinhole_mask):
    obs = GridSpec.square(32, 12.8e-9)
    astig = Astigmatism(delta_f_x=-33.6e-6, delta_f_y=-33.6e-6, orientation=0.3)

    f = astigmatic_propagate(five_pinhole_mask, lens(-33.6e-6, astig), obs)

    assert np.array_equal(f.samples, propagate_sieve(five_pinhole_mask, lens(-33.6e-6), obs).samples)


@pytest.mark.parametrize("delta_f", [-33.6e-6, 40e-6])
def test_weak_astigmatism_approaches_plain_propagation(fermat_mask, delta_f):
    obs = GridSpec.square(32, 12.8e-9)
    astig = Astigmatism(delta_f_x=delta_f * (1 + 1e-9), delta_f_y=delta_f * (1 - 1e-9), orientation=0.7)

    f = astigmatic_propagate(fermat_mask, lens(delta_f, astig), obs)
    g = propagate_sieve(fermat_mask, lens(delta_f), obs)

    assert np.abs(f.samples - g.samples).max() < 1e-6 * np.abs(g.samples).max()


def test_astigmatic_propagation_needs_astigmatism(five_pinhole_mask):
    with pytest.raises(ConfigError):
        astigmatic_propagate(five_pinhole_mask, lens(-33.6e-6), GridSpec.square(8, 1e-9))
