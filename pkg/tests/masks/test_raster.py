import numpy as np
import pytest

from chiralsieve.errors import ExtentError
from chiralsieve.errors import ResolutionError
from chiralsieve.fields import GridSpec
from chiralsieve.fields import rotate_field
from chiralsieve.masks import Pinhole
from chiralsieve.masks import PinholeMask
from chiralsieve.masks import explicit_motif
from chiralsieve.masks import rasterize
from chiralsieve.masks import replicate
from chiralsieve.masks import rotate_mask


@pytest.fixture
def single():
    return PinholeMask(pinholes=(Pinhole(0.0, 0.0, 1.05e-6),))


def test_raster_fills_disc(single):
    grid = GridSpec.square(64, 6.4e-6)
    image = rasterize(single, grid).samples

    # lattice points with i^2 + j^2 <= 110
    assert np.count_nonzero(image) == 349
    assert set(np.unique(image)) == {0, 1}


def test_raster_follows_pinhole_position():
    grid = GridSpec.square(64, 6.4e-6)
    mask = PinholeMask(pinholes=(Pinhole(1.5e-6, -1e-6, 0.52e-6),))

    image = np.abs(rasterize(mask, grid).samples)
    x, y = grid.coords()

    assert np.sum(image * x) / image.sum() == pytest.approx(1.5e-6)
    assert np.sum(image * y) / image.sum() == pytest.approx(-1e-6)


def test_raster_needs_four_samples_per_radius(single):
    with pytest.raises(ResolutionError):
        rasterize(single, GridSpec.square(16, 6.4e-6))


def test_raster_rejects_clipped_pinhole(single):
    with pytest.raises(ExtentError):
        rasterize(single, GridSpec.square(16, 1.6e-6))


def test_raster_of_empty_mask():
    image = rasterize(PinholeMask(pinholes=()), GridSpec.square(8, 1e-6))
    assert not image.samples.any()


@pytest.mark.parametrize("m", [3, 5])
def test_raster_commutes_with_symmetry_rotation(m):
    motif = explicit_motif([(10e-6, 0.0), (6e-6, 4e-6)], 300e-9)
    mask = replicate(motif, m)
    grid = GridSpec.square(512, 25.6e-6)

    raster = rasterize(mask, grid)
    turned = rasterize(rotate_mask(mask, 2 * np.pi / m), grid)

    # Raster of the turned mask against the raster turned back through interpolation
    interpolated = rotate_field(raster, -2 * np.pi / m)
    differing = np.count_nonzero(np.abs(turned.samples - interpolated.samples) > 0.5)

    perimeter = sum(2 * np.pi * p.radius / grid.pitch_x for p in mask.pinholes)

    assert differing <= perimeter
    assert np.count_nonzero(turned.samples) == pytest.approx(np.count_nonzero(raster.samples), rel=0.02)
