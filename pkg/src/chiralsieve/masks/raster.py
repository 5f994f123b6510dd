import logging

import numpy as np

from ..errors import ExtentError
from ..errors import ResolutionError
from ..fields import ComplexField
from ..fields import GridSpec
from .mask import PinholeMask


logger = logging.getLogger(__name__)

# Minimum number of samples per pinhole radius
MIN_SAMPLES_PER_RADIUS = 4


def rasterize(mask: PinholeMask, grid: GridSpec) -> ComplexField:
    """Binary amplitude image of a mask.

    A sample is 1 when its center lies inside any pinhole disc and 0 otherwise.

    Args:
        mask: The mask.
        grid: The sampling grid, in mask-plane coordinates.

    Returns:
        The real, binary field.

    Raises:
        ResolutionError: If the pitch exceeds a quarter of the smallest pinhole radius.
        ExtentError: If a pinhole is clipped by the grid extent.
    """

    samples = np.zeros(grid.shape, dtype=np.complex128)

    if len(mask) == 0:
        return ComplexField(grid=grid, samples=samples)

    smallest = float(mask.radii.min())
    pitch = max(grid.pitch_x, grid.pitch_y)

    if pitch > smallest / MIN_SAMPLES_PER_RADIUS:
        raise ResolutionError(
            f"raster pitch {pitch:g} m is coarser than a quarter of the "
            f"smallest pinhole radius ({smallest:g} m)"
        )

    x_min, x_max, y_min, y_max = grid.extent

    for index, pinhole in enumerate(mask.pinholes):

        if (
            pinhole.x - pinhole.radius < x_min
            or pinhole.x + pinhole.radius > x_max
            or pinhole.y - pinhole.radius < y_min
            or pinhole.y + pinhole.radius > y_max
        ):
            raise ExtentError(f"pinhole {index} at ({pinhole.x:g}, {pinhole.y:g}) m is clipped by the grid")

        # Index box around the disc
        i0, j0 = grid.to_index(pinhole.x - pinhole.radius, pinhole.y - pinhole.radius)
        i1, j1 = grid.to_index(pinhole.x + pinhole.radius, pinhole.y + pinhole.radius)
        i0, j0 = max(int(np.floor(i0)), 0), max(int(np.floor(j0)), 0)
        i1, j1 = min(int(np.ceil(i1)) + 1, grid.nx), min(int(np.ceil(j1)) + 1, grid.ny)

        x, y = grid.to_physical(np.arange(i0, i1)[None, :], np.arange(j0, j1)[:, None])
        inside = (x - pinhole.x) ** 2 + (y - pinhole.y) ** 2 <= pinhole.radius ** 2

        samples[j0:j1, i0:i1][inside] = 1.0

    logger.debug("rasterized %d pinholes on a %dx%d grid", len(mask), grid.nx, grid.ny)

    return ComplexField(grid=grid, samples=samples)
