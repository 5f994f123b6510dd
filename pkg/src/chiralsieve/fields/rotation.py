import logging

import numpy as np
from scipy.ndimage import map_coordinates

from ..errors import ConfigError
from ..errors import WindowError
from .field import ComplexField


logger = logging.getLogger(__name__)

# Fractional indices closer than this to an integer are snapped onto the lattice,
# so lattice-preserving rotations (multiples of pi/2) permute samples exactly.
_SNAP_TOLERANCE = 1e-9


def interpolate(f: ComplexField, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of the complex samples at physical points.

    Real and imaginary parts are interpolated separately. Points outside the
    sampled domain evaluate to zero.

    Args:
        f: The field to interpolate.
        x: Physical x coordinates (any shape).
        y: Physical y coordinates (same shape as `x`).

    Returns:
        Complex values with the shape of `x`.
    """

    i, j = f.grid.to_index(x, y)

    # Snap near-lattice coordinates
    i = np.where(np.abs(i - np.round(i)) < _SNAP_TOLERANCE, np.round(i), i)
    j = np.where(np.abs(j - np.round(j)) < _SNAP_TOLERANCE, np.round(j), j)

    coordinates = np.stack([np.ravel(j), np.ravel(i)])

    # Rows of `samples` are y and columns are x
    options = dict(order=1, mode="constant", cval=0.0, prefilter=False)
    real = map_coordinates(f.samples.real, coordinates, **options)
    imag = map_coordinates(f.samples.imag, coordinates, **options)

    # map_coordinates pads with cval only beyond the last sample; clip the
    # partial cell between the last sample and one pitch further as well
    outside = (
        (coordinates[0] < 0)
        | (coordinates[0] > f.grid.ny - 1)
        | (coordinates[1] < 0)
        | (coordinates[1] > f.grid.nx - 1)
    )

    values = real + 1j * imag
    values[outside] = 0.0

    return values.reshape(np.shape(x))


def rotate_field(f: ComplexField, angle: float) -> ComplexField:
    """Rotate a field about the beam axis.

    The output at polar point (rho, theta) equals the input at (rho, theta + angle),
    so a mode carrying exp(i*ell*theta) picks up the factor exp(i*ell*angle).

    Args:
        f: The field to rotate.
        angle: Rotation angle in radians.

    Returns:
        The rotated field on the same grid.
    """

    if not np.isfinite(angle):
        raise ConfigError(f"rotation angle must be finite, got {angle}")

    if angle == 0:
        return f

    x, y = f.grid.relative_coords()
    cos, sin = np.cos(angle), np.sin(angle)

    # Source point: the output point rotated counterclockwise by `angle`
    x_src = f.grid.origin[0] + cos * x - sin * y
    y_src = f.grid.origin[1] + sin * x + cos * y

    return f.with_samples(interpolate(f, x_src, y_src))


def superpose_rotations(f: ComplexField, m: int) -> ComplexField:
    """Sum of m copies of a field rotated by 2*pi*s/m, s = 0..m-1.

    No normalization is applied: a mode whose charge is a multiple of m comes
    out scaled by m, every other mode cancels.
    """

    if int(m) != m or m < 1:
        raise ConfigError(f"rotation order m must be a positive integer, got {m}")

    total = np.zeros(f.grid.shape, dtype=np.complex128)

    # Fixed summation order over s
    for s in range(int(m)):
        total += rotate_field(f, 2 * np.pi * s / m).samples

    return f.with_samples(total)


def sample_circle(f: ComplexField, radius: float, n_samples: int) -> np.ndarray:
    """Field values on a circle about the beam axis, counterclockwise from +x.

    Raises:
        WindowError: If the circle leaves the sampled domain.
    """

    if n_samples < 1:
        raise ConfigError(f"n_samples must be positive, got {n_samples}")

    if not 0 < radius <= f.grid.max_inscribed_radius():
        raise WindowError(
            f"circle of radius {radius:g} m does not fit inside the grid "
            f"(largest inscribed radius {f.grid.max_inscribed_radius():g} m)"
        )

    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    x = f.grid.origin[0] + radius * np.cos(theta)
    y = f.grid.origin[1] + radius * np.sin(theta)

    return interpolate(f, x, y)
