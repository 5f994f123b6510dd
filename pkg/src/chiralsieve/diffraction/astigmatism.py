"""Astigmatic transformation of vortex fields and dark-stripe analysis.

An astigmatic focus turns a vortex of charge ell into a Hermite-Gauss-like
pattern with |ell| dark stripes; the tilt of the pattern gives the sign.
"""

import logging
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..errors import NoPattern
from ..fields import ComplexField
from ..fields import GridSpec
from ..fields import interpolate
from ..fields import rotate_field
from ..masks import PinholeMask
from .setup import OpticalSetup
from .setup import effective_geometry
from .sieve import check_fresnel_numbers
from .sieve import evaluate_rows
from .sieve import jinc
from .sieve import propagate_sieve


logger = logging.getLogger(__name__)

# A minimum between two maxima is dark below this fraction of the weaker maximum
DARK_FRACTION = 0.2

# Maxima below this fraction of the profile peak are background
BRIGHT_FRACTION = 0.01


def astigmatic_propagate(
    mask: PinholeMask, setup: OpticalSetup, obs: GridSpec, threads: int = 1
) -> ComplexField:
    """Field of a mask observed through an astigmatic focus.

    In mask coordinates rotated by the astigmatism orientation, each axis is
    propagated with its own effective distance, magnification and kernel sign.

    Raises:
        ConfigError: If the setup carries no astigmatism.
        FresnelNumberError: If a pinhole is too large for the form-factor model.
    """

    if setup.astig is None:
        raise ConfigError("astigmatic propagation needs an astig section in the setup")

    setup_x, setup_y = setup.principal_setups()

    # Isotropic limit
    if setup_x == setup_y:
        return propagate_sieve(mask, setup_x, obs, threads=threads)

    gx, gy = effective_geometry(setup_x), effective_geometry(setup_y)
    k = setup.k

    check_fresnel_numbers(mask, setup.wavelength, min(gx.z_eff, gy.z_eff))

    cos, sin = np.cos(setup.astig.orientation), np.sin(setup.astig.orientation)

    # Centers in the astigmatic frame
    cx = cos * mask.centers[:, 0] + sin * mask.centers[:, 1]
    cy = -sin * mask.centers[:, 0] + cos * mask.centers[:, 1]

    prefactor = np.exp(-0.25j * np.pi * (gx.chirp_sign + gy.chirp_sign)) / (
        setup.wavelength * np.sqrt(gx.z_eff * gy.z_eff)
    )
    amplitudes = prefactor * np.pi * mask.radii ** 2

    def kernel(x, y):

        ux = gx.mag * (cos * x + sin * y)
        uy = gy.mag * (-sin * x + cos * y)
        acc = np.zeros(x.shape, dtype=np.complex128)

        for j, amplitude in enumerate(amplitudes):

            dx, dy = ux - cx[j], uy - cy[j]
            phase = gx.chirp_sign * dx ** 2 / gx.z_eff + gy.chirp_sign * dy ** 2 / gy.z_eff
            form = jinc(k * mask.radii[j] * np.hypot(dx / gx.z_eff, dy / gy.z_eff))
            acc += amplitude * np.exp(0.5j * k * phase) * form

        return acc

    samples = evaluate_rows(obs, kernel, threads=threads)

    logger.debug(
        "astigmatic propagation: z_x=%g m, z_y=%g m, orientation=%g rad",
        gx.z_eff,
        gy.z_eff,
        setup.astig.orientation,
    )

    return ComplexField(grid=obs, samples=samples, z_label=setup.plane_label)


def astigmatic_transform(f: ComplexField, orientation: float) -> ComplexField:
    """Ideal cylindrical mode conversion of a sampled field.

    The field is Fourier transformed along the axis at `orientation` and left
    untouched along the perpendicular axis, at the scale that maps a Gaussian
    of waist ``pitch * sqrt(n / pi)`` onto itself. An LG mode of that waist
    becomes an HG mode whose |ell| dark stripes are tilted by +-45 degrees
    from `orientation`, the sign following the sign of ell.

    Args:
        f: The field, on a square grid.
        orientation: Direction of the transformed axis in radians.

    Returns:
        The transformed field on the same grid.
    """

    if not f.grid.is_square:
        raise ConfigError("astigmatic_transform needs a square grid")

    aligned = rotate_field(f, orientation)

    spectrum = np.fft.fftshift(
        np.fft.fft(np.fft.ifftshift(aligned.samples, axes=1), axis=1, norm="ortho"), axes=1
    )

    return rotate_field(aligned.with_samples(spectrum), -orientation)


def matched_waist(grid: GridSpec) -> float:
    """Waist that `astigmatic_transform` maps onto itself."""
    return grid.pitch_x * np.sqrt(grid.nx / np.pi)


def intensity_centroid(f: ComplexField) -> Tuple[float, float]:
    """Intensity-weighted mean position in physical coordinates."""

    intensity = f.intensity
    total = intensity.sum()

    if total == 0:
        raise NoPattern("the field carries no intensity")

    x, y = f.grid.coords()

    return float((x * intensity).sum() / total), float((y * intensity).sum() / total)


def stripe_normal(f: ComplexField) -> float:
    """Major axis of the intensity second moment, in [0, pi).

    For an HG-like stripe pattern this is the direction across the stripes.
    """

    x0, y0 = intensity_centroid(f)
    x, y = f.grid.coords()
    x, y = x - x0, y - y0
    intensity = f.intensity

    mxx = (intensity * x * x).sum()
    myy = (intensity * y * y).sum()
    mxy = (intensity * x * y).sum()

    return float(np.mod(0.5 * np.arctan2(2 * mxy, mxx - myy), np.pi))


def stripe_profile(f: ComplexField, orientation: float, half_length: float = None) -> np.ndarray:
    """Intensity along the line through the centroid in direction `orientation`.

    Sampled at half the grid pitch; `half_length` defaults to the largest
    length that keeps the line inside the grid.
    """

    x0, y0 = intensity_centroid(f)

    if half_length is None:
        offset = np.hypot(x0 - f.grid.origin[0], y0 - f.grid.origin[1])
        half_length = f.grid.max_inscribed_radius() - offset

    step = min(f.grid.pitch_x, f.grid.pitch_y) / 2

    if not half_length > step:
        raise NoPattern(f"profile half-length {half_length:g} m is shorter than the sampling step")

    t = np.arange(-half_length, half_length + step / 2, step)
    values = interpolate(f, x0 + t * np.cos(orientation), y0 + t * np.sin(orientation))

    return np.abs(values) ** 2


def count_dark_stripes(f: ComplexField, orientation: float, half_length: float = None) -> int:
    """Number of dark stripes crossed by the profile line in direction `orientation`.

    Bright maxima are strict local maxima above 1% of the profile peak. The
    deepest point between two consecutive bright maxima is a dark stripe when
    its intensity is below 20% of both maxima.

    Raises:
        NoPattern: If the profile has no bright maximum.
    """

    profile = stripe_profile(f, orientation, half_length=half_length)
    inner = profile[1:-1]

    is_max = (inner > profile[:-2]) & (inner > profile[2:])
    peaks = np.flatnonzero(is_max & (inner >= BRIGHT_FRACTION * profile.max())) + 1

    if len(peaks) == 0:
        raise NoPattern("no bright maximum along the profile line")

    dark = 0

    for left, right in zip(peaks[:-1], peaks[1:]):

        valley = profile[left : right + 1].min()

        if valley < DARK_FRACTION * min(profile[left], profile[right]):
            dark += 1

    logger.debug("profile at %.3f rad: %d bright maxima, %d dark stripes", orientation, len(peaks), dark)

    return dark
