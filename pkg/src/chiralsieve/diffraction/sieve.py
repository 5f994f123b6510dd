import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np
from scipy.special import j1

from ..errors import FresnelNumberError
from ..fields import ComplexField
from ..fields import GridSpec
from ..masks import PinholeMask
from .setup import OpticalSetup
from .setup import effective_geometry


logger = logging.getLogger(__name__)

# Largest pinhole Fresnel number a^2 / (lambda z) the form-factor model accepts
MAX_FRESNEL_NUMBER = 0.1

# Observation rows per work item; fixed so results do not depend on the thread count
CHUNK_ROWS = 16

RowKernel = Callable[[np.ndarray, np.ndarray], np.ndarray]


def jinc(x: np.ndarray) -> np.ndarray:
    """2 J1(x) / x with jinc(0) = 1."""

    x = np.asarray(x, dtype=float)
    safe = np.where(x == 0, 1.0, x)

    return np.where(x == 0, 1.0, 2 * j1(safe) / safe)


def fresnel_numbers(mask: PinholeMask, wavelength: float, z: float) -> np.ndarray:
    return mask.radii ** 2 / (wavelength * z)


def check_fresnel_numbers(mask: PinholeMask, wavelength: float, z: float) -> None:
    """Raise FresnelNumberError unless every pinhole is well inside the far-field regime.

    Warns when the margin to the limit is below 2x.
    """

    if len(mask) == 0:
        return

    largest = float(fresnel_numbers(mask, wavelength, z).max())

    if largest >= MAX_FRESNEL_NUMBER:
        raise FresnelNumberError(
            f"pinhole Fresnel number a^2/(lambda z) = {largest:.3g} is not below {MAX_FRESNEL_NUMBER}; "
            f"use propagate_oracle for this mask"
        )

    if largest >= MAX_FRESNEL_NUMBER / 2:
        logger.warning(
            "pinhole Fresnel number %.3g is within 2x of the form-factor limit %g", largest, MAX_FRESNEL_NUMBER
        )


def evaluate_rows(obs: GridSpec, kernel: RowKernel, threads: int = 1) -> np.ndarray:
    """Evaluate `kernel(x, y)` over the observation grid in fixed row chunks.

    Args:
        obs: The observation grid.
        kernel: Maps (rows, nx) coordinate arrays to complex samples.
        threads: Number of worker threads.

    Returns:
        The (ny, nx) complex samples.
    """

    x, y = obs.coords()
    starts = range(0, obs.ny, CHUNK_ROWS)

    def run(start):
        stop = start + CHUNK_ROWS
        return kernel(x[start:stop], y[start:stop])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, starts))

    else:
        chunks = [run(start) for start in starts]

    return np.concatenate(chunks, axis=0)


def propagate_sieve(mask: PinholeMask, setup: OpticalSetup, obs: GridSpec, threads: int = 1) -> ComplexField:
    """Field of a plane-wave-illuminated pinhole mask at the observation plane.

    Each pinhole contributes a Fresnel point source weighted by its area and
    by the far-field form factor of a circular aperture. The sum runs over
    the pinholes in mask order.

    Args:
        mask: The pinhole mask.
        setup: The optical setup; its astigmatism, if any, is ignored.
        obs: Observation grid in observation-plane coordinates.
        threads: Number of worker threads.

    Returns:
        The complex field on `obs`.

    Raises:
        FresnelNumberError: If a pinhole is too large for the form-factor model.
        GeometryError: If the setup has no effective geometry.
    """

    geometry = effective_geometry(setup)
    z, k = geometry.z_eff, setup.k

    check_fresnel_numbers(mask, setup.wavelength, z)

    amplitudes = np.pi * mask.radii ** 2 / (1j * setup.wavelength * z)

    def kernel(x, y):

        ux, uy = geometry.mag * x, geometry.mag * y
        acc = np.zeros(x.shape, dtype=np.complex128)

        for pinhole, amplitude in zip(mask.pinholes, amplitudes):

            r2 = (ux - pinhole.x) ** 2 + (uy - pinhole.y) ** 2
            form = jinc(k * pinhole.radius * np.sqrt(r2) / z)
            acc += amplitude * np.exp(1j * k * r2 / (2 * z)) * form

        return acc

    samples = evaluate_rows(obs, kernel, threads=threads)

    if geometry.chirp_sign < 0:
        samples = samples.conj()

    logger.debug("propagated %d pinholes onto a %dx%d grid (z_eff=%g m)", len(mask), obs.nx, obs.ny, z)

    return ComplexField(grid=obs, samples=samples, z_label=setup.plane_label)
