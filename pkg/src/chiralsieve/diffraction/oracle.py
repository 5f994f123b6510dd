"""Brute-force Fresnel summation over quadrature nodes covering every pinhole.

Used to validate the form-factor model of `propagate_sieve`; it makes no
small-pinhole assumption beyond the paraxial kernel itself.
"""

import logging

import numpy as np

from ..errors import ConfigError
from ..fields import ComplexField
from ..fields import GridSpec
from ..masks import PinholeMask
from .setup import OpticalSetup
from .setup import effective_geometry
from .sieve import evaluate_rows


logger = logging.getLogger(__name__)


def ring_nodes(q_radial: int) -> np.ndarray:
    """Equal-area quadrature nodes on the unit disc.

    Ring 0 is the center; ring r >= 1 carries 6r nodes. Each node stands for
    an equal share of the disc, and the nodes of a ring sit at the radius
    that halves the area of the ring's annulus.

    Args:
        q_radial: Number of rings including the center.

    Returns:
        A (n, 2) array of node coordinates, n = 3 q (q - 1) + 1.
    """

    if int(q_radial) != q_radial or q_radial < 1:
        raise ConfigError(f"q_radial must be a positive integer, got {q_radial}")

    counts = [1] + [6 * r for r in range(1, int(q_radial))]
    total = sum(counts)

    nodes = [(0.0, 0.0)]
    before = 1

    for r, count in enumerate(counts[1:], start=1):

        radius = np.sqrt((before + count / 2) / total)

        # Alternate rings are staggered by half a node spacing
        angles = 2 * np.pi * (np.arange(count) + 0.5 * (r % 2)) / count
        nodes.extend(zip(radius * np.cos(angles), radius * np.sin(angles)))

        before += count

    return np.array(nodes)


def propagate_oracle(
    mask: PinholeMask, setup: OpticalSetup, obs: GridSpec, q_radial: int, threads: int = 1
) -> ComplexField:
    """Fresnel field of a mask summed over quadrature nodes inside each pinhole.

    Every node carries the weight pi a^2 / n of its pinhole; with
    ``q_radial = 1`` the sum reduces to point sources at the pinhole centers.

    Args:
        mask: The pinhole mask.
        setup: The optical setup; its astigmatism, if any, is ignored.
        obs: Observation grid in observation-plane coordinates.
        q_radial: Number of quadrature rings per pinhole, center included.
        threads: Number of worker threads.

    Returns:
        The complex field on `obs`.
    """

    geometry = effective_geometry(setup)
    z, k = geometry.z_eff, setup.k

    unit = ring_nodes(q_radial)
    prefactor = 1 / (1j * setup.wavelength * z)

    def kernel(x, y):

        ux, uy = geometry.mag * x, geometry.mag * y
        acc = np.zeros(x.shape, dtype=np.complex128)

        for pinhole in mask.pinholes:

            weight = pinhole.area / len(unit)

            for nx, ny in unit:
                r2 = (ux - pinhole.x - pinhole.radius * nx) ** 2 + (uy - pinhole.y - pinhole.radius * ny) ** 2
                acc += weight * prefactor * np.exp(1j * k * r2 / (2 * z))

        return acc

    samples = evaluate_rows(obs, kernel, threads=threads)

    if geometry.chirp_sign < 0:
        samples = samples.conj()

    logger.debug("oracle summed %d nodes per pinhole over %d pinholes", len(unit), len(mask))

    return ComplexField(grid=obs, samples=samples, z_label=setup.plane_label)
