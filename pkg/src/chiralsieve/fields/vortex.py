import logging
from dataclasses import dataclass

import numpy as np

from ..errors import AmplitudeTooLow
from ..errors import Undersampled
from .field import ComplexField
from .rotation import sample_circle


logger = logging.getLogger(__name__)

# Minimum modulus on the circle relative to its maximum
_MIN_RELATIVE_AMPLITUDE = 1e-6

# Largest accepted phase step between neighbouring circle samples
_MAX_PHASE_STEP = np.pi / 2

# Rounding residuals at or above this raise, above the warning level they log
_MAX_RESIDUAL = 0.25
_WARN_RESIDUAL = 0.1

# Relative tolerance under which neighbouring intensities form a plateau
_PLATEAU_RTOL = 1e-12


@dataclass(frozen=True)
class Winding:
    """Result of a phase-winding measurement.

    Attributes:
        charge: The winding number (topological charge) around the circle.
        residual: Accumulated phase / 2pi minus `charge`, before rounding.
    """

    charge: int
    residual: float

    def __int__(self):
        return self.charge


def measure_winding(
    f: ComplexField, radius: float, n_samples: int, expected: int = None
) -> Winding:
    """Measure the phase winding of a field on a circle about the beam axis.

    The phase is unwrapped counterclockwise around the circle and the total is
    divided by 2pi.

    Args:
        f: The field.
        radius: Circle radius in meters.
        n_samples: Number of samples on the circle.
        expected: Optional expected charge, used to check the sampling density.

    Returns:
        The rounded winding number and the pre-rounding residual.

    Raises:
        AmplitudeTooLow: If the field nearly vanishes somewhere on the circle.
        Undersampled: If the circle is sampled too coarsely for the phase structure.
    """

    if expected is not None and n_samples < 8 * (abs(expected) + 1):
        raise Undersampled(
            f"{n_samples} samples cannot resolve a charge of {expected}; "
            f"use at least {8 * (abs(expected) + 1)}"
        )

    values = sample_circle(f, radius, n_samples)
    modulus = np.abs(values)

    if modulus.max() == 0 or modulus.min() < _MIN_RELATIVE_AMPLITUDE * modulus.max():
        raise AmplitudeTooLow(
            f"field amplitude on the circle of radius {radius:g} m drops to "
            f"{modulus.min():.3g} (max {modulus.max():.3g}); winding is undefined near a nodal line"
        )

    # Phase steps between consecutive samples, closing the loop
    steps = np.angle(np.roll(values, -1) / values)

    if np.max(np.abs(steps)) > _MAX_PHASE_STEP:
        raise Undersampled(
            f"phase step of {np.max(np.abs(steps)):.3f} rad between circle samples "
            f"exceeds pi/2 at radius {radius:g} m; increase n_samples"
        )

    turns = float(np.sum(steps) / (2 * np.pi))
    charge = int(np.round(turns))
    residual = turns - charge

    if abs(residual) >= _MAX_RESIDUAL:
        raise Undersampled(f"winding residual {residual:.3f} is too large to round safely")

    if abs(residual) > _WARN_RESIDUAL:
        logger.warning("winding residual %.3f at radius %g m", residual, radius)

    logger.debug("winding %d (residual %.2e) at radius %g m", charge, residual, radius)

    return Winding(charge=charge, residual=residual)


def phase_winding(f: ComplexField, radius: float, n_samples: int, expected: int = None) -> int:
    """The topological charge of a field on a circle; see `measure_winding`."""
    return measure_winding(f, radius, n_samples, expected=expected).charge


def angular_peak_count(
    f: ComplexField, radius: float, n_samples: int, expected: int = None
) -> int:
    """Count the bright dots of a necklace ring.

    Counts strict local maxima of |f|^2 on a circle about the beam axis with
    periodic boundary. Runs of equal samples form a plateau that counts once.

    Raises:
        Undersampled: If `expected` is given and `n_samples < 4 * expected`.
    """

    if expected is not None and n_samples < 4 * expected:
        raise Undersampled(
            f"{n_samples} samples cannot resolve {expected} peaks; use at least {4 * expected}"
        )

    intensity = np.abs(sample_circle(f, radius, n_samples)) ** 2
    tolerance = _PLATEAU_RTOL * max(float(intensity.max()), np.finfo(float).tiny)

    # Collapse plateaus: keep one sample per run of (nearly) equal neighbours
    keep = np.abs(intensity - np.roll(intensity, 1)) > tolerance

    if not np.any(keep):
        return 0

    levels = intensity[keep]

    if len(levels) < 3:
        # Two levels on a loop form one maximum and one minimum
        return 1 if len(levels) == 2 else 0

    peaks = (levels > np.roll(levels, 1)) & (levels > np.roll(levels, -1))

    return int(np.count_nonzero(peaks))
