import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from typing import List

import numpy as np

from ..errors import ConfigError
from .grid import GridSpec


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """A sampled 2D complex amplitude on a physical grid.

    Attributes:
        grid: The sampling grid.
        samples: Complex amplitudes of shape ``grid.shape`` (rows are y, columns are x).
        z_label: The plane the field belongs to, in meters. Informational only.
    """

    grid: GridSpec
    samples: np.ndarray = dataclass_field(repr=False)
    z_label: float = 0.0

    def __post_init__(self):

        samples = np.asarray(self.samples, dtype=np.complex128)

        if samples.shape != self.grid.shape:
            raise ConfigError(
                f"field has {samples.shape} samples but the grid expects {self.grid.shape}"
            )

        if not np.all(np.isfinite(samples)):
            raise ConfigError("field samples must be finite")

        # Fields are values: keep a private read-only copy
        samples = samples.copy()
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def zeros(cls, grid: GridSpec, z_label: float = 0.0) -> "ComplexField":
        return cls(grid=grid, samples=np.zeros(grid.shape, dtype=np.complex128), z_label=z_label)

    @classmethod
    def from_function(cls, grid: GridSpec, func, z_label: float = 0.0) -> "ComplexField":
        """Sample `func(x, y)` on the grid, with x and y relative to the grid origin."""

        x, y = grid.relative_coords()

        return cls(grid=grid, samples=func(x, y), z_label=z_label)

    def with_samples(self, samples: np.ndarray) -> "ComplexField":
        """A new field on the same grid and plane holding `samples`."""
        return ComplexField(grid=self.grid, samples=samples, z_label=self.z_label)

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    @property
    def phase(self) -> np.ndarray:
        """Phase in [-pi, pi], reported everywhere including near-zero samples."""
        return np.angle(self.samples)

    def conjugate(self) -> "ComplexField":
        return self.with_samples(np.conj(self.samples))

    def __add__(self, other: "ComplexField") -> "ComplexField":

        if other.grid != self.grid:
            raise ConfigError("cannot add fields sampled on different grids")

        return self.with_samples(self.samples + other.samples)

    def __mul__(self, scalar: complex) -> "ComplexField":
        return self.with_samples(self.samples * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ComplexField[{self.grid.nx}x{self.grid.ny}, z={self.z_label:g} m]"


def field_power(f: ComplexField) -> float:
    """Total power: sum of |samples|^2 times the pixel area."""
    return float(np.sum(f.intensity) * f.grid.pixel_area)


def radial_profile(f: ComplexField, n_bins: int, r_max: float = None) -> np.ndarray:
    """Azimuthally averaged intensity over annuli of equal width about the beam axis.

    Args:
        f: The field.
        n_bins: Number of annuli.
        r_max: Outer radius of the last annulus. Defaults to the largest circle
            inscribed in the grid.

    Returns:
        Array of shape (n_bins, 2) holding (annulus center radius, mean intensity) rows.
        Annuli holding no sample report a mean of zero.
    """

    if n_bins < 1:
        raise ConfigError(f"n_bins must be positive, got {n_bins}")

    if r_max is None:
        r_max = f.grid.max_inscribed_radius()

    rho, _ = f.grid.polar_coords()
    width = r_max / n_bins

    # Assign every sample inside r_max to its annulus
    inside = rho < r_max
    bins = np.floor(rho[inside] / width).astype(np.int64)

    sums = np.bincount(bins, weights=f.intensity[inside], minlength=n_bins)[:n_bins]
    counts = np.bincount(bins, minlength=n_bins)[:n_bins]

    means = np.divide(sums, counts, out=np.zeros(n_bins), where=counts > 0)
    centers = (np.arange(n_bins) + 0.5) * width

    return np.stack([centers, means], axis=1)


def ring_radii(f: ComplexField, n_bins: int, count: int = None, r_max: float = None) -> List[float]:
    """Radii of the bright rings of a field, innermost first.

    A ring is a strict local maximum of the radial profile. When `count` is
    given only the `count` brightest rings are kept.
    """

    profile = radial_profile(f, n_bins, r_max=r_max)
    means = profile[:, 1]

    # Strict local maxima of the profile (the first bin may be a maximum on axis)
    left = np.concatenate([[-np.inf], means[:-1]])
    right = np.concatenate([means[1:], [-np.inf]])
    peaks = np.flatnonzero((means > left) & (means > right))

    if count is not None:
        brightest = peaks[np.argsort(means[peaks], kind="stable")[::-1][:count]]
        peaks = np.sort(brightest)

    logger.debug("found %d ring(s) in a %d-bin profile", len(peaks), n_bins)

    return [float(r) for r in profile[peaks, 0]]
