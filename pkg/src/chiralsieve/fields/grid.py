from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import ConfigError


@dataclass(frozen=True)
class GridSpec:
    """A uniform sampling grid in physical coordinates.

    Sample (i, j) sits at ``origin + ((i - nx/2) * pitch_x, (j - ny/2) * pitch_y)``,
    so the origin is the sample with index (nx // 2, ny // 2) for even sizes.
    The origin is the beam axis for every azimuthal operation.

    Attributes:
        nx: Number of samples along x.
        ny: Number of samples along y.
        pitch_x: Sample spacing along x in meters.
        pitch_y: Sample spacing along y in meters.
        origin: Physical coordinates of the grid center in meters.
    """

    nx: int
    ny: int
    pitch_x: float
    pitch_y: float
    origin: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):

        if int(self.nx) != self.nx or int(self.ny) != self.ny:
            raise ConfigError(f"grid sizes must be integers, got {self.nx}x{self.ny}")

        if self.nx < 2 or self.ny < 2:
            raise ConfigError(f"grid needs at least 2x2 samples, got {self.nx}x{self.ny}")

        if not (self.pitch_x > 0 and self.pitch_y > 0):
            raise ConfigError(f"pitches must be positive, got {self.pitch_x}, {self.pitch_y}")

        if not all(np.isfinite(self.origin)):
            raise ConfigError(f"grid origin must be finite, got {self.origin}")

        # Normalize so that equal grids compare equal
        object.__setattr__(self, "nx", int(self.nx))
        object.__setattr__(self, "ny", int(self.ny))
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def square(cls, n: int, window: float, origin: Tuple[float, float] = (0.0, 0.0)):
        """Create an n x n grid whose extent is `window` meters on each side."""
        return cls(nx=n, ny=n, pitch_x=window / n, pitch_y=window / n, origin=origin)

    @property
    def shape(self) -> Tuple[int, int]:
        """Array shape of the samples, rows first: (ny, nx)."""
        return self.ny, self.nx

    @property
    def pixel_area(self) -> float:
        return self.pitch_x * self.pitch_y

    @property
    def extent(self) -> Tuple[float, float, float, float]:
        """Physical (xmin, xmax, ymin, ymax) of the sample centers."""

        x = self.x_coords()
        y = self.y_coords()

        return float(x[0]), float(x[-1]), float(y[0]), float(y[-1])

    @property
    def is_square(self) -> bool:
        return self.nx == self.ny and self.pitch_x == self.pitch_y

    def x_coords(self) -> np.ndarray:
        return self.origin[0] + (np.arange(self.nx) - self.nx / 2) * self.pitch_x

    def y_coords(self) -> np.ndarray:
        return self.origin[1] + (np.arange(self.ny) - self.ny / 2) * self.pitch_y

    def coords(self) -> Tuple[np.ndarray, np.ndarray]:
        """Physical coordinates of every sample as two (ny, nx) arrays."""
        return np.meshgrid(self.x_coords(), self.y_coords(), indexing="xy")

    def relative_coords(self) -> Tuple[np.ndarray, np.ndarray]:
        """Coordinates relative to the grid origin (the beam axis)."""

        x, y = self.coords()

        return x - self.origin[0], y - self.origin[1]

    def polar_coords(self) -> Tuple[np.ndarray, np.ndarray]:
        """Radius and azimuth about the beam axis for every sample."""

        x, y = self.relative_coords()

        return np.hypot(x, y), np.arctan2(y, x)

    def to_physical(self, i, j):
        """Map (possibly fractional) sample indices to physical coordinates."""

        x = self.origin[0] + (np.asarray(i) - self.nx / 2) * self.pitch_x
        y = self.origin[1] + (np.asarray(j) - self.ny / 2) * self.pitch_y

        return x, y

    def to_index(self, x, y):
        """Map physical coordinates to fractional sample indices (inverse of `to_physical`)."""

        i = (np.asarray(x) - self.origin[0]) / self.pitch_x + self.nx / 2
        j = (np.asarray(y) - self.origin[1]) / self.pitch_y + self.ny / 2

        return i, j

    def max_inscribed_radius(self) -> float:
        """Largest circle about the origin whose samples stay inside the grid."""

        # The upper edge is one sample closer to the origin than the lower edge
        x_span = (self.nx / 2 - 1) * self.pitch_x
        y_span = (self.ny / 2 - 1) * self.pitch_y

        return float(min(x_span, y_span))
