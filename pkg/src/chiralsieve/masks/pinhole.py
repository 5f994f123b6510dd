from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import Sequence
from typing import Tuple

import numpy as np

from ..errors import ConfigError


MOTIF_KINDS = ("explicit", "logarithmic", "archimedean", "fermat")


@dataclass(frozen=True)
class Pinhole:
    """A circular aperture in the mask plane.

    Attributes:
        x: Center x coordinate in meters.
        y: Center y coordinate in meters.
        radius: Aperture radius in meters.
    """

    x: float
    y: float
    radius: float

    def __post_init__(self):

        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ConfigError(f"pinhole center must be finite, got ({self.x}, {self.y})")

        if not self.radius > 0:
            raise ConfigError(f"pinhole radius must be positive, got {self.radius}")

        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def area(self) -> float:
        return float(np.pi * self.radius ** 2)

    def rotated(self, angle: float) -> "Pinhole":
        """This pinhole rotated counterclockwise about the origin."""

        cos, sin = np.cos(angle), np.sin(angle)

        return Pinhole(x=cos * self.x - sin * self.y, y=sin * self.x + cos * self.y, radius=self.radius)

    def mirrored(self) -> "Pinhole":
        """Mirror image about the x-axis."""
        return Pinhole(x=self.x, y=-self.y, radius=self.radius)


@dataclass(frozen=True)
class MotifSpec:
    """Recipe of a motif: the pinhole sub-pattern that is replicated around the axis.

    Attributes:
        kind: One of "explicit", "logarithmic", "archimedean" or "fermat".
        N: Number of pinholes in the motif.
        params: Kind-specific parameters, keyed by their recipe names.
        pinhole_radius: Radius of every pinhole in meters.
        handedness: +1 when the pinhole angle increases counterclockwise with n, -1 mirrored.
    """

    kind: str
    N: int
    params: Dict[str, Any] = field(hash=False)
    pinhole_radius: float
    handedness: int = 1

    def __post_init__(self):

        if self.kind not in MOTIF_KINDS:
            raise ConfigError(f"unknown motif kind {self.kind!r}; expected one of {MOTIF_KINDS}")

        if int(self.N) != self.N or self.N < 1:
            raise ConfigError(f"motif needs at least one pinhole, got N={self.N}")

        if not self.pinhole_radius > 0:
            raise ConfigError(f"pinhole radius must be positive, got {self.pinhole_radius}")

        if self.handedness not in (1, -1):
            raise ConfigError(f"handedness must be +1 or -1, got {self.handedness}")

    def mirrored(self) -> "MotifSpec":
        """The recipe of the mirror-image motif."""

        params = dict(self.params)

        # Explicit points carry their own geometry
        if self.kind == "explicit":
            params["points_m"] = [[x, -y] for x, y in params["points_m"]]
            handedness = self.handedness
        else:
            handedness = -self.handedness

        return MotifSpec(
            kind=self.kind,
            N=self.N,
            params=params,
            pinhole_radius=self.pinhole_radius,
            handedness=handedness,
        )


@dataclass(frozen=True)
class Motif:
    """A motif recipe together with the pinholes it produces."""

    spec: MotifSpec
    pinholes: Tuple[Pinhole, ...]

    def __len__(self):
        return len(self.pinholes)

    def __iter__(self):
        return iter(self.pinholes)

    def mirrored(self) -> "Motif":
        return Motif(spec=self.spec.mirrored(), pinholes=tuple(p.mirrored() for p in self.pinholes))


def polar_pinholes(
    radii: Sequence[float], angles: Sequence[float], pinhole_radius: float
) -> Tuple[Pinhole, ...]:
    """Pinholes at the given polar coordinates about the origin."""

    radii = np.asarray(radii, dtype=float)
    angles = np.asarray(angles, dtype=float)

    return tuple(
        Pinhole(x=r * np.cos(a), y=r * np.sin(a), radius=pinhole_radius)
        for r, a in zip(radii, angles)
    )
