import logging
import math
from dataclasses import dataclass
from dataclasses import field
from functools import reduce
from typing import Iterable
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
from scipy.spatial import cKDTree

from ..errors import ConfigError
from ..errors import ConstructionError
from ..errors import OverlapError
from .pinhole import Motif
from .pinhole import MotifSpec
from .pinhole import Pinhole


logger = logging.getLogger(__name__)

# Matching tolerance for centers under a symmetry rotation, in meters
SYMMETRY_TOLERANCE = 1e-12

# Centers closer than this to the origin are treated as lying on the rotation axis
AXIS_TOLERANCE = 1e-12


def find_overlaps(centers: np.ndarray, radii: np.ndarray) -> List[Tuple[int, int]]:
    """Index pairs (i < j) of discs whose center distance is below r_i + r_j."""

    if len(centers) < 2:
        return []

    tree = cKDTree(centers)
    candidates = tree.query_pairs(r=2 * float(radii.max()), output_type="ndarray")

    if len(candidates) == 0:
        return []

    i, j = candidates[:, 0], candidates[:, 1]
    distance = np.hypot(*(centers[i] - centers[j]).T)
    bad = distance < radii[i] + radii[j]

    return sorted((int(a), int(b)) for a, b in zip(i[bad], j[bad]))


@dataclass(frozen=True)
class PinholeMask:
    """A binary amplitude sieve: a set of non-overlapping circular pinholes.

    Attributes:
        pinholes: The apertures, in summation order for propagation.
        symmetry_m: Declared rotational order about the origin (1 means none).
        provenance: The (motif recipe, replication order) pairs the mask was built from.
    """

    pinholes: Tuple[Pinhole, ...]
    symmetry_m: int = 1
    provenance: Tuple[Tuple[MotifSpec, int], ...] = field(default=(), compare=False)

    def __post_init__(self):

        object.__setattr__(self, "pinholes", tuple(self.pinholes))
        object.__setattr__(self, "provenance", tuple(self.provenance))

        if int(self.symmetry_m) != self.symmetry_m or self.symmetry_m < 1:
            raise ConfigError(f"symmetry order must be a positive integer, got {self.symmetry_m}")

        pairs = find_overlaps(self.centers, self.radii)

        if pairs:
            raise OverlapError(pairs)

        if self.symmetry_m > 1 and not self.is_symmetric(self.symmetry_m):
            raise ConstructionError(
                f"pinhole centers are not invariant under rotation by 2pi/{self.symmetry_m}"
            )

    def __len__(self):
        return len(self.pinholes)

    def __iter__(self):
        return iter(self.pinholes)

    @property
    def centers(self) -> np.ndarray:
        """Pinhole centers as an (n, 2) array in meters."""
        return np.array([(p.x, p.y) for p in self.pinholes], dtype=float).reshape(-1, 2)

    @property
    def radii(self) -> np.ndarray:
        return np.array([p.radius for p in self.pinholes], dtype=float)

    @property
    def max_radius(self) -> float:
        """Largest distance of any pinhole edge from the origin."""

        if not self.pinholes:
            return 0.0

        return float(np.max(np.hypot(*self.centers.T) + self.radii))

    def is_symmetric(self, m: int, tolerance: float = SYMMETRY_TOLERANCE) -> bool:
        """Whether the center set is invariant under rotation by 2pi k/m for all k."""

        if len(self) == 0 or m == 1:
            return True

        centers = self.centers
        tree = cKDTree(centers)

        for k in range(1, m):

            rotated = rotate_points(centers, 2 * np.pi * k / m)
            distance, index = tree.query(rotated)

            if np.any(distance > tolerance) or np.any(self.radii[index] != self.radii):
                return False

        return True


def rotate_points(points: np.ndarray, angle: float) -> np.ndarray:
    """Rotate (n, 2) points counterclockwise about the origin."""

    cos, sin = np.cos(angle), np.sin(angle)
    rotation = np.array([[cos, -sin], [sin, cos]])

    return points @ rotation.T


MotifLike = Union[Motif, Sequence[Pinhole]]


def _motif_parts(motif: MotifLike) -> Tuple[Tuple[Pinhole, ...], Tuple[Tuple[MotifSpec, int], ...]]:

    if isinstance(motif, Motif):
        return motif.pinholes, ((motif.spec, 1),)

    if isinstance(motif, PinholeMask):
        return motif.pinholes, motif.provenance

    return tuple(motif), ()


def replicate(motif: MotifLike, m: int) -> PinholeMask:
    """Union of m copies of a motif rotated by 2pi s/m about the origin.

    A pinhole centered on the rotation axis maps onto itself and is kept once.

    Args:
        motif: The motif (or any sequence of pinholes).
        m: Rotational order.

    Returns:
        The m-fold symmetric mask.

    Raises:
        OverlapError: If any two pinholes of the result overlap.
    """

    if int(m) != m or m < 1:
        raise ConfigError(f"replication order must be a positive integer, got {m}")

    pinholes, provenance = _motif_parts(motif)

    on_axis = [p for p in pinholes if math.hypot(p.x, p.y) <= AXIS_TOLERANCE]
    off_axis = [p for p in pinholes if math.hypot(p.x, p.y) > AXIS_TOLERANCE]

    copies = list(on_axis)

    # Copy s of the whole motif, then the next copy
    for s in range(int(m)):
        copies.extend(p.rotated(2 * np.pi * s / m) for p in off_axis)

    provenance = tuple((spec, order * int(m)) for spec, order in provenance)

    logger.debug("replicated %d pinholes %d times -> %d pinholes", len(pinholes), m, len(copies))

    return PinholeMask(pinholes=tuple(copies), symmetry_m=int(m), provenance=provenance)


def compound_mask(parts: Iterable[PinholeMask]) -> PinholeMask:
    """Union of several masks; the symmetry order is the gcd of the parts' orders.

    Raises:
        OverlapError: If pinholes of different parts overlap.
    """

    parts = list(parts)

    if not parts:
        raise ConfigError("compound mask needs at least one part")

    if len(parts) == 1:
        return parts[0]

    pinholes = tuple(p for part in parts for p in part.pinholes)
    symmetry_m = reduce(math.gcd, (part.symmetry_m for part in parts))
    provenance = tuple(entry for part in parts for entry in part.provenance)

    return PinholeMask(pinholes=pinholes, symmetry_m=symmetry_m, provenance=provenance)


def mirror_mask(mask: PinholeMask) -> PinholeMask:
    """Mirror a mask about the x-axis, flipping its handedness."""

    return PinholeMask(
        pinholes=tuple(p.mirrored() for p in mask.pinholes),
        symmetry_m=mask.symmetry_m,
        provenance=tuple((spec.mirrored(), m) for spec, m in mask.provenance),
    )


def rotate_mask(mask: PinholeMask, angle: float) -> PinholeMask:
    """Rotate every pinhole of a mask counterclockwise about the origin."""

    return PinholeMask(
        pinholes=tuple(p.rotated(angle) for p in mask.pinholes),
        symmetry_m=mask.symmetry_m,
        provenance=mask.provenance,
    )
