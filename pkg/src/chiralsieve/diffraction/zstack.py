import logging
import pathlib
from dataclasses import dataclass
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
import pandas as pd

from ..errors import ConfigError
from ..fields import ComplexField
from ..fields import GridSpec
from ..fields.io import write_cvf1
from ..fields.io import write_pgm
from ..masks import PinholeMask
from .setup import OpticalSetup
from .sieve import propagate_sieve


logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ["delta_f_m", "ring_rms_radius_m"]

PathLike = Union[str, pathlib.Path]


@dataclass(frozen=True, eq=False)
class ZStack:
    """Fields observed over a sequence of defoci.

    Attributes:
        delta_fs: The defoci in meters, in acquisition order.
        fields: One field per defocus.
        yz_slice: (n_slices, ny) intensity of the central grid column of every slice.
        ring_rms_radii: Per-slice rms radius of the intensity inside the ring cut.
    """

    delta_fs: Tuple[float, ...]
    fields: Tuple[ComplexField, ...]
    yz_slice: np.ndarray
    ring_rms_radii: np.ndarray

    def __len__(self):
        return len(self.fields)

    @property
    def waist_index(self) -> int:
        """Slice with the smallest inner-ring rms radius."""
        return int(np.argmin(self.ring_rms_radii))

    @property
    def waist_delta_f(self) -> float:
        return self.delta_fs[self.waist_index]


def ring_rms_radius(f: ComplexField, ring_cut: float) -> float:
    """rms distance from the beam axis of the intensity within `ring_cut`."""

    rho, _ = f.grid.polar_coords()
    inside = rho <= ring_cut
    intensity = f.intensity[inside]
    total = intensity.sum()

    if total == 0:
        return 0.0

    return float(np.sqrt((intensity * rho[inside] ** 2).sum() / total))


def check_monotone(delta_fs: Sequence[float]) -> List[float]:

    delta_fs = [float(value) for value in delta_fs]

    if not delta_fs:
        raise ConfigError("z-stack needs at least one defocus")

    steps = np.diff(delta_fs)

    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigError("z-stack defoci must be strictly monotone")

    return delta_fs


def z_stack(
    mask: PinholeMask,
    setup: OpticalSetup,
    delta_fs: Sequence[float],
    obs: GridSpec,
    ring_cut: float = None,
    threads: int = 1,
) -> ZStack:
    """Propagate a mask to every defocus in `delta_fs` (lens model).

    Args:
        mask: The pinhole mask.
        setup: The base setup; its defocus is replaced slice by slice.
        delta_fs: Strictly monotone defoci in meters.
        obs: Observation grid, shared by all slices.
        ring_cut: Radius bounding the inner ring for the rms radius;
            defaults to the largest inscribed radius of the grid.
        threads: Number of worker threads per slice.

    Returns:
        The stack.
    """

    delta_fs = check_monotone(delta_fs)

    if ring_cut is None:
        ring_cut = obs.max_inscribed_radius()

    if not ring_cut > 0:
        raise ConfigError(f"ring cut must be positive, got {ring_cut}")

    fields = []

    for index, delta_f in enumerate(delta_fs):

        fields.append(propagate_sieve(mask, setup.with_defocus(delta_f), obs, threads=threads))
        logger.debug("z-stack slice %d/%d at delta_f=%g m", index + 1, len(delta_fs), delta_f)

    # Central column, ordered along y
    column = obs.nx // 2
    yz_slice = np.stack([f.intensity[:, column] for f in fields])
    radii = np.array([ring_rms_radius(f, ring_cut) for f in fields])

    return ZStack(delta_fs=tuple(delta_fs), fields=tuple(fields), yz_slice=yz_slice, ring_rms_radii=radii)


def manifest_frame(stack: ZStack) -> pd.DataFrame:
    return pd.DataFrame(dict(zip(MANIFEST_COLUMNS, (list(stack.delta_fs), stack.ring_rms_radii))))


def write_z_stack(directory: PathLike, stack: ZStack) -> List[pathlib.Path]:
    """Write one CVF1 per slice, the y-z slice as PGM and `manifest.csv`.

    Returns:
        The written paths.
    """

    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    paths = []

    for index, f in enumerate(stack.fields):
        path = directory / f"slice_{index:04d}.cvf1"
        write_cvf1(path, f)
        paths.append(path)

    peak = stack.yz_slice.max()
    image = np.zeros(stack.yz_slice.shape) if peak == 0 else np.round(stack.yz_slice / peak * 65535)

    # Rows are slices (first at the bottom), columns run along y
    path = directory / "yz_slice.pgm"
    write_pgm(path, image.astype(np.uint16))
    paths.append(path)

    path = directory / "manifest.csv"
    manifest_frame(stack).to_csv(path, index=False, float_format="%.17g")
    paths.append(path)

    return paths
