import pathlib
from typing import Union

import pandas as pd

from ..errors import ConfigError
from .mask import PinholeMask
from .pinhole import Pinhole


MASK_COLUMNS = ["x_m", "y_m", "radius_m"]

# Round-trip precision for doubles
FLOAT_FORMAT = "%.17g"

PathLike = Union[str, pathlib.Path]


def mask_to_frame(mask: PinholeMask) -> pd.DataFrame:
    """One row per pinhole with columns x_m, y_m, radius_m."""

    rows = [(p.x, p.y, p.radius) for p in mask.pinholes]

    return pd.DataFrame(rows, columns=MASK_COLUMNS, dtype=float)


def write_mask_csv(path: PathLike, mask: PinholeMask) -> None:
    mask_to_frame(mask).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_mask_csv(path: PathLike, symmetry_m: int = 1) -> PinholeMask:
    """Read a pinhole CSV back into a mask.

    The CSV does not carry symmetry metadata; pass `symmetry_m` to declare it.
    """

    frame = pd.read_csv(path, dtype=float)

    if list(frame.columns) != MASK_COLUMNS:
        raise ConfigError(f"mask CSV header must be {','.join(MASK_COLUMNS)}, got {','.join(frame.columns)}")

    pinholes = tuple(
        Pinhole(x=row.x_m, y=row.y_m, radius=row.radius_m) for row in frame.itertuples(index=False)
    )

    return PinholeMask(pinholes=pinholes, symmetry_m=symmetry_m)
