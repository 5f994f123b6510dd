import pathlib
from typing import Union

import pandas as pd

from ..errors import ConfigError
from .basis import LGBasisSpec
from .decompose import CoeffTable
from .spectrum import OAMSpectrum


SPECTRUM_COLUMNS = ["ell", "power"]
COEFF_COLUMNS = ["p", "ell", "re", "im"]

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, pathlib.Path]


def spectrum_to_frame(spectrum: OAMSpectrum) -> pd.DataFrame:
    """Rows sorted ascending in ell."""

    frame = pd.DataFrame({"ell": spectrum.ells.astype(int), "power": spectrum.power.astype(float)})

    return frame.sort_values("ell", kind="mergesort").reset_index(drop=True)


def write_spectrum_csv(path: PathLike, spectrum: OAMSpectrum) -> None:
    spectrum_to_frame(spectrum).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_spectrum_csv(path: PathLike) -> pd.DataFrame:

    frame = pd.read_csv(path)

    if list(frame.columns) != SPECTRUM_COLUMNS:
        raise ConfigError(f"spectrum CSV header must be {','.join(SPECTRUM_COLUMNS)}")

    return frame


def coeffs_to_frame(coeffs: CoeffTable) -> pd.DataFrame:
    """One row per (p, ell), ell outer and p inner."""

    rows = [(p, ell, value.real, value.imag) for (p, ell), value in coeffs.items()]

    return pd.DataFrame(rows, columns=COEFF_COLUMNS).astype({"p": int, "ell": int})


def write_coeffs_csv(path: PathLike, coeffs: CoeffTable) -> None:
    coeffs_to_frame(coeffs).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_coeffs_csv(path: PathLike, basis: LGBasisSpec) -> CoeffTable:
    """Read a coefficient CSV into a table over `basis`."""

    frame = pd.read_csv(path)

    if list(frame.columns) != COEFF_COLUMNS:
        raise ConfigError(f"coefficient CSV header must be {','.join(COEFF_COLUMNS)}")

    entries = {
        (int(row.p), int(row.ell)): complex(row.re, row.im) for row in frame.itertuples(index=False)
    }

    return CoeffTable.from_entries(basis, entries)
