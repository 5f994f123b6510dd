import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..fields import ComplexField
from ..fields import GridSpec
from .basis import LGBasisSpec
from .basis import lg_radial


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoeffTable:
    """Complex LG coefficients c_{p,ell} of a field over a basis.

    Attributes:
        basis: The basis the coefficients refer to.
        values: A (p_max + 1, n_ell) complex array; column k holds ell = ell_min + k.
    """

    basis: LGBasisSpec
    values: np.ndarray

    def __post_init__(self):

        values = np.array(self.values, dtype=np.complex128)
        expected = (self.basis.p_max + 1, self.basis.ell_max - self.basis.ell_min + 1)

        if values.shape != expected:
            raise ConfigError(f"coefficient array must have shape {expected}, got {values.shape}")

        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, basis: LGBasisSpec) -> "CoeffTable":
        return cls(basis=basis, values=np.zeros((basis.p_max + 1, len(basis.ells))))

    @classmethod
    def from_entries(cls, basis: LGBasisSpec, entries) -> "CoeffTable":
        """Build a table from a mapping {(p, ell): c}; missing entries are zero."""

        values = np.zeros((basis.p_max + 1, len(basis.ells)), dtype=np.complex128)

        for (p, ell), value in dict(entries).items():
            values[basis_column(basis, p, ell)] = value

        return cls(basis=basis, values=values)

    def __getitem__(self, key: Tuple[int, int]) -> complex:
        p, ell = key
        return complex(self.values[basis_column(self.basis, p, ell)])

    def items(self) -> Iterator[Tuple[Tuple[int, int], complex]]:
        """((p, ell), c) pairs in basis order."""

        for p, ell in self.basis.indices:
            yield (p, ell), self[p, ell]

    def with_values(self, values: np.ndarray) -> "CoeffTable":
        return CoeffTable(basis=self.basis, values=values)

    @property
    def total_power(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def basis_column(basis: LGBasisSpec, p: int, ell: int) -> Tuple[int, int]:
    """Array position of (p, ell) in a coefficient table."""

    if not (0 <= p <= basis.p_max and basis.ell_min <= ell <= basis.ell_max):
        raise KeyError(f"(p={p}, ell={ell}) is outside the basis")

    return int(p), int(ell - basis.ell_min)


def _project_ell(
    ell: int, basis: LGBasisSpec, samples: np.ndarray, rho: np.ndarray, theta: np.ndarray, area: float
) -> np.ndarray:
    """Coefficients c_{p,ell} for p = 0..p_max of one azimuthal index."""

    angular = samples * np.exp(-1j * ell * theta)
    column = np.empty(basis.p_max + 1, dtype=np.complex128)

    for p in basis.ps:
        column[p] = np.sum(angular * lg_radial(p, ell, basis.w0, rho)) * area

    return column


def decompose(f: ComplexField, basis: LGBasisSpec, threads: int = 1) -> CoeffTable:
    """Project a field onto a truncated LG basis.

    Each coefficient is the midpoint sum of conj(phi_{p,ell}) * f over the
    samples inside the expansion window, times the pixel area. Azimuthal
    indices are distributed over `threads` workers; every coefficient is
    summed in the same order whatever the worker count.

    Args:
        f: The field; its grid origin is the beam axis.
        basis: The basis.
        threads: Number of worker threads.

    Returns:
        The coefficient table.

    Raises:
        ResolutionError: If the grid does not resolve the basis waist.
        WindowError: If the expansion window does not fit inside the grid.
    """

    basis.check_grid(f.grid)

    inside = basis.window_mask(f.grid)
    rho, theta = f.grid.polar_coords()
    samples, rho, theta = f.samples[inside], rho[inside], theta[inside]
    area = f.grid.pixel_area

    def project(ell):
        return _project_ell(int(ell), basis, samples, rho, theta, area)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(project, basis.ells))

    else:
        columns = [project(ell) for ell in basis.ells]

    logger.debug(
        "decomposed %d window samples onto %d modes (%d thread(s))",
        samples.size,
        len(basis.indices),
        threads,
    )

    return CoeffTable(basis=basis, values=np.stack(columns, axis=1))


def synthesize(coeffs: CoeffTable, grid: GridSpec) -> ComplexField:
    """Sum c_{p,ell} phi_{p,ell} on a grid whose origin is the beam axis.

    Raises:
        ResolutionError: If the grid does not resolve the basis waist.
    """

    basis = coeffs.basis
    basis.check_grid(grid, window=False)

    rho, theta = grid.polar_coords()
    samples = np.zeros(grid.shape, dtype=np.complex128)

    # Fixed basis order
    for ell in basis.ells:

        column = coeffs.values[:, ell - basis.ell_min]

        if not np.any(column):
            continue

        radial = sum(column[p] * lg_radial(p, ell, basis.w0, rho) for p in basis.ps)
        samples += radial * np.exp(1j * ell * theta)

    return ComplexField(grid=grid, samples=samples)
