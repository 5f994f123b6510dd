from dataclasses import dataclass

import numpy as np

from ..errors import ZeroPower
from .decompose import CoeffTable


@dataclass(frozen=True, eq=False)
class OAMSpectrum:
    """Normalized orbital-angular-momentum spectrum P(ell).

    Attributes:
        ells: Azimuthal indices in ascending order.
        power: Normalized power per index; sums to one.
        total_power: The unnormalized sum of |c|^2 the spectrum was divided by.
    """

    ells: np.ndarray
    power: np.ndarray
    total_power: float

    def __post_init__(self):

        for name in ("ells", "power"):
            array = np.array(getattr(self, name))
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def __getitem__(self, ell: int) -> float:
        """Power at ell; zero outside the basis range."""

        index = int(ell) - int(self.ells[0])

        if not 0 <= index < len(self.ells):
            return 0.0

        return float(self.power[index])

    def __iter__(self):
        return iter(zip(self.ells.tolist(), self.power.tolist()))

    @property
    def dominant_ell(self) -> int:
        """Index carrying the most power; the smallest |ell| wins ties."""

        order = np.lexsort((np.abs(self.ells), -self.power))

        return int(self.ells[order[0]])

    def power_on(self, ells) -> float:
        return float(sum(self[ell] for ell in ells))

    def off_lattice_power(self, m: int) -> float:
        """Power in indices that are not multiples of m."""
        return float(self.power[self.ells % m != 0].sum())

    def mirrored(self) -> "OAMSpectrum":
        """The spectrum with ell -> -ell."""

        ells = -self.ells[::-1]

        return OAMSpectrum(ells=ells, power=self.power[::-1], total_power=self.total_power)


def oam_spectrum(coeffs: CoeffTable) -> OAMSpectrum:
    """P(ell) = sum_p |c_{p,ell}|^2, normalized to unit sum.

    Raises:
        ZeroPower: If every coefficient is zero.
    """

    per_ell = np.sum(np.abs(coeffs.values) ** 2, axis=0)
    total = float(per_ell.sum())

    if total == 0:
        raise ZeroPower("the field has no power inside the expansion window")

    return OAMSpectrum(ells=coeffs.basis.ells, power=per_ell / total, total_power=total)


def dominant_fraction(spectrum: OAMSpectrum, ell: int = None) -> float:
    """Fraction of the power at ell (the dominant index by default)."""

    if ell is None:
        ell = spectrum.dominant_ell

    return spectrum[ell]
