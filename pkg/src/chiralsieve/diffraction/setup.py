"""Optical setups and their reduction to a free-space Fresnel geometry.

Behind a thin lens of focal length f, the field at defocus delta_f from the
focal plane equals a Fresnel propagation over ``z_eff = f**2 / |delta_f|``,
observed at magnified coordinates ``u' = mag * u`` with ``mag = -f / delta_f``.
For delta_f < 0 the equivalent kernel is the forward Fresnel kernel; for
delta_f > 0 it is its complex conjugate (exact for real masks). The residual
radial chirp over the observation plane is dropped: it changes neither the
intensity nor any winding number.
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import replace
from typing import Optional
from typing import Tuple
from typing import Union

from ..errors import ConfigError
from ..errors import GeometryError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeSpace:
    """Free-space propagation over a distance z (meters)."""

    z: float

    def __post_init__(self):

        if not self.z > 0:
            raise ConfigError(f"propagation distance must be positive, got {self.z}")


@dataclass(frozen=True)
class Lens:
    """Observation at defocus delta_f (meters) behind a lens of focal length f (meters)."""

    f: float
    delta_f: float

    def __post_init__(self):

        if not self.f > 0:
            raise ConfigError(f"focal length must be positive, got {self.f}")

        if not math.isfinite(self.delta_f):
            raise ConfigError(f"defocus must be finite, got {self.delta_f}")


@dataclass(frozen=True)
class Astigmatism:
    """First-order astigmatism.

    For the lens model the two principal defoci replace delta_f; for free space
    they are added to z. Axis x' points along `orientation` in the mask plane.
    """

    delta_f_x: float
    delta_f_y: float
    orientation: float

    def __post_init__(self):

        if not 0 <= self.orientation < math.pi:
            raise ConfigError(f"astigmatism orientation must lie in [0, pi), got {self.orientation}")


Model = Union[FreeSpace, Lens]


@dataclass(frozen=True)
class OpticalSetup:
    """Wavelength, propagation model and optional astigmatism.

    Attributes:
        wavelength: Wavelength in meters.
        model: `FreeSpace` or `Lens`.
        astig: Optional `Astigmatism`.
    """

    wavelength: float
    model: Model
    astig: Optional[Astigmatism] = None

    def __post_init__(self):

        if not self.wavelength > 0:
            raise ConfigError(f"wavelength must be positive, got {self.wavelength}")

        if not isinstance(self.model, (FreeSpace, Lens)):
            raise ConfigError(f"unknown propagation model {self.model!r}")

    @property
    def k(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def plane_label(self) -> float:
        """Defocus for the lens model, distance for free space."""

        if isinstance(self.model, Lens):
            return self.model.delta_f

        return self.model.z

    def with_defocus(self, delta_f: float) -> "OpticalSetup":
        """The same setup observed at another defocus (lens model only)."""

        if not isinstance(self.model, Lens):
            raise ConfigError("defocus can only be changed for the lens model")

        return replace(self, model=replace(self.model, delta_f=delta_f))

    def principal_setups(self) -> Tuple["OpticalSetup", "OpticalSetup"]:
        """Stigmatic setups along the two astigmatic axes x' and y'."""

        if self.astig is None:
            raise ConfigError("setup has no astigmatism")

        if isinstance(self.model, Lens):
            models = (
                replace(self.model, delta_f=self.astig.delta_f_x),
                replace(self.model, delta_f=self.astig.delta_f_y),
            )

        else:
            models = (
                FreeSpace(z=self.model.z + self.astig.delta_f_x),
                FreeSpace(z=self.model.z + self.astig.delta_f_y),
            )

        return tuple(OpticalSetup(wavelength=self.wavelength, model=model) for model in models)


@dataclass(frozen=True)
class EffectiveGeometry:
    """Free-space equivalent of a setup.

    Attributes:
        z_eff: Effective Fresnel distance in meters.
        mag: Observation-to-effective coordinate scale, u' = mag * u.
        chirp_sign: +1 for the forward Fresnel kernel, -1 for its conjugate.
    """

    z_eff: float
    mag: float
    chirp_sign: int


def effective_geometry(setup: OpticalSetup) -> EffectiveGeometry:
    """Reduce a setup to (z_eff, mag, chirp_sign).

    Raises:
        GeometryError: For the lens model at the focal plane (delta_f = 0).
    """

    model = setup.model

    if isinstance(model, FreeSpace):
        return EffectiveGeometry(z_eff=model.z, mag=1.0, chirp_sign=1)

    if model.delta_f == 0:
        raise GeometryError("the focal plane (delta_f = 0) has no finite effective distance")

    geometry = EffectiveGeometry(
        z_eff=model.f ** 2 / abs(model.delta_f),
        mag=-model.f / model.delta_f,
        chirp_sign=-1 if model.delta_f > 0 else 1,
    )

    logger.debug(
        "lens f=%g m, delta_f=%g m -> z_eff=%g m, mag=%g",
        model.f,
        model.delta_f,
        geometry.z_eff,
        geometry.mag,
    )

    return geometry
