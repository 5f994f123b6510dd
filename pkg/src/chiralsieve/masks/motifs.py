import logging
from typing import Sequence
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..errors import NegativeRadicand
from .pinhole import Motif
from .pinhole import MotifSpec
from .pinhole import Pinhole
from .pinhole import polar_pinholes


logger = logging.getLogger(__name__)


def _spiral_angles(N: int, theta_span: float) -> np.ndarray:
    """Unsigned angles n * theta_span / (N - 1), n = 0..N-1 (just 0 when N = 1)."""

    if N == 1:
        return np.zeros(1)

    return np.arange(N) * theta_span / (N - 1)


def fermat_motif(
    N: int,
    r0: float,
    ell_design: int,
    wavelength: float,
    z_design: float,
    pinhole_radius: float,
    handedness: int = 1,
    alpha_span: float = 2 * np.pi,
) -> Motif:
    """Pinholes along a Fermat spiral that encodes a vortex phase ramp geometrically.

    Pinhole n sits at angle ``handedness * alpha_n`` and radius
    ``sqrt(r0**2 + ell * z * wavelength * alpha_n / pi)`` with
    ``alpha_n = alpha_span * n / N``. Its paraxial path phase at distance z then
    advances by ``ell * alpha_n`` over the motif.

    Args:
        N: Number of pinholes.
        r0: Radius of the first pinhole in meters.
        ell_design: Design topological charge.
        wavelength: Wavelength in meters.
        z_design: Design observation distance in meters. Under a lens model use
            the effective distance of the observation plane.
        pinhole_radius: Radius of each pinhole in meters.
        handedness: +1 for counterclockwise, -1 for the mirror image.
        alpha_span: Angular span covered by N steps. The default of 2pi gives
            ``alpha_n = 2 pi n / N``; 2pi/m gives a short sector motif.

    Returns:
        The motif.

    Raises:
        NegativeRadicand: If the design has no real radius for some pinhole.
    """

    if not r0 > 0:
        raise ConfigError(f"r0 must be positive, got {r0}")

    if not (wavelength > 0 and z_design > 0):
        raise ConfigError(f"wavelength and z_design must be positive, got {wavelength}, {z_design}")

    if not alpha_span > 0:
        raise ConfigError(f"alpha_span must be positive, got {alpha_span}")

    spec = MotifSpec(
        kind="fermat",
        N=N,
        params=dict(
            r0_m=r0,
            ell_design=ell_design,
            z_design_m=z_design,
            wavelength_m=wavelength,
            alpha_span_rad=alpha_span,
        ),
        pinhole_radius=pinhole_radius,
        handedness=handedness,
    )

    alpha = alpha_span * np.arange(N) / N
    radicand = r0 ** 2 + ell_design * z_design * wavelength * alpha / np.pi

    if np.any(radicand <= 0):
        bad = int(np.flatnonzero(radicand <= 0)[0])
        raise NegativeRadicand(
            f"Fermat design infeasible: r0^2 + l*z*lambda*alpha/pi = {radicand[bad]:.3e} m^2 "
            f"at pinhole {bad} (r0={r0:g} m, l={ell_design}, z={z_design:g} m)"
        )

    pinholes = polar_pinholes(np.sqrt(radicand), handedness * alpha, pinhole_radius)

    logger.debug(
        "fermat motif: %d pinholes, r from %.4g to %.4g m", N, np.sqrt(radicand[0]), np.sqrt(radicand[-1])
    )

    return Motif(spec=spec, pinholes=pinholes)


def log_spiral_motif(
    N: int, r0: float, b: float, theta_span: float, pinhole_radius: float, handedness: int = 1
) -> Motif:
    """Pinholes along a logarithmic spiral r = r0 * exp(b * theta).

    Pinhole n sits at ``theta_n = handedness * n * theta_span / (N - 1)`` and
    radius ``r0 * exp(b * |theta_n|)``.
    """

    if not (r0 > 0 and theta_span > 0):
        raise ConfigError(f"r0 and theta_span must be positive, got {r0}, {theta_span}")

    spec = MotifSpec(
        kind="logarithmic",
        N=N,
        params=dict(r0_m=r0, b=b, theta_span_rad=theta_span),
        pinhole_radius=pinhole_radius,
        handedness=handedness,
    )

    theta = _spiral_angles(N, theta_span)
    radii = r0 * np.exp(b * theta)

    return Motif(spec=spec, pinholes=polar_pinholes(radii, handedness * theta, pinhole_radius))


def archimedean_motif(
    N: int,
    a_coef: float,
    b_coef: float,
    theta_span: float,
    pinhole_radius: float,
    handedness: int = 1,
) -> Motif:
    """Pinholes along an Archimedean spiral r = a + b * theta.

    Angles follow `log_spiral_motif`; the radius of pinhole n is
    ``a_coef + b_coef * |theta_n|``.
    """

    if not (a_coef > 0 and theta_span > 0):
        raise ConfigError(f"a_coef and theta_span must be positive, got {a_coef}, {theta_span}")

    theta = _spiral_angles(N, theta_span)
    radii = a_coef + b_coef * theta

    if np.any(radii <= 0):
        raise ConfigError("Archimedean spiral reaches a non-positive radius")

    spec = MotifSpec(
        kind="archimedean",
        N=N,
        params=dict(a_m=a_coef, b_m_per_rad=b_coef, theta_span_rad=theta_span),
        pinhole_radius=pinhole_radius,
        handedness=handedness,
    )

    return Motif(spec=spec, pinholes=polar_pinholes(radii, handedness * theta, pinhole_radius))


def explicit_motif(points: Sequence[Tuple[float, float]], pinhole_radius: float) -> Motif:
    """Pinholes at explicitly given centers (meters).

    Duplicated points are accepted here and rejected as overlaps once the
    motif becomes part of a mask.
    """

    points = [(float(x), float(y)) for x, y in points]

    if not points:
        raise ConfigError("explicit motif needs at least one point")

    spec = MotifSpec(
        kind="explicit",
        N=len(points),
        params=dict(points_m=[[x, y] for x, y in points]),
        pinhole_radius=pinhole_radius,
        handedness=1,
    )

    pinholes = tuple(Pinhole(x=x, y=y, radius=pinhole_radius) for x, y in points)

    return Motif(spec=spec, pinholes=pinholes)


def build_motif(spec: MotifSpec, wavelength: float = None, z_design: float = None) -> Motif:
    """Build a motif from its recipe.

    Args:
        spec: The recipe.
        wavelength: Wavelength for Fermat motifs whose params omit it.
        z_design: Design distance for Fermat motifs whose params omit it.
    """

    params = spec.params

    if spec.kind == "explicit":
        motif = explicit_motif(params["points_m"], spec.pinhole_radius)

        if motif.spec.N != spec.N:
            raise ConfigError(f"explicit motif declares N={spec.N} but lists {motif.spec.N} points")

        return motif

    if spec.kind == "logarithmic":
        return log_spiral_motif(
            spec.N, params["r0_m"], params["b"], params["theta_span_rad"], spec.pinhole_radius, spec.handedness
        )

    if spec.kind == "archimedean":
        return archimedean_motif(
            spec.N,
            params["a_m"],
            params["b_m_per_rad"],
            params["theta_span_rad"],
            spec.pinhole_radius,
            spec.handedness,
        )

    # Fermat: the design distance defaults to the observation setup
    wavelength = params.get("wavelength_m", wavelength)
    z_design = params.get("z_design_m", z_design)

    if wavelength is None or z_design is None:
        raise ConfigError("Fermat motif needs a wavelength and a design distance")

    return fermat_motif(
        spec.N,
        params["r0_m"],
        params["ell_design"],
        wavelength,
        z_design,
        spec.pinhole_radius,
        spec.handedness,
        params.get("alpha_span_rad", 2 * np.pi),
    )
