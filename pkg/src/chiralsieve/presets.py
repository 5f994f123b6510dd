"""Named run configurations reproducing the sieve, compound-mask and z-stack pipelines.

Every preset is a plain JSON object accepted by `RunConfig.from_dict`.
"""

import copy
import math
from typing import Any
from typing import Dict
from typing import List

from .errors import ConfigError


WAVELENGTH_M = 2.5e-12
FOCAL_LENGTH_M = 0.015

# Defocus of the single-family masks and of the compound mask
DELTA_F_SINGLE_M = -33.6e-6
DELTA_F_COMPOUND_M = -74.6e-6

PINHOLE_RADIUS_M = 300e-9

# 10 nm expansion window on a 12.8 nm, 128 x 128 observation grid
SINGLE_OBS = dict(nx=128, ny=128, window_m=12.8e-9)
SINGLE_BASIS = dict(p_max=5, ell_abs_max=15, window_m=10e-9, window_shape="disc")

COMPOUND_OBS = dict(nx=1024, ny=1024, window_m=61e-9)
COMPOUND_BASIS = dict(p_max=5, ell_abs_max=60, window_m=58e-9, window_shape="disc")

# Radii of the -11, +44 and -55 rings at the compound-mask observation plane
COMPOUND_RING_RADII_M = [11.9e-9, 18.35e-9, 28.2e-9]

# Thin Fermat families (N, r0, ell, pinhole radius), each spanning 2pi / |ell|
COMPOUND_FAMILIES = [
    (5, 6.835602e-6, -11, 55.93e-9),
    (3, 15.08162e-6, 44, 75.07e-9),
    (3, 12.48740e-6, -55, 155.34e-9),
]

# In-phase reference ring of 22 pinholes and the on-axis pinhole
REFERENCE_RING_M = 1.452289e-6
REFERENCE_RADIUS_M = 151.07e-9
REFERENCE_COPIES = 22
CENTER_RADIUS_M = 339.12e-9

FULL_TURN = 2 * math.pi
SPIRAL_SPAN = 0.8 * 2 * math.pi

# Relative offset of the two principal defoci from the nominal one
ASTIG_SPLIT = 0.3


def _lens_setup(delta_f: float, astig: bool = False) -> Dict[str, Any]:

    setup = dict(lambda_m=WAVELENGTH_M, model=dict(lens=dict(f_m=FOCAL_LENGTH_M, delta_f_m=delta_f)))

    # Principal defoci 60% apart, axes at 45 degrees
    if astig:
        setup["astig"] = dict(
            delta_fx_m=delta_f * (1 + ASTIG_SPLIT),
            delta_fy_m=delta_f * (1 - ASTIG_SPLIT),
            orientation_rad=math.pi / 4,
        )

    return setup


def _fermat(N: int, r0: float, ell: int, radius: float, alpha_span: float = FULL_TURN) -> Dict[str, Any]:

    params = dict(r0_m=r0, ell_design=ell)

    if alpha_span != FULL_TURN:
        params["alpha_span_rad"] = alpha_span

    return dict(kind="fermat", N=N, params=params, pinhole_radius_m=radius, handedness=1)


def _explicit(point, radius: float) -> Dict[str, Any]:
    return dict(kind="explicit", N=1, params=dict(points_m=[list(point)]), pinhole_radius_m=radius)


def _single(motif: Dict[str, Any], m: int) -> Dict[str, Any]:

    return dict(
        mask=dict(motifs=[motif], replications=[m]),
        setup=_lens_setup(DELTA_F_SINGLE_M),
        obs=dict(SINGLE_OBS),
        basis=dict(SINGLE_BASIS),
        analysis=dict(n_samples=2048),
    )


def fig1_five_pinhole() -> Dict[str, Any]:
    """Five pinholes on a 10 um circle."""

    return _single(_explicit((10e-6, 0.0), PINHOLE_RADIUS_M), 5)


def fig1_short_curves() -> Dict[str, Any]:
    """Five short Fermat arcs, each covering most of its 72 degree sector."""
    return _single(_fermat(4, 15e-6, -5, PINHOLE_RADIUS_M, alpha_span=FULL_TURN / 5), 5)


def fig1_log_spiral() -> Dict[str, Any]:

    motif = dict(
        kind="logarithmic",
        N=12,
        params=dict(r0_m=8e-6, b=0.12, theta_span_rad=SPIRAL_SPAN),
        pinhole_radius_m=PINHOLE_RADIUS_M,
        handedness=1,
    )

    return _single(motif, 5)


def fig1_archimedean() -> Dict[str, Any]:

    motif = dict(
        kind="archimedean",
        N=12,
        params=dict(a_m=8e-6, b_m_per_rad=1e-6, theta_span_rad=SPIRAL_SPAN),
        pinhole_radius_m=PINHOLE_RADIUS_M,
        handedness=1,
    )

    return _single(motif, 5)


def fig1_fermat() -> Dict[str, Any]:
    """Five interleaved Fermat spirals designed for ell = -5."""
    return _single(_fermat(20, 15e-6, -5, PINHOLE_RADIUS_M), 5)


def fig1_fermat_single() -> Dict[str, Any]:
    """One Fermat spiral of the five-fold mask, without replication."""
    return _single(_fermat(20, 15e-6, -5, PINHOLE_RADIUS_M), 1)


def fig2_compound() -> Dict[str, Any]:
    """Three Fermat families (-11, +44, -55), an in-phase reference ring and one on-axis pinhole.

    The reference ring and the on-axis pinhole carry the ell = 0 background
    that turns the +44 and -55 rings into necklaces of 44 and 55 bright dots.
    """

    motifs = [
        _fermat(N, r0, ell, radius, alpha_span=FULL_TURN / abs(ell)) for N, r0, ell, radius in COMPOUND_FAMILIES
    ]
    motifs.append(_explicit((REFERENCE_RING_M, 0.0), REFERENCE_RADIUS_M))
    motifs.append(_explicit((0.0, 0.0), CENTER_RADIUS_M))

    replications = [abs(ell) for _, _, ell, _ in COMPOUND_FAMILIES] + [REFERENCE_COPIES, 11]

    return dict(
        mask=dict(motifs=motifs, replications=replications, compound=True),
        setup=_lens_setup(DELTA_F_COMPOUND_M, astig=True),
        obs=dict(COMPOUND_OBS),
        basis=dict(COMPOUND_BASIS),
        analysis=dict(ring_radii_m=list(COMPOUND_RING_RADII_M), n_samples=2048),
    )


def fig2_inner_ring() -> Dict[str, Any]:
    """The -11 family of the compound mask alone, for the astigmatic stripe count.

    Through the astigmatic focus its vortex becomes a row of 12 bright lobes
    along x separated by 11 dark stripes.
    """

    config = fig2_compound()
    config["mask"] = dict(motifs=config["mask"]["motifs"][:1], replications=[11])
    config["obs"] = dict(nx=256, ny=256, window_m=60e-9)
    config.pop("basis")
    config["analysis"] = dict(n_samples=2048, stripe_normal_rad=0.0, stripe_extent_m=20e-9)

    return config


def fig3_zstack() -> Dict[str, Any]:
    """The compound mask over 140 defoci around its design plane."""

    config = fig2_compound()
    config["obs"] = dict(nx=96, ny=96, window_m=50e-9)
    config.pop("basis")
    config["zstack"] = dict(
        delta_f_start_m=DELTA_F_COMPOUND_M - 10e-6,
        delta_f_stop_m=DELTA_F_COMPOUND_M + 10e-6,
        n_slices=140,
        ring_cut_m=15.8e-9,
    )

    return config


PRESETS = {
    "fig1-five-pinhole": fig1_five_pinhole,
    "fig1-short-curves": fig1_short_curves,
    "fig1-log-spiral": fig1_log_spiral,
    "fig1-archimedean": fig1_archimedean,
    "fig1-fermat": fig1_fermat,
    "fig1-fermat-single": fig1_fermat_single,
    "fig2-compound": fig2_compound,
    "fig2-inner-ring": fig2_inner_ring,
    "fig3-zstack": fig3_zstack,
}


def preset_names() -> List[str]:
    return sorted(PRESETS)


def preset(name: str) -> Dict[str, Any]:
    """A fresh copy of the named configuration."""

    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")

    return copy.deepcopy(PRESETS[name]())
