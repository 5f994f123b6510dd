"""
    Shared fixtures for the chiralsieve test suite.

    Physical constants follow the electron-optics setup of the presets:
    2.5 pm wavelength, 15 mm focal length, -33.6 um defocus.
"""

import pytest

from chiralsieve.diffraction import Lens
from chiralsieve.diffraction import OpticalSetup
from chiralsieve.diffraction import effective_geometry
from chiralsieve.fields import GridSpec
from chiralsieve.masks import explicit_motif
from chiralsieve.masks import fermat_motif
from chiralsieve.masks import replicate
from chiralsieve.modes import LGBasisSpec


WAVELENGTH = 2.5e-12
FOCAL_LENGTH = 0.015
DELTA_F = -33.6e-6


@pytest.fixture(scope="session")
def w0():
    return 1e-9


@pytest.fixture(scope="session")
def lg_grid():
    """512 x 512 samples over 10 waists of 1 nm."""
    return GridSpec.square(512, 10e-9)


@pytest.fixture(scope="session")
def fig1_setup():
    return OpticalSetup(wavelength=WAVELENGTH, model=Lens(f=FOCAL_LENGTH, delta_f=DELTA_F))


@pytest.fixture(scope="session")
def z_eff(fig1_setup):
    return effective_geometry(fig1_setup).z_eff


@pytest.fixture(scope="session")
def fig1_obs():
    return GridSpec.square(128, 12.8e-9)


@pytest.fixture(scope="session")
def fig1_basis():
    return LGBasisSpec.symmetric(ell_abs_max=15, p_max=5, window=10e-9, window_shape="disc")


@pytest.fixture(scope="session")
def five_pinhole_mask():
    return replicate(explicit_motif([(10e-6, 0.0)], 300e-9), 5)


@pytest.fixture(scope="session")
def fermat_motif_fig1(z_eff):
    return fermat_motif(20, 15e-6, -5, WAVELENGTH, z_eff, 300e-9)


@pytest.fixture(scope="session")
def fermat_mask(fermat_motif_fig1):
    return replicate(fermat_motif_fig1, 5)
