"""The rotational selection rule for OAM modes.

Superposing m copies of a field rotated by 2pi s/m multiplies each LG
coefficient c_{p,ell} by the geometric sum of exp(i ell 2pi s / m), which is m
when m divides ell and 0 otherwise.
"""

import numpy as np

from ..errors import ConfigError
from .decompose import CoeffTable


def _check_order(m: int) -> int:

    if int(m) != m or m < 1:
        raise ConfigError(f"rotational order must be a positive integer, got {m}")

    return int(m)


def selection_sum(ell: int, m: int) -> complex:
    """The partial sum over s = 0..m-1 of exp(i ell 2pi s / m), evaluated term by term."""

    m = _check_order(m)
    s = np.arange(m)

    return complex(np.sum(np.exp(1j * ell * 2 * np.pi * s / m)))


def selection_factor(ell: int, m: int) -> int:
    """m if ell is a multiple of m, else 0."""

    m = _check_order(m)

    return m if ell % m == 0 else 0


def symmetric_filter_coeffs(coeffs: CoeffTable, m: int) -> CoeffTable:
    """Coefficients of the m-fold rotational superposition of a field.

    Entries with ell divisible by m are scaled by m; all others vanish.
    """

    m = _check_order(m)
    factors = np.array([selection_factor(int(ell), m) for ell in coeffs.basis.ells], dtype=float)

    return coeffs.with_values(coeffs.values * factors[None, :])
