import logging
from dataclasses import dataclass
from typing import List
from typing import Tuple

import numpy as np
from scipy.special import eval_genlaguerre
from scipy.special import gammaln

from ..errors import ConfigError
from ..errors import ResolutionError
from ..errors import WindowError
from ..fields import ComplexField
from ..fields import GridSpec


logger = logging.getLogger(__name__)

WINDOW_SHAPES = ("square", "disc")

# The basis waist must span at least this many samples
MIN_SAMPLES_PER_WAIST = 16

# Default waist: the window spans this many waists
WAISTS_PER_WINDOW = 6

# Window samples per block of the Gram accumulation
GRAM_CHUNK = 32768


@dataclass(frozen=True)
class LGBasisSpec:
    """A truncated Laguerre-Gaussian basis over an expansion window.

    Attributes:
        w0: Basis waist in meters.
        p_max: Largest radial index.
        ell_min: Smallest azimuthal index.
        ell_max: Largest azimuthal index.
        window: Side length of the expansion window in meters, centered on the axis.
        window_shape: "square" for the full window or "disc" for the inscribed disc.
    """

    w0: float
    p_max: int
    ell_min: int
    ell_max: int
    window: float
    window_shape: str = "square"

    def __post_init__(self):

        if not self.w0 > 0:
            raise ConfigError(f"basis waist must be positive, got {self.w0}")

        if int(self.p_max) != self.p_max or self.p_max < 0:
            raise ConfigError(f"p_max must be a non-negative integer, got {self.p_max}")

        if self.ell_min > self.ell_max:
            raise ConfigError(f"ell_min {self.ell_min} exceeds ell_max {self.ell_max}")

        if not self.window > 0:
            raise ConfigError(f"expansion window must be positive, got {self.window}")

        if self.window_shape not in WINDOW_SHAPES:
            raise ConfigError(f"window_shape must be one of {WINDOW_SHAPES}, got {self.window_shape!r}")

        if self.window < 4 * self.w0:
            logger.warning(
                "expansion window %.3g m is below 4 waists (w0 = %.3g m); the basis is truncated",
                self.window,
                self.w0,
            )

    @classmethod
    def symmetric(
        cls, ell_abs_max: int, p_max: int, window: float, w0: float = None, window_shape: str = "square"
    ) -> "LGBasisSpec":
        """Basis covering -ell_abs_max..ell_abs_max; w0 defaults to window / 6."""

        if w0 is None:
            w0 = window / WAISTS_PER_WINDOW

        return cls(
            w0=w0, p_max=p_max, ell_min=-ell_abs_max, ell_max=ell_abs_max, window=window, window_shape=window_shape
        )

    @property
    def ells(self) -> np.ndarray:
        return np.arange(self.ell_min, self.ell_max + 1)

    @property
    def ps(self) -> np.ndarray:
        return np.arange(self.p_max + 1)

    @property
    def indices(self) -> List[Tuple[int, int]]:
        """All (p, ell) pairs, ell outer and p inner."""
        return [(int(p), int(ell)) for ell in self.ells for p in self.ps]

    def window_mask(self, grid: GridSpec) -> np.ndarray:
        """Boolean (ny, nx) selection of the samples inside the expansion window."""

        x, y = grid.relative_coords()
        half = self.window / 2

        if self.window_shape == "disc":
            return np.hypot(x, y) <= half

        return (np.abs(x) <= half) & (np.abs(y) <= half)

    def check_grid(self, grid: GridSpec, window: bool = True) -> None:
        """Check that a grid resolves the basis and holds the window.

        Raises:
            ResolutionError: If a pitch exceeds w0 / 16.
            WindowError: If the window reaches outside the grid.
        """

        pitch = max(grid.pitch_x, grid.pitch_y)

        if pitch > self.w0 / MIN_SAMPLES_PER_WAIST:
            raise ResolutionError(
                f"grid pitch {pitch:g} m does not resolve the basis waist {self.w0:g} m "
                f"(need pitch <= w0/{MIN_SAMPLES_PER_WAIST})"
            )

        if not window:
            return

        x_min, x_max, y_min, y_max = grid.extent
        ox, oy = grid.origin
        half = self.window / 2

        if ox - half < x_min or ox + half > x_max or oy - half < y_min or oy + half > y_max:
            raise WindowError(
                f"expansion window of {self.window:g} m does not fit inside the grid extent "
                f"[{x_min:g}, {x_max:g}] x [{y_min:g}, {y_max:g}] m"
            )


def lg_log_norm(p: int, ell: int, w0: float) -> float:
    """Logarithm of sqrt(2 p! / (pi (p + |ell|)!)) / w0, computed through log-gamma."""

    ell = abs(ell)

    return 0.5 * (np.log(2.0) + gammaln(p + 1) - np.log(np.pi) - gammaln(p + ell + 1)) - np.log(w0)


def lg_radial(p: int, ell: int, w0: float, rho: np.ndarray) -> np.ndarray:
    """The real radial amplitude A_{p,ell}(rho) of a waist-plane LG mode."""

    rho = np.asarray(rho, dtype=float)
    ell = abs(int(ell))
    s = rho / w0

    # Power, Gaussian and normalization combined in log space
    with np.errstate(divide="ignore", invalid="ignore"):
        log_envelope = ell * np.log(np.sqrt(2.0) * s) - s ** 2 + lg_log_norm(p, ell, w0)

    envelope = np.exp(log_envelope)

    # rho = 0 only survives for ell = 0
    if ell == 0:
        envelope = np.where(rho == 0, np.exp(lg_log_norm(p, 0, w0)), envelope)

    return envelope * eval_genlaguerre(p, ell, 2 * s ** 2)


def lg_eval(p: int, ell: int, w0: float, x, y) -> np.ndarray:
    """Waist-plane Laguerre-Gaussian mode phi_{p,ell} at points relative to the axis.

    The mode is normalized so that its squared modulus integrates to one over
    the plane.

    Args:
        p: Radial index (>= 0).
        ell: Azimuthal index.
        w0: Waist in meters.
        x: x coordinates relative to the beam axis.
        y: y coordinates relative to the beam axis.

    Returns:
        Complex values with the broadcast shape of x and y.
    """

    if int(p) != p or p < 0:
        raise ConfigError(f"radial index must be a non-negative integer, got {p}")

    if not w0 > 0:
        raise ConfigError(f"waist must be positive, got {w0}")

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    radial = lg_radial(p, ell, w0, np.hypot(x, y))

    return radial * np.exp(1j * ell * np.arctan2(y, x))


def lg_field(p: int, ell: int, w0: float, grid: GridSpec, amplitude: complex = 1.0) -> ComplexField:
    """A sampled LG mode centered on the grid origin."""
    return ComplexField.from_function(grid, lambda x, y: amplitude * lg_eval(p, ell, w0, x, y))


def gram_matrix(basis: LGBasisSpec, grid: GridSpec) -> np.ndarray:
    """Overlap matrix <phi_a, phi_b> of the sampled basis over the window.

    Rows and columns follow `basis.indices`.
    """

    basis.check_grid(grid)

    inside = basis.window_mask(grid)
    x, y = grid.relative_coords()
    x, y = x[inside], y[inside]

    n = len(basis.indices)
    gram = np.zeros((n, n), dtype=np.complex128)

    for start in range(0, x.size, GRAM_CHUNK):
        xs, ys = x[start : start + GRAM_CHUNK], y[start : start + GRAM_CHUNK]
        modes = np.stack([lg_eval(p, ell, basis.w0, xs, ys) for p, ell in basis.indices])
        gram += modes.conj() @ modes.T

    return gram * grid.pixel_area
