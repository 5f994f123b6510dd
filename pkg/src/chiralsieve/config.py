"""Run configuration: strict JSON schema shared by every CLI subcommand.

All lengths are meters and carry an ``_m`` suffix. Unknown keys are errors.
"""

import json
import logging
import pathlib
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union

import numpy as np

from .diffraction import Astigmatism
from .diffraction import FreeSpace
from .diffraction import Lens
from .diffraction import OpticalSetup
from .diffraction import effective_geometry
from .errors import ConfigError
from .fields import GridSpec
from .masks import MaskRecipe
from .masks import PinholeMask
from .masks.recipe import check_integer
from .masks.recipe import check_keys
from .masks.recipe import check_number
from .modes import LGBasisSpec
from .modes.basis import WINDOW_SHAPES


logger = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]


def setup_from_dict(data: Dict[str, Any]) -> OpticalSetup:

    check_keys(data, {"lambda_m", "model"}, {"astig"}, "setup")
    model = data["model"]

    if not isinstance(model, dict) or len(model) != 1:
        raise ConfigError("setup.model must hold exactly one of free_space or lens")

    (name, params), = model.items()

    if name == "free_space":
        check_keys(params, {"z_m"}, set(), "setup.model.free_space")
        propagation = FreeSpace(z=check_number(params, "z_m", "setup.model.free_space", positive=True))

    elif name == "lens":
        where = "setup.model.lens"
        check_keys(params, {"f_m", "delta_f_m"}, set(), where)
        propagation = Lens(f=check_number(params, "f_m", where, positive=True), delta_f=check_number(params, "delta_f_m", where))

    else:
        raise ConfigError(f"unknown propagation model {name!r}; expected free_space or lens")

    astig = None

    if "astig" in data:
        where = "setup.astig"
        check_keys(data["astig"], {"delta_fx_m", "delta_fy_m", "orientation_rad"}, set(), where)
        astig = Astigmatism(
            delta_f_x=check_number(data["astig"], "delta_fx_m", where),
            delta_f_y=check_number(data["astig"], "delta_fy_m", where),
            orientation=check_number(data["astig"], "orientation_rad", where),
        )

    return OpticalSetup(
        wavelength=check_number(data, "lambda_m", "setup", positive=True), model=propagation, astig=astig
    )


def setup_to_dict(setup: OpticalSetup) -> Dict[str, Any]:

    if isinstance(setup.model, Lens):
        model = dict(lens=dict(f_m=setup.model.f, delta_f_m=setup.model.delta_f))
    else:
        model = dict(free_space=dict(z_m=setup.model.z))

    data = dict(lambda_m=setup.wavelength, model=model)

    if setup.astig is not None:
        data["astig"] = dict(
            delta_fx_m=setup.astig.delta_f_x,
            delta_fy_m=setup.astig.delta_f_y,
            orientation_rad=setup.astig.orientation,
        )

    return data


@dataclass(frozen=True)
class ObsConfig:
    """Observation grid: nx x ny samples over a square window of side window_m."""

    nx: int
    ny: int
    window_m: float

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ObsConfig":

        check_keys(data, {"nx", "ny", "window_m"}, set(), "obs")

        return cls(
            nx=check_integer(data, "nx", "obs", minimum=2),
            ny=check_integer(data, "ny", "obs", minimum=2),
            window_m=check_number(data, "window_m", "obs", positive=True),
        )

    @property
    def grid(self) -> GridSpec:
        return GridSpec(nx=self.nx, ny=self.ny, pitch_x=self.window_m / self.nx, pitch_y=self.window_m / self.ny)


@dataclass(frozen=True)
class BasisConfig:
    """LG basis truncation; w0_m defaults to window / 6 and window_m to the usable obs window."""

    p_max: int
    ell_abs_max: int
    w0_m: Optional[float] = None
    window_m: Optional[float] = None
    window_shape: str = "square"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BasisConfig":

        check_keys(data, {"p_max", "ell_abs_max"}, {"w0_m", "window_m", "window_shape"}, "basis")

        window_shape = data.get("window_shape", "square")

        if window_shape not in WINDOW_SHAPES:
            raise ConfigError(f"basis.window_shape must be one of {WINDOW_SHAPES}, got {window_shape!r}")

        return cls(
            p_max=check_integer(data, "p_max", "basis", minimum=0),
            ell_abs_max=check_integer(data, "ell_abs_max", "basis", minimum=0),
            w0_m=check_number(data, "w0_m", "basis", positive=True) if "w0_m" in data else None,
            window_m=check_number(data, "window_m", "basis", positive=True) if "window_m" in data else None,
            window_shape=window_shape,
        )

    def spec(self, obs: GridSpec) -> LGBasisSpec:

        window = self.window_m

        # The largest centered window whose edges stay on sample centers
        if window is None:
            window = 2 * obs.max_inscribed_radius()

        return LGBasisSpec.symmetric(
            ell_abs_max=self.ell_abs_max,
            p_max=self.p_max,
            window=window,
            w0=self.w0_m,
            window_shape=self.window_shape,
        )


@dataclass(frozen=True)
class AnalysisConfig:
    """Measurement settings: winding radii, circle sampling and the stripe profile."""

    ring_radii_m: Tuple[float, ...] = ()
    n_samples: int = 2048
    stripe_normal_rad: Optional[float] = None
    stripe_extent_m: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisConfig":

        where = "analysis"
        check_keys(data, set(), {"ring_radii_m", "n_samples", "stripe_normal_rad", "stripe_extent_m"}, where)

        radii = data.get("ring_radii_m", [])

        if not isinstance(radii, list):
            raise ConfigError(f"{where}.ring_radii_m must be a list")

        radii = tuple(check_number(dict(r=value), "r", f"{where}.ring_radii_m", positive=True) for value in radii)

        return cls(
            ring_radii_m=radii,
            n_samples=check_integer(data, "n_samples", where, minimum=8) if "n_samples" in data else 2048,
            stripe_normal_rad=check_number(data, "stripe_normal_rad", where) if "stripe_normal_rad" in data else None,
            stripe_extent_m=(
                check_number(data, "stripe_extent_m", where, positive=True) if "stripe_extent_m" in data else None
            ),
        )


@dataclass(frozen=True)
class ZStackConfig:
    """n_slices defoci evenly spaced from delta_f_start_m to delta_f_stop_m."""

    delta_f_start_m: float
    delta_f_stop_m: float
    n_slices: int
    ring_cut_m: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZStackConfig":

        where = "zstack"
        check_keys(data, {"delta_f_start_m", "delta_f_stop_m", "n_slices"}, {"ring_cut_m"}, where)

        config = cls(
            delta_f_start_m=check_number(data, "delta_f_start_m", where),
            delta_f_stop_m=check_number(data, "delta_f_stop_m", where),
            n_slices=check_integer(data, "n_slices", where, minimum=1),
            ring_cut_m=check_number(data, "ring_cut_m", where, positive=True) if "ring_cut_m" in data else None,
        )

        if config.n_slices > 1 and config.delta_f_start_m == config.delta_f_stop_m:
            raise ConfigError("zstack range is empty but several slices were requested")

        return config

    @property
    def delta_fs(self) -> List[float]:
        return np.linspace(self.delta_f_start_m, self.delta_f_stop_m, self.n_slices).tolist()


RUN_KEYS = ({"mask", "setup", "obs"}, {"basis", "analysis", "zstack", "outputs", "threads"})


@dataclass(frozen=True)
class RunConfig:
    """A validated run: mask recipe, optical setup, observation grid and analysis settings."""

    mask: MaskRecipe
    setup: OpticalSetup
    obs: ObsConfig
    basis: Optional[BasisConfig] = None
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    zstack: Optional[ZStackConfig] = None
    outputs: str = "out"
    threads: int = 1

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Validate a JSON object; raises ConfigError before any computation."""

        required, optional = RUN_KEYS
        check_keys(data, required, optional, "config")

        outputs = data.get("outputs", "out")

        if not isinstance(outputs, str) or not outputs:
            raise ConfigError("config.outputs must be a non-empty path")

        return cls(
            mask=MaskRecipe.from_dict(data["mask"]),
            setup=setup_from_dict(data["setup"]),
            obs=ObsConfig.from_dict(data["obs"]),
            basis=BasisConfig.from_dict(data["basis"]) if "basis" in data else None,
            analysis=AnalysisConfig.from_dict(data.get("analysis", {})),
            zstack=ZStackConfig.from_dict(data["zstack"]) if "zstack" in data else None,
            outputs=outputs,
            threads=check_integer(data, "threads", "config", minimum=1) if "threads" in data else 1,
        )

    @classmethod
    def from_json(cls, path: PathLike) -> "RunConfig":

        try:
            data = json.loads(pathlib.Path(path).read_text())

        except (OSError, ValueError) as error:
            raise ConfigError(f"cannot read config {path}: {error}") from error

        return cls.from_dict(data)

    @property
    def z_design(self) -> float:
        """Design distance for Fermat motifs: z_eff of the run setup."""
        return effective_geometry(self.setup).z_eff

    def build_mask(self) -> PinholeMask:
        return self.mask.build(wavelength=self.setup.wavelength, z_design=self.z_design)

    def basis_spec(self) -> LGBasisSpec:

        if self.basis is None:
            raise ConfigError("this command needs a basis section in the config")

        return self.basis.spec(self.obs.grid)
