"""Mask recipes: the JSON description of how a mask is built from motifs.

A recipe is ``{"motifs": [...], "replications": [m, ...], "compound": bool}``
where every motif is ``{"kind", "N", "params": {...}, "pinhole_radius_m",
"handedness"}`` and motif i is replicated ``replications[i]`` times.
"""

import math
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import List
from typing import Tuple

from ..errors import ConfigError
from .mask import PinholeMask
from .mask import compound_mask
from .mask import replicate
from .motifs import build_motif
from .pinhole import MotifSpec


# Accepted params per motif kind: (required, optional)
MOTIF_PARAMS = {
    "explicit": ({"points_m"}, set()),
    "logarithmic": ({"r0_m", "b", "theta_span_rad"}, set()),
    "archimedean": ({"a_m", "b_m_per_rad", "theta_span_rad"}, set()),
    "fermat": ({"r0_m", "ell_design"}, {"z_design_m", "alpha_span_rad", "wavelength_m"}),
}

MOTIF_KEYS = {"kind", "N", "params", "pinhole_radius_m", "handedness"}


def check_keys(data: Dict[str, Any], required: set, optional: set, where: str) -> None:
    """Reject missing and unknown keys of a JSON object."""

    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a JSON object")

    missing = sorted(required - data.keys())
    unknown = sorted(data.keys() - required - optional)

    if missing:
        raise ConfigError(f"{where}: missing field(s) {', '.join(missing)}")

    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(unknown)}")


def check_number(data: Dict[str, Any], key: str, where: str, positive: bool = False) -> float:
    """Return ``data[key]`` as a float, rejecting booleans, strings and non-finite values."""

    value = data[key]

    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{where}.{key} must be a finite number, got {value!r}")

    if positive and not value > 0:
        raise ConfigError(f"{where}.{key} must be positive, got {value}")

    return float(value)


def check_integer(data: Dict[str, Any], key: str, where: str, minimum: int = None) -> int:
    """Return ``data[key]`` when it is a JSON integer no smaller than ``minimum``."""

    value = data[key]

    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")

    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key} must be at least {minimum}, got {value}")

    return value


def check_list(data: Dict[str, Any], key: str, where: str) -> list:

    value = data[key]

    if not isinstance(value, list):
        raise ConfigError(f"{where}.{key} must be a list, got {value!r}")

    return value


def check_points(data: Dict[str, Any], where: str) -> List[List[float]]:
    """Explicit motif points: a list of ``[x, y]`` pairs of finite numbers."""

    points = check_list(data, "points_m", where)
    checked = []

    for index, point in enumerate(points):

        if not isinstance(point, list) or len(point) != 2:
            raise ConfigError(f"{where}.points_m[{index}] must be an [x, y] pair, got {point!r}")

        pair = dict(x=point[0], y=point[1])
        at = f"{where}.points_m[{index}]"
        checked.append([check_number(pair, "x", at), check_number(pair, "y", at)])

    return checked


def check_params(params: Dict[str, Any], where: str) -> Dict[str, Any]:

    checked = {}

    for name in params:

        if name == "points_m":
            checked[name] = check_points(params, where)

        elif name == "ell_design":
            checked[name] = check_integer(params, name, where)

        else:
            # Every length-like parameter must be positive
            checked[name] = check_number(params, name, where, positive=name.endswith("_m"))

    return checked


def motif_spec_from_dict(data: Dict[str, Any], where: str = "motif") -> MotifSpec:

    check_keys(data, MOTIF_KEYS - {"handedness"}, {"handedness"}, where)

    kind = data["kind"]

    if not isinstance(kind, str) or kind not in MOTIF_PARAMS:
        raise ConfigError(f"{where}: unknown motif kind {kind!r}")

    required, optional = MOTIF_PARAMS[kind]
    check_keys(data["params"], required, optional, f"{where}.params")
    params = check_params(data["params"], f"{where}.params")

    n = check_integer(data, "N", where, minimum=1)

    if kind == "explicit" and n != len(params["points_m"]):
        raise ConfigError(f"{where}: N={n} but {len(params['points_m'])} points given")

    return MotifSpec(
        kind=kind,
        N=n,
        params=params,
        pinhole_radius=check_number(data, "pinhole_radius_m", where, positive=True),
        handedness=check_integer(data, "handedness", where) if "handedness" in data else 1,
    )


def motif_spec_to_dict(spec: MotifSpec) -> Dict[str, Any]:

    return dict(
        kind=spec.kind,
        N=spec.N,
        params=dict(spec.params),
        pinhole_radius_m=spec.pinhole_radius,
        handedness=spec.handedness,
    )


@dataclass(frozen=True)
class MaskRecipe:
    """How to build a mask: motifs, their replication orders and whether to compound them."""

    motifs: Tuple[MotifSpec, ...]
    replications: Tuple[int, ...]
    compound: bool = False

    def __post_init__(self):

        if not self.motifs:
            raise ConfigError("mask recipe needs at least one motif")

        if len(self.motifs) != len(self.replications):
            raise ConfigError(
                f"mask recipe lists {len(self.motifs)} motif(s) but {len(self.replications)} replication order(s)"
            )

        if any(not isinstance(m, int) or isinstance(m, bool) or m < 1 for m in self.replications):
            raise ConfigError(f"replication orders must be positive integers, got {list(self.replications)}")

        if len(self.motifs) > 1 and not self.compound:
            raise ConfigError("several motifs need compound: true")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MaskRecipe":

        check_keys(data, {"motifs", "replications"}, {"compound"}, "mask")

        motifs = tuple(
            motif_spec_from_dict(motif, where=f"mask.motifs[{index}]")
            for index, motif in enumerate(check_list(data, "motifs", "mask"))
        )

        replications = check_list(data, "replications", "mask")
        orders = tuple(
            check_integer(dict(replications=m), "replications", "mask", minimum=1)
            for index, m in enumerate(replications)
        )

        compound = data.get("compound", False)

        if not isinstance(compound, bool):
            raise ConfigError(f"mask.compound must be true or false, got {compound!r}")

        return cls(motifs=motifs, replications=orders, compound=compound)

    def to_dict(self) -> Dict[str, Any]:

        return dict(
            motifs=[motif_spec_to_dict(spec) for spec in self.motifs],
            replications=list(self.replications),
            compound=self.compound,
        )

    def build(self, wavelength: float = None, z_design: float = None) -> PinholeMask:
        """Build the mask.

        Args:
            wavelength: Wavelength for Fermat motifs that do not name one.
            z_design: Design distance for Fermat motifs that do not name one.
        """

        parts = [
            replicate(build_motif(spec, wavelength=wavelength, z_design=z_design), m)
            for spec, m in zip(self.motifs, self.replications)
        ]

        return compound_mask(parts)
