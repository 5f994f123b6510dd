"""Exception hierarchy shared by the library and the command line.

Every exception carries the exit code the CLI uses for it and a short
machine-readable name written as ``error_code=<name>`` on the error stream.
"""

from typing import List
from typing import Tuple


class ChiralSieveError(Exception):
    """Base class of all errors raised by chiralsieve."""

    exit_code = 1

    @property
    def error_code(self) -> str:
        return type(self).__name__


class ConfigError(ChiralSieveError):
    """The run configuration or mask recipe failed schema validation."""

    exit_code = 2


class ConstructionError(ChiralSieveError):
    """A mask could not be built from the given motifs."""

    exit_code = 3


class OverlapError(ConstructionError):
    """Two or more pinholes overlap."""

    def __init__(self, pairs: List[Tuple[int, int]], message: str = None):

        self.pairs = list(pairs)

        if message is None:
            shown = ", ".join(f"({i}, {j})" for i, j in self.pairs[:10])
            more = "" if len(self.pairs) <= 10 else f" and {len(self.pairs) - 10} more"
            message = f"overlapping pinholes: {shown}{more}"

        super(OverlapError, self).__init__(message)


class NegativeRadicand(ConstructionError):
    """The Fermat design formula has no real radius for some pinhole."""


class ExtentError(ConstructionError):
    """A pinhole is clipped by the raster grid."""


class PhysicsError(ChiralSieveError):
    """A physical or numerical precondition of an operation is violated."""

    exit_code = 4


class ResolutionError(PhysicsError):
    """The sampling pitch is too coarse for the requested operation."""


class WindowError(PhysicsError):
    """The expansion window does not fit inside the sampled grid."""


class FresnelNumberError(PhysicsError):
    """A pinhole is too large for the per-pinhole form-factor model.

    Use `propagate_oracle` for such masks.
    """


class GeometryError(PhysicsError):
    """The optical setup does not define a valid effective geometry."""


class AmplitudeTooLow(PhysicsError):
    """The field nearly vanishes on the measurement circle."""


class Undersampled(PhysicsError):
    """Too few samples to resolve the measured phase or intensity structure."""


class ZeroPower(PhysicsError):
    """A spectrum was requested for a field carrying no power."""


class NoPattern(PhysicsError):
    """No stripe pattern was found along the profile line."""


class SelfCheckError(ChiralSieveError):
    """An internal consistency check failed."""

    exit_code = 5
