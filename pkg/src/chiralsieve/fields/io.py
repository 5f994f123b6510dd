"""Binary field format CVF1 and 16-bit PGM images through Pillow.

CVF1 layout (little endian): the magic ``CVF1``, u32 nx, u32 ny, f64 pitch_x,
f64 pitch_y, f64 origin_x, f64 origin_y, f64 z_label, then nx*ny (re, im) f64
pairs with j outer and i inner.
"""

import io
import pathlib
import struct
from typing import Union

import numpy as np
from PIL import Image

from ..errors import ConfigError
from .field import ComplexField
from .grid import GridSpec


MAGIC = b"CVF1"

_HEADER = struct.Struct("<4sIIddddd")

PathLike = Union[str, pathlib.Path]


def to_cvf1_bytes(f: ComplexField) -> bytes:
    """Serialize a field to CVF1 bytes."""

    grid = f.grid
    header = _HEADER.pack(
        MAGIC,
        grid.nx,
        grid.ny,
        grid.pitch_x,
        grid.pitch_y,
        grid.origin[0],
        grid.origin[1],
        f.z_label,
    )

    # Rows are j, so C order is j outer and i inner
    body = np.ascontiguousarray(f.samples, dtype="<c16").tobytes()

    return header + body


def from_cvf1_bytes(data: bytes) -> ComplexField:
    """Parse CVF1 bytes back into a field."""

    if len(data) < _HEADER.size:
        raise ConfigError("truncated CVF1 header")

    magic, nx, ny, pitch_x, pitch_y, origin_x, origin_y, z_label = _HEADER.unpack_from(data)

    if magic != MAGIC:
        raise ConfigError(f"not a CVF1 stream (magic {magic!r})")

    expected = _HEADER.size + 16 * nx * ny

    if len(data) != expected:
        raise ConfigError(f"CVF1 stream holds {len(data)} bytes, expected {expected}")

    grid = GridSpec(nx=nx, ny=ny, pitch_x=pitch_x, pitch_y=pitch_y, origin=(origin_x, origin_y))
    samples = np.frombuffer(data, dtype="<c16", offset=_HEADER.size).reshape(ny, nx)

    return ComplexField(grid=grid, samples=samples, z_label=z_label)


def write_cvf1(path: PathLike, f: ComplexField) -> None:
    pathlib.Path(path).write_bytes(to_cvf1_bytes(f))


def read_cvf1(path: PathLike) -> ComplexField:
    return from_cvf1_bytes(pathlib.Path(path).read_bytes())


def to_pgm_bytes(image: np.ndarray) -> bytes:
    """Encode a uint16 image as a binary 16-bit PGM.

    Row 0 of `image` is the bottom of the picture (smallest y), so rows are
    flipped to put +y at the top.
    """

    image = np.ascontiguousarray(np.asarray(image)[::-1], dtype=np.uint16)

    # A uint16 array becomes a mode "I;16" image, saved with maxval 65535
    buffer = io.BytesIO()
    Image.fromarray(image).save(buffer, format="PPM")

    return buffer.getvalue()


def intensity_image(f: ComplexField) -> np.ndarray:
    """Intensity linearly scaled from [0, max] to [0, 65535]."""

    intensity = f.intensity
    peak = intensity.max()

    if peak == 0:
        return np.zeros(f.grid.shape, dtype=np.uint16)

    return np.round(intensity / peak * 65535).astype(np.uint16)


def phase_image(f: ComplexField) -> np.ndarray:
    """Phase mapped from (-pi, pi] to [0, 65535]."""

    phase = f.phase

    # np.angle returns -pi for some negative reals; that is the same point as pi
    phase = np.where(phase <= -np.pi, np.pi, phase)

    return np.round((phase + np.pi) / (2 * np.pi) * 65535).astype(np.uint16)


def write_pgm(path: PathLike, image: np.ndarray) -> None:
    pathlib.Path(path).write_bytes(to_pgm_bytes(image))


def write_intensity_pgm(path: PathLike, f: ComplexField) -> None:
    write_pgm(path, intensity_image(f))


def write_phase_pgm(path: PathLike, f: ComplexField) -> None:
    write_pgm(path, phase_image(f))


def read_pgm(path: PathLike) -> np.ndarray:
    """Read a 16-bit PGM written by this module, returning rows bottom first."""

    try:
        with Image.open(str(path)) as img:
            if img.format != "PPM" or img.mode not in ("I", "I;16", "I;16B"):
                raise ConfigError(f"{path} is not a 16-bit binary PGM")

            image = np.asarray(img)
    except (OSError, ValueError) as e:
        raise ConfigError(f"{path} is not a 16-bit binary PGM") from e

    return image[::-1].astype(np.uint16)
