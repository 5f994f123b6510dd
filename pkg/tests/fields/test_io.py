import io

import numpy as np
import pytest
from PIL import Image

from chiralsieve.errors import ConfigError
from chiralsieve.fields import ComplexField
from chiralsieve.fields import GridSpec
from chiralsieve.fields.io import MAGIC
from chiralsieve.fields.io import from_cvf1_bytes
from chiralsieve.fields.io import intensity_image
from chiralsieve.fields.io import phase_image
from chiralsieve.fields.io import read_cvf1
from chiralsieve.fields.io import read_pgm
from chiralsieve.fields.io import to_cvf1_bytes
from chiralsieve.fields.io import to_pgm_bytes
from chiralsieve.fields.io import write_cvf1
from chiralsieve.fields.io import write_intensity_pgm
from chiralsieve.fields.io import write_pgm


@pytest.fixture
def field():
    grid = GridSpec(nx=3, ny=2, pitch_x=1e-9, pitch_y=2e-9, origin=(5e-9, -1e-9))
    samples = np.arange(6).reshape(2, 3) + 1j * np.arange(6, 0, -1).reshape(2, 3)
    return ComplexField(grid=grid, samples=samples, z_label=-33.6e-6)


def test_cvf1_layout(field):
    data = to_cvf1_bytes(field)

    assert data[:4] == MAGIC
    assert len(data) == 4 + 2 * 4 + 5 * 8 + 6 * 16

    # first sample pair after the header is (i=0, j=0), the second is (i=1, j=0)
    body = np.frombuffer(data[52:], dtype="<f8")
    assert body[:4].tolist() == [0.0, 6.0, 1.0, 5.0]


def test_cvf1_file_keeps_everything(tmp_path, field):
    path = tmp_path / "field.cvf1"
    write_cvf1(path, field)

    back = read_cvf1(path)

    assert back.grid == field.grid
    assert back.z_label == field.z_label
    assert np.array_equal(back.samples, field.samples)


@pytest.mark.parametrize("mutate", [lambda d: b"CVF2" + d[4:], lambda d: d[:-1], lambda d: d[:10]])
def test_cvf1_rejects_corrupt_streams(field, mutate):
    with pytest.raises(ConfigError):
        from_cvf1_bytes(mutate(to_cvf1_bytes(field)))


def test_pgm_puts_positive_y_on_top():
    image = np.array([[1, 2], [3, 4]], dtype=np.uint16)
    data = to_pgm_bytes(image)

    assert data.startswith(b"P5\n2 2\n65535\n")

    with Image.open(io.BytesIO(data)) as img:
        assert img.size == (2, 2)
        assert np.asarray(img).astype(np.uint16).tolist() == [[3, 4], [1, 2]]


def test_pgm_keeps_full_16_bit_range(tmp_path):
    image = np.array([[0, 1, 256], [32768, 65534, 65535]], dtype=np.uint16)
    write_pgm(tmp_path / "r.pgm", image)

    assert np.array_equal(read_pgm(tmp_path / "r.pgm"), image)


@pytest.mark.parametrize("data", [b"", b"P5\n2 2\n65535\n\x00", b"not an image at all"])
def test_read_pgm_rejects_garbage(tmp_path, data):
    (tmp_path / "bad.pgm").write_bytes(data)

    with pytest.raises(ConfigError):
        read_pgm(tmp_path / "bad.pgm")


def test_read_pgm_rejects_8_bit_images(tmp_path):
    Image.fromarray(np.zeros((2, 2), dtype=np.uint8)).save(tmp_path / "l.pgm")

    with pytest.raises(ConfigError):
        read_pgm(tmp_path / "l.pgm")


def test_intensity_image_scales_to_full_range(tmp_path, field):
    image = intensity_image(field)

    assert image.max() == 65535
    assert image.dtype == np.uint16

    write_intensity_pgm(tmp_path / "i.pgm", field)
    assert np.array_equal(read_pgm(tmp_path / "i.pgm"), image)


def test_intensity_image_of_dark_field():
    f = ComplexField.zeros(GridSpec.square(4, 4e-9))
    assert not intensity_image(f).any()


def test_phase_image_endpoints():
    grid = GridSpec(nx=3, ny=1, pitch_x=1.0, pitch_y=1.0)
    f = ComplexField(grid=grid, samples=np.array([[-1.0, 1.0, 1j]]))

    assert phase_image(f).tolist() == [[65535, 32768, 49151]]
