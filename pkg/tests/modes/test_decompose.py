import numpy as np
import pytest

from chiralsieve.errors import ConfigError
from chiralsieve.errors import WindowError
from chiralsieve.fields import GridSpec
from chiralsieve.fields import rotate_field
from chiralsieve.modes import CoeffTable
from chiralsieve.modes import LGBasisSpec
from chiralsieve.modes import decompose
from chiralsieve.modes import lg_field
from chiralsieve.modes import synthesize
from chiralsieve.modes.io import read_coeffs_csv
from chiralsieve.modes.io import write_coeffs_csv


@pytest.fixture(scope="module")
def basis():
    return LGBasisSpec.symmetric(ell_abs_max=8, p_max=2, window=9e-9, w0=1e-9)


@pytest.fixture(scope="module")
def coeffs(basis):
    rng = np.random.default_rng(11)
    values = rng.normal(size=(3, 17)) + 1j * rng.normal(size=(3, 17))
    return CoeffTable(basis=basis, values=values)


@pytest.mark.parametrize("p, ell", [(0, 0), (0, -8), (2, 5), (1, -1)])
def test_single_mode_has_single_coefficient(lg_grid, w0, basis, p, ell):
    table = decompose(lg_field(p, ell, w0, lg_grid, amplitude=0.5 - 0.25j), basis)

    expected = CoeffTable.from_entries(basis, {(p, ell): 0.5 - 0.25j})

    assert np.allclose(table.values, expected.values, atol=1e-6)


def test_synthesis_then_decomposition_recovers_coefficients(lg_grid, basis, coeffs):
    table = decompose(synthesize(coeffs, lg_grid), basis)

    assert np.allclose(table.values, coeffs.values, atol=1e-6 * np.abs(coeffs.values).max())


def test_decomposition_is_linear(lg_grid, w0, basis):
    a = lg_field(0, 3, w0, lg_grid) + lg_field(1, -2, w0, lg_grid)
    b = lg_field(2, 7, w0, lg_grid)

    combined = decompose(a * 2.0 + b * 1j, basis).values
    separate = 2.0 * decompose(a, basis).values + 1j * decompose(b, basis).values

    assert np.allclose(combined, separate, rtol=1e-12, atol=1e-12)


def test_quarter_turn_multiplies_coefficients_by_phase(lg_grid, basis, coeffs):
    f = synthesize(coeffs, lg_grid)
    turned = decompose(rotate_field(f, np.pi / 2), basis)

    expected = decompose(f, basis).values * np.exp(1j * basis.ells * np.pi / 2)[None, :]

    assert np.allclose(turned.values, expected, rtol=0, atol=1e-9 * np.abs(expected).max())


def test_rotation_multiplies_coefficients_by_phase(lg_grid, basis, coeffs):
    angle = np.pi / 7
    turned = decompose(rotate_field(synthesize(coeffs, lg_grid), angle), basis)

    expected = coeffs.values * np.exp(1j * basis.ells * angle)[None, :]

    assert np.allclose(turned.values, expected, rtol=0, atol=2e-3 * np.abs(expected).max())


def window_power(f, basis):
    return float(np.sum(np.abs(f.samples[basis.window_mask(f.grid)]) ** 2) * f.grid.pixel_area)


def test_coefficient_power_is_bounded_by_window_power(lg_grid, basis):
    # A wider waist than the basis: only part of the field lies in its span
    f = lg_field(0, 3, 1.3e-9, lg_grid) + lg_field(1, -9, 1.3e-9, lg_grid, 0.5j)

    assert decompose(f, basis).total_power < window_power(f, basis)


def test_coefficient_power_equals_window_power_inside_span(lg_grid, basis, coeffs):
    f = synthesize(coeffs, lg_grid)

    assert decompose(f, basis).total_power == pytest.approx(window_power(f, basis), rel=1e-5)


def test_thread_count_does_not_change_result(lg_grid, w0, basis):
    f = lg_field(0, 3, w0, lg_grid) + lg_field(2, -6, w0, lg_grid)

    assert np.array_equal(decompose(f, basis).values, decompose(f, basis, threads=4).values)


def test_window_outside_grid(w0, basis):
    with pytest.raises(WindowError):
        decompose(lg_field(0, 0, w0, GridSpec.square(256, 5e-9)), basis)


def test_coeff_table_lookup(basis, coeffs):
    assert coeffs[2, -8] == coeffs.values[2, 0]
    assert coeffs[0, 8] == coeffs.values[0, 16]

    with pytest.raises(KeyError):
        coeffs[3, 0]

    with pytest.raises(KeyError):
        coeffs[0, 9]


def test_coeff_table_is_read_only(coeffs):
    with pytest.raises(ValueError):
        coeffs.values[0, 0] = 1


def test_coeff_table_shape_is_checked(basis):
    with pytest.raises(ConfigError):
        CoeffTable(basis=basis, values=np.zeros((2, 17)))


def test_coeff_table_items_follow_basis_order(basis, coeffs):
    keys = [key for key, _ in coeffs.items()]

    assert keys == basis.indices
    assert coeffs.total_power == pytest.approx(sum(abs(c) ** 2 for _, c in coeffs.items()))


def test_coeff_csv(tmp_path, basis, coeffs):
    path = tmp_path / "coeffs.csv"
    write_coeffs_csv(path, coeffs)

    lines = path.read_text().splitlines()

    assert lines[0] == "p,ell,re,im"
    assert lines[1].startswith("0,-8,")
    assert lines[2].startswith("1,-8,")
    assert np.array_equal(read_coeffs_csv(path, basis).values, coeffs.values)
