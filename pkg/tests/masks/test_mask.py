import numpy as np
import pytest

from chiralsieve.errors import ConfigError
from chiralsieve.errors import ConstructionError
from chiralsieve.errors import OverlapError
from chiralsieve.masks import Pinhole
from chiralsieve.masks import PinholeMask
from chiralsieve.masks import compound_mask
from chiralsieve.masks import explicit_motif
from chiralsieve.masks import find_overlaps
from chiralsieve.masks import mirror_mask
from chiralsieve.masks import replicate
from chiralsieve.masks import rotate_mask


def sorted_centers(mask):
    return np.round(np.array(sorted(map(tuple, np.round(mask.centers, 15)))), 15)


def test_replicated_pinholes_on_circle(five_pinhole_mask):
    radii = np.hypot(*five_pinhole_mask.centers.T)
    angles = np.arctan2(five_pinhole_mask.centers[:, 1], five_pinhole_mask.centers[:, 0])

    assert len(five_pinhole_mask) == 5
    assert np.allclose(radii, 10e-6, rtol=1e-12, atol=0)
    assert np.allclose(np.cos(angles), np.cos(2 * np.pi * np.arange(5) / 5))


@pytest.mark.parametrize("m, expected", [(5, True), (4, False), (10, False)])
def test_symmetry_of_five_pinholes(five_pinhole_mask, m, expected):
    assert five_pinhole_mask.is_symmetric(m) == expected


def test_replication_order_of_motif_copies():
    mask = replicate(explicit_motif([(10e-6, 0.0), (20e-6, 0.0)], 300e-9), 3)

    assert np.allclose(np.hypot(*mask.centers.T), [10e-6, 20e-6] * 3)


def test_pinhole_on_axis_is_kept_once():
    mask = replicate(explicit_motif([(0.0, 0.0), (10e-6, 0.0)], 300e-9), 11)

    assert len(mask) == 12
    assert mask.pinholes[0] == Pinhole(0.0, 0.0, 300e-9)


def test_replication_tracks_provenance(fermat_mask):
    (spec, m), = fermat_mask.provenance

    assert m == 5
    assert spec.kind == "fermat"


def test_overlapping_copies_raise():
    with pytest.raises(OverlapError) as info:
        replicate(explicit_motif([(1e-6, 0.0)], 400e-9), 12)

    assert len(info.value.pairs) > 0


def test_touching_discs_do_not_overlap():
    centers = np.array([[0.0, 0.0], [2.0, 0.0], [3.0, 0.0]])

    assert find_overlaps(centers, np.array([1.0, 1.0, 0.5])) == [(1, 2)]
    assert find_overlaps(centers, np.array([1.0, 0.9, 0.1])) == []


def test_declared_symmetry_is_checked():
    with pytest.raises(ConstructionError):
        PinholeMask(pinholes=(Pinhole(1e-6, 0.0, 1e-7),), symmetry_m=2)


def test_invalid_replication_order():
    with pytest.raises(ConfigError):
        replicate(explicit_motif([(1e-6, 0.0)], 1e-7), 0)


def test_compound_order_is_gcd():
    four = replicate(explicit_motif([(10e-6, 0.0)], 300e-9), 4)
    six = replicate(explicit_motif([(20e-6, 1e-6)], 300e-9), 6)

    compound = compound_mask([four, six])

    assert compound.symmetry_m == 2
    assert len(compound) == 10
    assert compound.is_symmetric(2)
    assert not compound.is_symmetric(4)


def test_compound_parts_must_not_overlap():
    a = replicate(explicit_motif([(10e-6, 0.0)], 300e-9), 4)
    b = replicate(explicit_motif([(10.2e-6, 0.0)], 300e-9), 2)

    with pytest.raises(OverlapError):
        compound_mask([a, b])


def test_mirror_flips_handedness(fermat_mask):
    mirrored = mirror_mask(fermat_mask)

    assert np.array_equal(mirrored.centers, fermat_mask.centers * [1, -1])
    assert mirrored.symmetry_m == 5
    assert all(spec.handedness == -1 for spec, _ in mirrored.provenance)


def test_rotation_by_symmetry_angle_keeps_centers(fermat_mask):
    rotated = rotate_mask(fermat_mask, 2 * np.pi / 5)

    assert rotated.symmetry_m == 5
    assert np.allclose(sorted_centers(rotated), sorted_centers(fermat_mask), rtol=0, atol=1e-14)


def test_max_radius(five_pinhole_mask):
    assert five_pinhole_mask.max_radius == pytest.approx(10.3e-6)
