"""Tests for generalized Cartan matrices and weights."""

import pytest

from kmlab.errors import NotDominant, NotGCM, NotSymmetrizable
from kmlab.rootdata import GCM, Weight, require_dominant, validate_gcm


def test_symmetrizers(a2: GCM, b2: GCM, g2: GCM, affine_a1: GCM, hyperbolic: GCM) -> None:
    """Test the componentwise-minimal symmetrizers of the bundled presets."""
    assert a2.symmetrizer == (1, 1)
    assert b2.symmetrizer == (1, 2)
    assert g2.symmetrizer == (3, 1)
    assert affine_a1.symmetrizer == (1, 1)
    assert hyperbolic.symmetrizer == (1, 1)


def test_positive_off_diagonal_rejected() -> None:
    """Test that a positive off-diagonal entry is reported with its position."""
    with pytest.raises(NotGCM) as info:
        validate_gcm([[2, 1], [1, 2]])
    assert info.value.coords == (0, 1)


@pytest.mark.parametrize(
    "matrix",
    [
        [[2, -1], [0, 2]],
        [[1, -1], [-1, 2]],
        [[2, -1, 0], [-1, 2]],
    ],
)
def test_malformed_matrices_rejected(matrix: list) -> None:
    """Test zero-pattern, diagonal and shape violations."""
    with pytest.raises(NotGCM):
        validate_gcm(matrix)


def test_default_labels() -> None:
    """Test labels default to "1".."r"."""
    gcm = validate_gcm([[2, -1], [-1, 2]])
    assert gcm.labels == ("1", "2")
    assert gcm.index("2") == 1
    with pytest.raises(KeyError):
        gcm.index("0")


def test_non_symmetrizable_form() -> None:
    """Test that the invariant form is refused without a symmetrizer."""
    gcm = validate_gcm([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])
    assert not gcm.is_symmetrizable
    with pytest.raises(NotSymmetrizable):
        gcm.form((1, 0, 0), (1, 0, 0))


def test_pairings(a2: GCM) -> None:
    """Test coroot pairings with fundamental weights and simple roots."""
    assert a2.pairing(0, a2.fundamental(0)) == 1
    assert a2.pairing(1, a2.fundamental(0)) == 0
    assert a2.pairing(0, a2.simple_root(0)) == 2
    assert a2.pairing(1, a2.simple_root(0)) == -1


def test_reflect(a1: GCM) -> None:
    """Test s(varpi) = varpi - alpha in sl2."""
    assert a1.reflect(0, a1.fundamental(0)) == Weight((1,), (1,))


def test_reflect_is_involution(hyperbolic: GCM) -> None:
    """Test that each simple reflection squares to the identity."""
    weight = Weight((2, 1), (1, 3))
    for i in hyperbolic.indices:
        assert hyperbolic.reflect(i, hyperbolic.reflect(i, weight)) == weight


def test_form_on_affine_null_root(affine_a1: GCM) -> None:
    """Test that delta = alpha_0 + alpha_1 is isotropic."""
    assert affine_a1.form((1, 1), (1, 1)) == 0
    assert affine_a1.form((1, 0), (1, 0)) == 2


def test_require_dominant(a2: GCM) -> None:
    """Test dominance checks on anchor vectors."""
    assert require_dominant(a2, (1, 0)) == a2.fundamental(0)
    with pytest.raises(NotDominant):
        require_dominant(a2, (1, -1))


def test_blocks() -> None:
    """Test decomposition of a block-diagonal matrix."""
    gcm = validate_gcm([[2, 0, 0], [0, 2, -1], [0, -1, 2]])
    assert gcm.blocks() == [[0], [1, 2]]
