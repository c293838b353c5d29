"""Tests for the preset catalog."""

from pathlib import Path

import pytest

from kmlab.errors import UnknownPreset
from kmlab.rootdata import get_preset, list_presets, load_gcm_file, resolve_gcm


def test_bundled_presets_listed() -> None:
    """Test the bundled catalog contains the finite, affine and hyperbolic examples."""
    names = list_presets()
    for name in ("A1", "A2", "B2", "G2", "A1^1", "Hyp33"):
        assert name in names


def test_affine_labels() -> None:
    """Test affine presets are labelled from 0."""
    assert get_preset("A1^1").labels == ("0", "1")


def test_unknown_preset() -> None:
    """Test an unknown preset name."""
    with pytest.raises(UnknownPreset):
        get_preset("E99")


def test_load_gcm_file(gcm_file: Path) -> None:
    """Test loading a matrix with custom labels from JSON."""
    gcm = load_gcm_file(gcm_file)
    assert gcm.labels == ("a", "b")
    assert gcm.symmetrizer == (1, 1)


def test_resolve_prefers_existing_file(gcm_file: Path) -> None:
    """Test resolve_gcm reads files and falls back to preset names."""
    assert resolve_gcm(str(gcm_file)).labels == ("a", "b")
    assert resolve_gcm("A2").labels == ("1", "2")


def test_catalog_override(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test KMLAB_PRESETS points the catalog at another file."""
    catalog = tmp_path / "catalog.yaml"
    catalog.write_text("X2:\n  matrix: [[2, -1], [-1, 2]]\n", encoding="utf-8")
    monkeypatch.setenv("KMLAB_PRESETS", str(catalog))
    assert list_presets() == ["X2"]
    assert get_preset("X2").rank == 2
