"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest

from kmlab.reps.modules import HighestWeightModule
from kmlab.rootdata import GCM, get_preset


@pytest.fixture(autouse=True)
def bundled_presets(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep tests on the bundled catalog regardless of the caller's environment."""
    monkeypatch.setenv("KMLAB_PRESETS", "")


@pytest.fixture
def a1() -> GCM:
    return get_preset("A1")


@pytest.fixture
def a2() -> GCM:
    return get_preset("A2")


@pytest.fixture
def b2() -> GCM:
    return get_preset("B2")


@pytest.fixture
def g2() -> GCM:
    return get_preset("G2")


@pytest.fixture
def affine_a1() -> GCM:
    return get_preset("A1^1")


@pytest.fixture
def hyperbolic() -> GCM:
    return get_preset("Hyp33")


@pytest.fixture
def adjoint_a2(a2: GCM) -> HighestWeightModule:
    """L(rho) for sl3, the eight-dimensional adjoint module."""
    return HighestWeightModule(a2, (1, 1))


@pytest.fixture
def sym2_a1(a1: GCM) -> HighestWeightModule:
    """L(2 varpi) for sl2."""
    return HighestWeightModule(a1, (2,))


@pytest.fixture
def gcm_file(tmp_path: Path) -> Path:
    """A JSON file holding the A2 matrix with custom labels.

    Args:
        tmp_path: Pytest temporary path

    Returns:
        Path to the file
    """
    path = tmp_path / "sl3.json"
    path.write_text('{"labels": ["a", "b"], "matrix": [[2, -1], [-1, 2]]}', encoding="utf-8")
    return path
