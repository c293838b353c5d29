"""Tests for configuration loading."""

import logging

import pytest
from rich.logging import RichHandler

from kmlab.config import configure_logging, load_config


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test defaults when no KMLAB_* variables are set."""
    names = ("KMLAB_LOG_LEVEL", "KMLAB_MAX_SWEEPS", "KMLAB_STABLE_SWEEPS", "KMLAB_OUTPUT_FORMAT")
    for name in names:
        monkeypatch.delenv(name, raising=False)
    config = load_config()
    assert config["presets_path"] == ""
    assert config["log_level"] == "WARNING"
    assert config["max_sweeps"] == 64
    assert config["stable_sweeps"] == 1
    assert config["output_format"] == "tsv"


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test environment variables override the defaults."""
    monkeypatch.setenv("KMLAB_MAX_SWEEPS", "8")
    monkeypatch.setenv("KMLAB_STABLE_SWEEPS", "3")
    monkeypatch.setenv("KMLAB_OUTPUT_FORMAT", "json")
    config = load_config()
    assert config["max_sweeps"] == 8
    assert config["stable_sweeps"] == 3
    assert config["output_format"] == "json"


def test_configure_logging_is_idempotent() -> None:
    """Test repeated setup keeps a single rich handler."""
    configure_logging("info")
    configure_logging("debug")
    logger = logging.getLogger("kmlab")
    assert logger.level == logging.DEBUG
    assert sum(isinstance(h, RichHandler) for h in logger.handlers) == 1
