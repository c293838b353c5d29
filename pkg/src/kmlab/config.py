"""Configuration loading and logging setup."""

import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler


def load_config() -> Dict[str, Any]:
    """Load configuration from environment variables.

    Returns:
        Configuration dictionary
    """
    load_dotenv()

    config = {
        "presets_path": os.getenv("KMLAB_PRESETS", ""),
        "log_level": os.getenv("KMLAB_LOG_LEVEL", "WARNING"),
        "max_sweeps": int(os.getenv("KMLAB_MAX_SWEEPS", "64")),
        "stable_sweeps": int(os.getenv("KMLAB_STABLE_SWEEPS", "1")),
        "output_format": os.getenv("KMLAB_OUTPUT_FORMAT", "tsv"),
    }

    return config


def configure_logging(level: Optional[str] = None) -> None:
    """Route kmlab loggers through a rich handler on stderr.

    Args:
        level: Log level name; defaults to the configured KMLAB_LOG_LEVEL
    """
    if level is None:
        level = load_config()["log_level"]

    logger = logging.getLogger("kmlab")
    logger.setLevel(level.upper())
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True), show_path=False, rich_tracebacks=False
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.propagate = False
