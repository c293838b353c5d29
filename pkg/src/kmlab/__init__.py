"""kmlab - truncated computations for Kac-Moody flag varieties."""

__version__ = "0.1.0"
