"""Command-line interface for kmlab."""
