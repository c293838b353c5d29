"""Tests for section ring truncations."""
