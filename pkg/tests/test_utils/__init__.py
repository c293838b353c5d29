"""Tests for linear algebra helpers."""
