"""Tests for root data."""
