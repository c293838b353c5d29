"""Tests for kmlab."""
