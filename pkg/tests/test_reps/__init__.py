"""Tests for characters, modules and Demazure families."""
