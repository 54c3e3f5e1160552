"""Tests for the parsers package."""
