"""Tests for validation utilities."""

from __future__ import annotations

from pathlib import Path

import pytest

from sarcasm_augment.exceptions import InputFileNotFoundError, ValidationError
from sarcasm_augment.validation import (
    validate_file_exists,
    validate_non_empty,
    validate_non_negative,
    validate_open_interval,
    validate_positive,
    validate_range,
)


class TestValidateFileExists:
    """Test validate_file_exists function."""

    def test_valid_file(self, tmp_path):
        """Existing file returns a Path."""
        test_file = tmp_path / "train.csv"
        test_file.touch()

        result = validate_file_exists(test_file)
        assert isinstance(result, Path)
        assert result.exists()

    def test_missing_file(self, tmp_path):
        """Missing file raises with the path attached."""
        with pytest.raises(InputFileNotFoundError) as exc_info:
            validate_file_exists(tmp_path / "missing.csv")

        assert "missing.csv" in exc_info.value.file_path

    def test_directory_is_not_a_file(self, tmp_path):
        """A directory does not count as an input file."""
        with pytest.raises(InputFileNotFoundError):
            validate_file_exists(tmp_path)


class TestValidatePositive:
    """Test validate_positive function."""

    @pytest.mark.parametrize("value", [1, 0.001, 100])
    def test_valid(self, value):
        """Positive values pass."""
        validate_positive(value)

    @pytest.mark.parametrize("value", [0, -1, -0.5, float("nan")])
    def test_invalid(self, value):
        """Zero, negatives and NaN fail."""
        with pytest.raises(ValidationError) as exc_info:
            validate_positive(value, "k_candidates")
        assert exc_info.value.parameter == "k_candidates"


class TestValidateNonNegative:
    """Test validate_non_negative function."""

    def test_zero_allowed(self):
        """Zero passes."""
        validate_non_negative(0)

    def test_negative_rejected(self):
        """Negative values fail."""
        with pytest.raises(ValidationError):
            validate_non_negative(-1, "levels")


class TestValidateRange:
    """Test validate_range function."""

    @pytest.mark.parametrize("value", [0, 0.2, 1])
    def test_bounds_inclusive(self, value):
        """Both bounds are allowed."""
        validate_range(value, 0, 1, "warmup_ratio")

    @pytest.mark.parametrize("value", [-0.01, 1.01])
    def test_out_of_range(self, value):
        """Values outside the closed range fail."""
        with pytest.raises(ValidationError) as exc_info:
            validate_range(value, 0, 1, "warmup_ratio")
        assert "warmup_ratio" in str(exc_info.value)


class TestValidateOpenInterval:
    """Test validate_open_interval function."""

    def test_inside(self):
        """Interior values pass."""
        validate_open_interval(0.1, 0.0, 1.0, "fraction")

    @pytest.mark.parametrize("value", [0.0, 1.0, 1.5])
    def test_bounds_rejected(self, value):
        """Bounds and exterior values fail."""
        with pytest.raises(ValidationError):
            validate_open_interval(value, 0.0, 1.0, "fraction")


class TestValidateNonEmpty:
    """Test validate_non_empty function."""

    def test_non_empty(self):
        """A populated collection passes."""
        validate_non_empty([0])

    def test_empty(self):
        """An empty collection fails."""
        with pytest.raises(ValidationError) as exc_info:
            validate_non_empty([], "datasets")
        assert exc_info.value.parameter == "datasets"
