"""Tests for the exception hierarchy."""

from __future__ import annotations

import pytest

from sarcasm_augment.exceptions import (
    ConfigError,
    DimensionMismatchError,
    InputFileNotFoundError,
    ParseError,
    SarcasmAugmentError,
    ValidationError,
)


class TestExceptionHierarchy:
    """Test exception class hierarchy."""

    @pytest.mark.parametrize(
        "cls",
        [ValidationError, InputFileNotFoundError, ParseError, ConfigError, DimensionMismatchError],
    )
    def test_all_exceptions_inherit_from_base(self, cls):
        """Every library error is a SarcasmAugmentError."""
        assert issubclass(cls, SarcasmAugmentError)

    def test_base_is_exception(self):
        """SarcasmAugmentError inherits from Exception."""
        assert issubclass(SarcasmAugmentError, Exception)


class TestValidationError:
    """Test ValidationError."""

    def test_initialization(self):
        """Attributes are stored."""
        err = ValidationError(
            message="Invalid fraction",
            parameter="fraction",
            value=1.5,
            expected="0 < fraction < 1",
        )
        assert err.parameter == "fraction"
        assert err.value == 1.5
        assert err.expected == "0 < fraction < 1"

    def test_string_representation(self):
        """str() lists message, parameter, value and expectation."""
        err = ValidationError("Invalid fraction", "fraction", 1.5, "0 < fraction < 1")
        text = str(err)
        assert "Invalid fraction" in text
        assert "Parameter: fraction" in text
        assert "Value: 1.5" in text
        assert "Expected: 0 < fraction < 1" in text


class TestInputFileNotFoundError:
    """Test InputFileNotFoundError."""

    def test_string_representation(self):
        """The path appears in the message."""
        err = InputFileNotFoundError("File not found", file_path="/data/missing.csv")
        assert err.file_path == "/data/missing.csv"
        assert "/data/missing.csv" in str(err)


class TestParseError:
    """Test ParseError."""

    def test_line_and_source(self):
        """Line number and source file are reported."""
        err = ParseError("Unknown label", raw_output="x,maybe", line_number=3, source="a.csv")
        text = str(err)
        assert err.line_number == 3
        assert "Line: 3" in text
        assert "File: a.csv" in text
        assert "x,maybe" in text

    def test_optional_fields_omitted(self):
        """Without line and source only message and output are shown."""
        text = str(ParseError("Bad", raw_output="raw"))
        assert "Line:" not in text
        assert "File:" not in text

    def test_long_output_truncated(self):
        """Raw output is truncated to 200 characters."""
        err = ParseError("Bad", raw_output="x" * 500)
        assert "x" * 200 + "..." in str(err)
        assert "x" * 201 not in str(err)


class TestConfigError:
    """Test ConfigError."""

    def test_names_field(self):
        """The offending field is part of the message."""
        err = ConfigError("k must be positive", field="augment.k_candidates", value=0)
        text = str(err)
        assert err.field == "augment.k_candidates"
        assert "Field: augment.k_candidates" in text
        assert "Value: 0" in text

    def test_can_be_raised_and_caught_as_base(self):
        """ConfigError is caught by the base class."""
        with pytest.raises(SarcasmAugmentError):
            raise ConfigError("bad", field="levels")


class TestDimensionMismatchError:
    """Test DimensionMismatchError."""

    def test_string_representation(self):
        """Both dimensions are reported."""
        err = DimensionMismatchError("dims differ", expected=100, actual=50)
        assert err.expected == 100
        assert err.actual == 50
        assert "Expected dim: 100" in str(err)
        assert "Actual dim: 50" in str(err)
