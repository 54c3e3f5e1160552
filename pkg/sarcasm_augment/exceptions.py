"""Exception hierarchy for sarcasm-augment."""

from __future__ import annotations

from typing import Any


class SarcasmAugmentError(Exception):
    """Base exception for all sarcasm-augment errors."""

    pass


class ValidationError(SarcasmAugmentError):
    """Invalid parameter or configuration value."""

    def __init__(
        self,
        message: str,
        parameter: str,
        value: Any,
        expected: str,
    ):
        """
        Initialize ValidationError.

        Args:
            message: Error message.
            parameter: Parameter name that failed validation.
            value: The invalid value provided.
            expected: Description of expected value/format.
        """
        super().__init__(message)
        self.parameter = parameter
        self.value = value
        self.expected = expected

    def __str__(self) -> str:
        """Return formatted error message."""
        return (
            f"{super().__str__()}\n"
            f"Parameter: {self.parameter}\n"
            f"Value: {self.value!r}\n"
            f"Expected: {self.expected}"
        )


class InputFileNotFoundError(SarcasmAugmentError):
    """Input file does not exist."""

    def __init__(self, message: str, file_path: str):
        """
        Initialize InputFileNotFoundError.

        Args:
            message: Error message.
            file_path: Path to the file that was not found.
        """
        super().__init__(message)
        self.file_path = file_path

    def __str__(self) -> str:
        """Return formatted error message."""
        return f"{super().__str__()}\nFile: {self.file_path}"


class ParseError(SarcasmAugmentError):
    """Failed to parse a dataset record, embedding line or plan document."""

    def __init__(
        self,
        message: str,
        raw_output: str,
        line_number: int | None = None,
        source: str | None = None,
    ):
        """
        Initialize ParseError.

        Args:
            message: Error message.
            raw_output: The raw text that failed to parse.
            line_number: 1-based line number of the offending record, if known.
            source: File the text came from, if any.
        """
        super().__init__(message)
        self.raw_output = raw_output
        self.line_number = line_number
        self.source = source

    def __str__(self) -> str:
        """Return formatted error message."""
        output_preview = (
            self.raw_output[:200] + "..."
            if len(self.raw_output) > 200
            else self.raw_output
        )
        parts = [super().__str__()]
        if self.source is not None:
            parts.append(f"File: {self.source}")
        if self.line_number is not None:
            parts.append(f"Line: {self.line_number}")
        parts.append(f"Output: {output_preview}")
        return "\n".join(parts)


class ConfigError(SarcasmAugmentError):
    """Experiment plan or config document is invalid."""

    def __init__(self, message: str, field: str, value: Any = None):
        """
        Initialize ConfigError.

        Args:
            message: Error message.
            field: Dotted path of the offending field (e.g. "augment.k_candidates").
            value: The rejected value.
        """
        super().__init__(message)
        self.field = field
        self.value = value

    def __str__(self) -> str:
        """Return formatted error message."""
        return f"{super().__str__()}\nField: {self.field}\nValue: {self.value!r}"


class DimensionMismatchError(SarcasmAugmentError):
    """Vector, model or table dimensions disagree."""

    def __init__(self, message: str, expected: int, actual: int):
        """
        Initialize DimensionMismatchError.

        Args:
            message: Error message.
            expected: Expected dimension.
            actual: Dimension that was found.
        """
        super().__init__(message)
        self.expected = expected
        self.actual = actual

    def __str__(self) -> str:
        """Return formatted error message."""
        return (
            f"{super().__str__()}\nExpected dim: {self.expected}\n"
            f"Actual dim: {self.actual}"
        )
