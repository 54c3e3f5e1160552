"""Parameter validation utilities shared by every pipeline stage."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from .exceptions import InputFileNotFoundError, ValidationError

if TYPE_CHECKING:
    from collections.abc import Sized


def validate_file_exists(file_path: str | Path) -> Path:
    """
    Validate that a file exists.

    Args:
        file_path: Path to the file to check.

    Returns:
        Path object of the validated file.

    Raises:
        InputFileNotFoundError: If file does not exist.

    Example:
        >>> validate_file_exists("train.csv")
        PosixPath('train.csv')
        >>> validate_file_exists("missing.csv")
        InputFileNotFoundError: File not found: missing.csv
    """
    path = Path(file_path)
    if not path.is_file():
        raise InputFileNotFoundError(
            f"File not found: {file_path}",
            file_path=str(file_path),
        )
    return path


def validate_non_empty(values: Sized, parameter_name: str = "values") -> None:
    """
    Validate that a collection is not empty.

    Raises:
        ValidationError: If the collection is empty.
    """
    if len(values) == 0:
        raise ValidationError(
            f"At least one value required for {parameter_name}",
            parameter=parameter_name,
            value=values,
            expected="Non-empty collection",
        )


def validate_positive(value: float | int, parameter_name: str = "value") -> None:
    """
    Validate that a number is strictly positive.

    Raises:
        ValidationError: If value is not positive.

    Example:
        >>> validate_positive(5)  # OK
        >>> validate_positive(0, "k_candidates")
        ValidationError: k_candidates must be positive, got 0
    """
    if not value > 0:
        raise ValidationError(
            f"{parameter_name} must be positive, got {value}",
            parameter=parameter_name,
            value=value,
            expected="value > 0",
        )


def validate_non_negative(value: float | int, parameter_name: str = "value") -> None:
    """Validate that a number is zero or greater."""
    if not value >= 0:
        raise ValidationError(
            f"{parameter_name} must be non-negative, got {value}",
            parameter=parameter_name,
            value=value,
            expected="value >= 0",
        )


def validate_range(
    value: float | int,
    min_val: float | int,
    max_val: float | int,
    parameter_name: str = "value",
) -> None:
    """
    Validate that a number is within a closed range.

    Args:
        value: Number to validate.
        min_val: Minimum allowed value (inclusive).
        max_val: Maximum allowed value (inclusive).
        parameter_name: Name of the parameter (for error messages).

    Raises:
        ValidationError: If value is out of range.

    Example:
        >>> validate_range(0.2, 0, 1, "warmup_ratio")  # OK
        >>> validate_range(1.5, 0, 1, "warmup_ratio")
        ValidationError: warmup_ratio must be between 0 and 1
    """
    if not min_val <= value <= max_val:
        raise ValidationError(
            f"{parameter_name} must be between {min_val} and {max_val}, got {value}",
            parameter=parameter_name,
            value=value,
            expected=f"{min_val} <= {parameter_name} <= {max_val}",
        )


def validate_open_interval(
    value: float,
    min_val: float,
    max_val: float,
    parameter_name: str = "value",
) -> None:
    """
    Validate that a number lies strictly inside (min_val, max_val).

    Raises:
        ValidationError: If value touches or leaves the interval.
    """
    if not min_val < value < max_val:
        raise ValidationError(
            f"{parameter_name} must be strictly between {min_val} and {max_val}, "
            f"got {value}",
            parameter=parameter_name,
            value=value,
            expected=f"{min_val} < {parameter_name} < {max_val}",
        )
