"""Base class for all text parsers."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Generic, TypeVar

T = TypeVar("T")


class Parser(ABC, Generic[T]):
    """
    Abstract base class for parsers of the package's input formats.

    Each implementation turns raw text (a dataset file, a GloVe chunk, a plan
    document) into structured data. The type parameter T is the parse result.

    Example:
        >>> class UpperParser(Parser[str]):
        ...     def parse(self, output: str) -> str:
        ...         return output.upper()
    """

    @abstractmethod
    def parse(self, output: str) -> T:
        """
        Parse raw text into structured data.

        Args:
            output: Raw text to parse.

        Returns:
            Parsed data in the appropriate structured format.

        Raises:
            ParseError: If the text cannot be parsed.
        """
        pass


def split_lines(text: str) -> list[str]:
    """
    Split file content into physical lines.

    Only ``\\n`` ends a line (a trailing ``\\r`` is dropped), unlike
    :meth:`str.splitlines`, which also breaks on U+0085, U+2028 and other
    separators that may legally appear inside a token or a JSON string.

    Example:
        >>> split_lines("a\\u2028b\\r\\nc\\n")
        ['a\\u2028b', 'c']
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]
