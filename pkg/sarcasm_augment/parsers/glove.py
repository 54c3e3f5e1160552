"""Parser for GloVe text-format word vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import ParseError
from .base import Parser, split_lines


@dataclass(frozen=True)
class GloveChunk:
    """
    Parsed block of GloVe lines.

    Attributes:
        words: Words in line order.
        vectors: ``len(words) x dim`` float64 matrix.
        line_numbers: 1-based source line of each word.
    """

    words: list[str]
    vectors: np.ndarray
    line_numbers: list[int]


class GloveParser(Parser[GloveChunk]):
    """
    Parse ``word v1 v2 ... vd`` lines.

    The dimension is fixed by the first non-blank line unless given. Line
    numbers reported in errors are offset by ``first_line`` so a chunk of a
    larger file reports file positions.

    Example:
        >>> chunk = GloveParser().parse("a 1.0 0.0\\nb 0.0 1.0")
        >>> chunk.words, chunk.vectors.shape
        (['a', 'b'], (2, 2))
    """

    def __init__(
        self,
        dim: int | None = None,
        first_line: int = 1,
        source: str | None = None,
    ):
        self.dim = dim
        self.first_line = first_line
        self.source = source

    def parse(self, output: str) -> GloveChunk:
        words: list[str] = []
        rows: list[np.ndarray] = []
        line_numbers: list[int] = []
        dim = self.dim

        for offset, line in enumerate(split_lines(output)):
            line_number = self.first_line + offset
            parts = line.rstrip().split(" ")
            if not parts[0]:
                continue
            if dim is None:
                dim = len(parts) - 1
                if dim < 1:
                    raise ParseError(
                        "Embedding line has no vector components",
                        raw_output=line,
                        line_number=line_number,
                        source=self.source,
                    )
            if len(parts) - 1 != dim:
                raise ParseError(
                    f"Inconsistent dimension: expected {dim}, got {len(parts) - 1}",
                    raw_output=line,
                    line_number=line_number,
                    source=self.source,
                )
            try:
                row = np.array(parts[1:], dtype=np.float64)
            except ValueError as exc:
                raise ParseError(
                    f"Unparsable real on embedding line: {exc}",
                    raw_output=line,
                    line_number=line_number,
                    source=self.source,
                ) from exc
            if not np.all(np.isfinite(row)):
                raise ParseError(
                    "Non-finite component on embedding line",
                    raw_output=line,
                    line_number=line_number,
                    source=self.source,
                )
            words.append(parts[0])
            rows.append(row)
            line_numbers.append(line_number)

        matrix = (
            np.vstack(rows) if rows else np.zeros((0, dim or 0), dtype=np.float64)
        )
        return GloveChunk(words=words, vectors=matrix, line_numbers=line_numbers)
