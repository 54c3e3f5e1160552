"""Tests for the GloVe text parser."""

from __future__ import annotations

import numpy as np
import pytest

from sarcasm_augment.exceptions import ParseError
from sarcasm_augment.parsers.glove import GloveParser

SAMPLE_GLOVE = """the 0.418 0.24968 -0.41242
, 0.013441 0.23682 -0.16899

<user> 0.1 0.2 0.3
"""


class TestGloveParser:
    """Test GloveParser."""

    def test_parse(self):
        """Words, vectors and source lines are returned in order."""
        chunk = GloveParser().parse(SAMPLE_GLOVE)
        assert chunk.words == ["the", ",", "<user>"]
        assert chunk.vectors.shape == (3, 3)
        assert chunk.line_numbers == [1, 2, 4]
        np.testing.assert_allclose(chunk.vectors[2], [0.1, 0.2, 0.3])

    def test_first_line_offset(self):
        """Line numbers are shifted by first_line."""
        with pytest.raises(ParseError) as exc_info:
            GloveParser(dim=2, first_line=101).parse("a 1 2\nb 1\n")
        assert exc_info.value.line_number == 102

    def test_fixed_dimension(self):
        """A given dimension is enforced from the first line."""
        with pytest.raises(ParseError):
            GloveParser(dim=4).parse("a 1 2 3\n")

    def test_word_without_vector(self):
        """A bare word has no components."""
        with pytest.raises(ParseError):
            GloveParser().parse("lonely\n")

    @pytest.mark.parametrize("value", ["abc", "nan", "inf"])
    def test_bad_component(self, value):
        """Components must be finite reals."""
        with pytest.raises(ParseError):
            GloveParser().parse(f"a 1.0 {value}\n")

    def test_crlf_and_separator_characters(self):
        """CRLF endings are accepted and U+2028 does not split a line."""
        chunk = GloveParser().parse("a 1 2\r\nb\u2028c 3 4\r\n")
        assert chunk.words == ["a", "b\u2028c"]
        assert chunk.line_numbers == [1, 2]

    def test_empty_chunk(self):
        """An empty chunk parses to nothing."""
        chunk = GloveParser(dim=3).parse("")
        assert chunk.words == []
        assert chunk.vectors.shape == (0, 3)
