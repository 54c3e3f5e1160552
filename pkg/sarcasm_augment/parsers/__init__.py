"""Parsers for dataset files, GloVe vectors and experiment plans."""

from __future__ import annotations

from .base import Parser, split_lines
from .glove import GloveChunk, GloveParser
from .plan import PlanParser, load_plan
from .records import (
    CsvRecordParser,
    JsonlRecordParser,
    RawRecord,
    get_record_parser,
)

__all__ = [
    "CsvRecordParser",
    "GloveChunk",
    "GloveParser",
    "JsonlRecordParser",
    "Parser",
    "PlanParser",
    "RawRecord",
    "get_record_parser",
    "load_plan",
    "split_lines",
]
