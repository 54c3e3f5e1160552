"""Parsers for labeled dataset files (CSV and JSON Lines)."""

from __future__ import annotations

import io
import json
import logging
import re
from dataclasses import dataclass

import pandas as pd

from ..exceptions import ParseError
from .base import Parser, split_lines

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("text", "label")
_PANDAS_LINE = re.compile(r"line (\d+)")


@dataclass(frozen=True)
class RawRecord:
    """One record as read from disk, before label/split validation."""

    text: str
    label: str
    split: str | None
    line_number: int


class CsvRecordParser(Parser[list[RawRecord]]):
    """
    Parse ``text,label[,split]`` CSV content.

    Line numbers are 1-based file lines, the header being line 1. Blank
    lines are skipped and quoted texts spanning several lines advance the
    count by their embedded newlines.

    Example:
        >>> CsvRecordParser().parse("text,label\\nso fun,sarcastic\\n")[0].line_number
        2
    """

    def __init__(self, source: str | None = None):
        self.source = source

    def parse(self, output: str) -> list[RawRecord]:
        if not output.strip():
            raise ParseError("Empty CSV file", raw_output=output, source=self.source)
        try:
            frame = pd.read_csv(
                io.StringIO(output),
                dtype=str,
                keep_default_na=False,
                na_filter=False,
                skip_blank_lines=False,
            )
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            match = _PANDAS_LINE.search(str(exc))
            raise ParseError(
                f"Malformed CSV record: {exc}",
                raw_output=output,
                line_number=int(match.group(1)) if match else None,
                source=self.source,
            ) from exc

        missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
        if missing:
            raise ParseError(
                f"CSV header lacks required column(s): {', '.join(missing)}",
                raw_output=split_lines(output)[0],
                line_number=1,
                source=self.source,
            )
        frame = frame.fillna("")
        texts = frame["text"].tolist()
        labels = frame["label"].tolist()
        splits = (
            frame["split"].tolist() if "split" in frame.columns else [None] * len(texts)
        )
        embedded = (
            frame.apply(lambda column: column.str.count("\n")).sum(axis=1).tolist()
            if len(frame)
            else []
        )

        physical = split_lines(output)
        records: list[RawRecord] = []
        line_number = 2
        for text, label, split, newlines in zip(texts, labels, splits, embedded):
            if line_number > len(physical) or not physical[line_number - 1].strip():
                line_number += 1
                continue
            records.append(
                RawRecord(text=text, label=label, split=split, line_number=line_number)
            )
            line_number += 1 + int(newlines)
        return records


class JsonlRecordParser(Parser[list[RawRecord]]):
    """
    Parse JSON Lines content: one ``{"text", "label", "split"?}`` object per line.

    Blank lines are skipped but still counted for line numbers.
    """

    def __init__(self, source: str | None = None):
        self.source = source

    def parse(self, output: str) -> list[RawRecord]:
        records: list[RawRecord] = []
        for line_number, line in enumerate(split_lines(output), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(
                    f"Malformed JSON record: {exc.msg}",
                    raw_output=line,
                    line_number=line_number,
                    source=self.source,
                ) from exc
            if not isinstance(obj, dict):
                raise ParseError(
                    "JSON record must be an object",
                    raw_output=line,
                    line_number=line_number,
                    source=self.source,
                )
            for key in REQUIRED_COLUMNS:
                if not isinstance(obj.get(key), str):
                    raise ParseError(
                        f"JSON record lacks string field {key!r}",
                        raw_output=line,
                        line_number=line_number,
                        source=self.source,
                    )
            split = obj.get("split")
            records.append(
                RawRecord(
                    text=obj["text"],
                    label=obj["label"],
                    split=split if isinstance(split, str) else None,
                    line_number=line_number,
                )
            )
        return records


def get_record_parser(format: str, source: str | None = None) -> Parser[list[RawRecord]]:
    """
    Return the parser for a dataset format.

    Raises:
        ParseError: If the format is unknown.
    """
    if format == "csv":
        return CsvRecordParser(source)
    if format == "jsonl":
        return JsonlRecordParser(source)
    raise ParseError(f"Unsupported dataset format: {format}", raw_output=format)
