"""Parser for experiment plan JSON documents."""

from __future__ import annotations

import json
from dataclasses import fields
from pathlib import Path
from typing import Any

from ..exceptions import ConfigError, ValidationError
from ..types.config import (
    AugmentPolicy,
    ClassifierConfig,
    DatasetSource,
    ExperimentPlan,
    PipelineConfig,
)
from ..utils import normalize_level
from .base import Parser

PLAN_KEYS = frozenset(
    {
        "datasets",
        "levels",
        "embeddings",
        "output_dir",
        "master_seed",
        "seeds",
        "workers",
        "deltas",
        "pipeline",
        "augment",
        "classifier",
    }
)
REQUIRED_KEYS = ("datasets", "embeddings")


class PlanParser(Parser[ExperimentPlan]):
    """
    Parse and validate an experiment plan.

    Relative dataset, embedding and output paths are resolved against
    ``base_dir`` (normally the plan file's directory). Every problem is raised
    as :class:`ConfigError` naming the offending field.

    Example:
        >>> plan = PlanParser().parse('{"datasets": [{"name": "toy", '
        ...     '"path": "toy.csv"}], "embeddings": "glove.txt"}')
        >>> plan.levels
        (0, 10, 20, 30)
    """

    def __init__(self, base_dir: str | Path | None = None):
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def _resolve(self, value: str) -> str:
        path = Path(value)
        if self.base_dir is not None and not path.is_absolute():
            path = self.base_dir / path
        return str(path)

    def parse(self, output: str) -> ExperimentPlan:
        try:
            doc = json.loads(output)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"Plan is not valid JSON: {exc.msg} (line {exc.lineno})",
                field="<document>",
            ) from exc
        if not isinstance(doc, dict):
            raise ConfigError("Plan must be a JSON object", field="<document>")

        unknown = sorted(set(doc) - PLAN_KEYS)
        if unknown:
            raise ConfigError(
                f"Unknown plan field(s): {', '.join(unknown)}",
                field=unknown[0],
                value=doc[unknown[0]],
            )
        for key in REQUIRED_KEYS:
            if key not in doc:
                raise ConfigError(f"Missing required field {key!r}", field=key)

        datasets = self._datasets(doc["datasets"])
        embeddings = self._string(doc, "embeddings")
        kwargs: dict[str, Any] = {
            "datasets": datasets,
            "embeddings": self._resolve(embeddings),
            "output_dir": self._resolve(doc.get("output_dir", "results")),
            "pipeline": self._section(doc, "pipeline", PipelineConfig),
            "augment": self._section(doc, "augment", AugmentPolicy),
        }
        if "levels" in doc:
            levels = doc["levels"]
            if not isinstance(levels, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in levels
            ):
                raise ConfigError("levels must be a list of numbers", "levels", levels)
            kwargs["levels"] = tuple(normalize_level(v) for v in levels)
        if "master_seed" in doc:
            kwargs["master_seed"] = self._int(doc, "master_seed")
        if "seeds" in doc:
            seeds = doc["seeds"]
            if not isinstance(seeds, list) or not all(
                isinstance(s, int) and not isinstance(s, bool) for s in seeds
            ):
                raise ConfigError("seeds must be a list of integers", "seeds", seeds)
            kwargs["seeds"] = tuple(seeds)
        if "workers" in doc:
            kwargs["workers"] = self._int(doc, "workers")
        if "deltas" in doc:
            if not isinstance(doc["deltas"], bool):
                raise ConfigError("deltas must be a boolean", "deltas", doc["deltas"])
            kwargs["deltas"] = doc["deltas"]
        classifier = doc.get("classifier", "auto")
        if classifier not in ("auto", None):
            kwargs["classifier"] = self._section(doc, "classifier", ClassifierConfig)

        try:
            return ExperimentPlan(**kwargs)
        except ValidationError as exc:
            raise ConfigError(str(exc).splitlines()[0], exc.parameter, exc.value) from exc

    def _datasets(self, value: Any) -> tuple[DatasetSource, ...]:
        if not isinstance(value, list) or not value:
            raise ConfigError("datasets must be a non-empty list", "datasets", value)
        sources = []
        for index, entry in enumerate(value):
            where = f"datasets[{index}]"
            if not isinstance(entry, dict):
                raise ConfigError("dataset entry must be an object", where, entry)
            extra = sorted(set(entry) - {"name", "path", "format"})
            if extra:
                raise ConfigError(f"Unknown dataset field {extra[0]!r}", f"{where}.{extra[0]}")
            for key in ("name", "path"):
                if not isinstance(entry.get(key), str) or not entry[key]:
                    raise ConfigError(
                        f"{key} must be a non-empty string", f"{where}.{key}", entry.get(key)
                    )
            fmt = entry.get("format") or Path(entry["path"]).suffix.lstrip(".") or "csv"
            try:
                sources.append(
                    DatasetSource(
                        name=entry["name"], path=self._resolve(entry["path"]), format=fmt
                    )
                )
            except ValidationError as exc:
                raise ConfigError(
                    str(exc).splitlines()[0], f"{where}.{exc.parameter}", exc.value
                ) from exc
        return tuple(sources)

    def _section(self, doc: dict[str, Any], key: str, cls: type) -> Any:
        value = doc.get(key, {})
        if not isinstance(value, dict):
            raise ConfigError(f"{key} must be an object", key, value)
        allowed = {f.name for f in fields(cls)}
        extra = sorted(set(value) - allowed)
        if extra:
            raise ConfigError(
                f"Unknown {key} field {extra[0]!r}", f"{key}.{extra[0]}", value[extra[0]]
            )
        if "stopword_list" in value and value["stopword_list"] is not None:
            value = {**value, "stopword_list": frozenset(value["stopword_list"])}
        try:
            return cls(**value)
        except ValidationError as exc:
            raise ConfigError(
                str(exc).splitlines()[0], f"{key}.{exc.parameter}", exc.value
            ) from exc
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Invalid {key} section: {exc}", key, value) from exc

    @staticmethod
    def _string(doc: dict[str, Any], key: str) -> str:
        value = doc[key]
        if not isinstance(value, str) or not value:
            raise ConfigError(f"{key} must be a non-empty string", key, value)
        return value

    @staticmethod
    def _int(doc: dict[str, Any], key: str) -> int:
        value = doc[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer", key, value)
        return value


def load_plan(path: str | Path) -> ExperimentPlan:
    """
    Read and parse a plan file, resolving paths relative to its directory.

    Raises:
        ConfigError: If the file is missing or invalid.
    """
    plan_path = Path(path)
    try:
        text = plan_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read plan file: {exc}", "<file>", str(path)) from exc
    return PlanParser(base_dir=plan_path.parent).parse(text)
