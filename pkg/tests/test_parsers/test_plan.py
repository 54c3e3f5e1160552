"""Tests for the experiment plan parser."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from sarcasm_augment.exceptions import ConfigError
from sarcasm_augment.parsers.plan import PlanParser, load_plan
from sarcasm_augment.types import ClassifierConfig, Label

MINIMAL = {"datasets": [{"name": "toy", "path": "toy.csv"}], "embeddings": "glove.txt"}


def _parse(doc: dict, base_dir=None):
    return PlanParser(base_dir).parse(json.dumps(doc))


class TestPlanParser:
    """Test PlanParser."""

    def test_defaults(self):
        """A minimal plan gets the default matrix."""
        plan = _parse(MINIMAL)
        assert plan.levels == (0, 10, 20, 30)
        assert plan.master_seed == 128
        assert plan.run_seeds == (128,)
        assert plan.classifier is None
        assert plan.output_dir == "results"
        assert plan.datasets[0].format == "csv"

    def test_relative_paths_resolved(self, tmp_path):
        """Relative paths are joined to the base directory."""
        plan = _parse(MINIMAL, base_dir=tmp_path)
        assert Path(plan.embeddings) == tmp_path / "glove.txt"
        assert Path(plan.datasets[0].path) == tmp_path / "toy.csv"
        assert Path(plan.output_dir) == tmp_path / "results"

    def test_sections(self):
        """Nested sections build their config objects."""
        plan = _parse(
            {
                **MINIMAL,
                "levels": [0, 20.0],
                "seeds": [1, 2],
                "augment": {"k_candidates": 3, "target_label": "not_sarcastic"},
                "classifier": {"num_train_epochs": 2},
                "pipeline": {"stopword_list": ["foo"]},
            }
        )
        assert plan.levels == (0, 20)
        assert plan.run_seeds == (1, 2)
        assert plan.augment.k_candidates == 3
        assert plan.augment.target_label is Label.NEGATIVE
        assert plan.classifier == ClassifierConfig(num_train_epochs=2)
        assert plan.pipeline.stopword_list == frozenset({"foo"})

    def test_jsonl_format_from_suffix(self):
        """The dataset format follows the file suffix."""
        plan = _parse({**MINIMAL, "datasets": [{"name": "t", "path": "t.jsonl"}]})
        assert plan.datasets[0].format == "jsonl"

    @pytest.mark.parametrize(
        ("doc", "field"),
        [
            ({"embeddings": "g.txt"}, "datasets"),
            ({**MINIMAL, "epochs": 3}, "epochs"),
            ({**MINIMAL, "augment": {"k_candidates": 0}}, "augment.k_candidates"),
            ({**MINIMAL, "augment": {"temperature": 1}}, "augment.temperature"),
            ({**MINIMAL, "datasets": [{"name": "", "path": "a.csv"}]}, "datasets[0].name"),
            ({**MINIMAL, "datasets": [{"name": "../up", "path": "a.csv"}]}, "datasets[0].name"),
            ({**MINIMAL, "datasets": [{"name": "..", "path": "a.csv"}]}, "datasets[0].name"),
            ({**MINIMAL, "datasets": [{"name": "a", "path": "a.xlsx"}]}, "datasets[0].format"),
            ({**MINIMAL, "levels": [10, 20]}, "levels"),
            ({**MINIMAL, "levels": "0,10"}, "levels"),
            ({**MINIMAL, "seeds": [1.5]}, "seeds"),
            ({**MINIMAL, "classifier": {"warmup_ratio": 2}}, "classifier.warmup_ratio"),
        ],
    )
    def test_invalid_field_named(self, doc, field):
        """Every rejection names the offending field."""
        with pytest.raises(ConfigError) as exc_info:
            _parse(doc)
        assert exc_info.value.field == field

    def test_levels_without_zero_allowed_without_deltas(self):
        """Level 0 is only required for the change table."""
        plan = _parse({**MINIMAL, "levels": [10], "deltas": False})
        assert plan.levels == (10,)

    def test_invalid_json(self):
        """Malformed documents are configuration errors."""
        with pytest.raises(ConfigError):
            PlanParser().parse("{not json")


class TestLoadPlan:
    """Test load_plan."""

    def test_load(self, tmp_path):
        """Paths resolve against the plan file's directory."""
        path = tmp_path / "plan.json"
        path.write_text(json.dumps(MINIMAL), encoding="utf-8")
        plan = load_plan(path)
        assert Path(plan.embeddings) == tmp_path / "glove.txt"

    def test_missing(self, tmp_path):
        """A missing plan file is a configuration error."""
        with pytest.raises(ConfigError):
            load_plan(tmp_path / "absent.json")
