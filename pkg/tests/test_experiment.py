"""Tests for the experiment matrix and reports."""

from __future__ import annotations

import json

import numpy as np
import pytest
from conftest import write_rows

from sarcasm_augment.corpus import write_dataset
from sarcasm_augment.exceptions import ValidationError
from sarcasm_augment.experiment import (
    emit_report,
    level_header,
    load_results,
    published_results,
    run_experiment,
    run_matrix,
)
from sarcasm_augment.synthetic import make_synthetic_corpus, write_glove
from sarcasm_augment.types import (
    ConfusionMatrix,
    DatasetSource,
    ExperimentPlan,
    MetricSet,
    RunResult,
    Split,
)


@pytest.fixture
def synth_inputs(tmp_path, synthetic_table, synthetic_vocab):
    """Embedding file and a 600-sample synthetic corpus on disk."""
    embeddings = write_glove(synthetic_table, tmp_path / "embeddings.txt")
    corpus = make_synthetic_corpus(synthetic_vocab, n_samples=600, positive_fraction=0.2, seed=1)
    dataset = write_dataset(corpus, tmp_path / "synth.csv")
    return embeddings, dataset


def _plan(embeddings, datasets, output_dir, **kwargs) -> ExperimentPlan:
    sources = tuple(DatasetSource(name=name, path=str(path)) for name, path in datasets)
    return ExperimentPlan(
        datasets=sources, embeddings=str(embeddings), output_dir=str(output_dir), **kwargs
    )


def _result(dataset: str, level: float, f: float, m: float, seed: int = 0) -> RunResult:
    metrics = MetricSet(precision=0.0, recall=0.0, f_score=f, mcc=m, cm=ConfusionMatrix())
    return RunResult(dataset, level, seed, metrics, "fp")


def _tree(root):
    return {
        str(path.relative_to(root)): path.read_bytes()
        for path in sorted(root.rglob("*"))
        if path.is_file()
    }


class TestLevelHeader:
    """Test level_header."""

    @pytest.mark.parametrize(
        ("level", "expected"),
        [(0, "Non-augmented"), (10, "10% augmented"), (20.0, "20% augmented"), (12.5, "12.5% augmented")],
    )
    def test_header(self, level, expected):
        """Level zero is the baseline column."""
        assert level_header(level) == expected


class TestEmitReport:
    """Test report rendering."""

    def test_published_f_score_table(self):
        """The published values render as a four-level table."""
        report = emit_report(published_results())
        lines = report.splitlines()
        assert lines[0] == "## F-score"
        assert lines[2] == (
            "| Dataset | Non-augmented | 10% augmented | 20% augmented | 30% augmented |"
        )
        assert lines[3] == "|---|---|---|---|---|"
        assert lines[4] == "| iSarcasm | 0.3720 | 0.3809 | 0.4044 | 0.3828 |"
        assert "| Ghosh | 0.7964 | 0.7830 | 0.7758 | 0.7835 |" in lines
        assert "| Ptacek | 0.8705 | 0.8738 | 0.8727 | 0.8717 |" in lines
        assert "| SemEval-18 | 0.6606 | 0.6666 | 0.6707 | 0.6746 |" in lines

    def test_published_mcc_table(self):
        """MCC rows follow the F-score table."""
        report = emit_report(published_results())
        mcc_part = report.split("## MCC")[1]
        assert "| iSarcasm | 0.2789 | 0.2964 | 0.3084 | 0.2939 |" in mcc_part
        assert "| SemEval-18 | 0.4128 | 0.4286 | 0.4362 | 0.4382 |" in mcc_part

    def test_published_deltas(self):
        """Point changes round half-up and carry a sign."""
        report = emit_report(published_results())
        deltas = report.split("## Change vs. non-augmented (points)")[1]
        assert "| iSarcasm | F-score | +0.9 | +3.2 | +1.1 |" in deltas
        assert "| iSarcasm | MCC | +1.8 | +3.0 | +1.5 |" in deltas
        assert "| Ghosh | F-score | -1.3 | -2.1 | -1.3 |" in deltas

    def test_no_deltas(self):
        """The change table can be left out."""
        assert "Change vs." not in emit_report(published_results(), deltas=False)

    def test_single_cell(self):
        """One run gives two 1x1 tables and no change table."""
        report = emit_report([_result("toy", 0, 0.5, 0.25)])
        assert "| toy | 0.5000 |" in report
        assert "| toy | 0.2500 |" in report
        assert "Change vs." not in report

    def test_identical_runs_zero_delta(self):
        """A level equal to the baseline shows +0.0."""
        report = emit_report([_result("toy", 0, 0.5, 0.25), _result("toy", 10, 0.5, 0.25)])
        assert "| toy | F-score | +0.0 |" in report
        assert "| toy | MCC | +0.0 |" in report

    def test_missing_cell(self):
        """Cells a dataset did not run read n/a."""
        report = emit_report(
            [_result("a", 0, 0.5, 0.1), _result("a", 10, 0.6, 0.2), _result("b", 0, 0.4, 0.0)]
        )
        assert "| b | 0.4000 | n/a |" in report
        assert "| b | F-score | n/a |" in report

    def test_seed_mean(self):
        """Several seeds in one cell are averaged."""
        report = emit_report(
            [_result("a", 0, 0.50, 0.1, seed=1), _result("a", 0, 0.60, 0.3, seed=2)]
        )
        assert "| a | 0.5500 |" in report
        assert "| a | 0.2000 |" in report

    def test_csv(self):
        """CSV output prefixes every table with its title."""
        report = emit_report(published_results(), format="csv")
        lines = report.splitlines()
        assert lines[0] == "Table,Dataset,Non-augmented,10% augmented,20% augmented,30% augmented"
        assert lines[1] == "F-score,iSarcasm,0.3720,0.3809,0.4044,0.3828"
        assert "Table,Dataset,Metric,10% augmented,20% augmented,30% augmented" in lines

    def test_empty(self):
        """Nothing to report is an error."""
        with pytest.raises(ValidationError):
            emit_report([])

    def test_unknown_format(self):
        """Only markdown and csv are supported."""
        with pytest.raises(ValidationError):
            emit_report(published_results(), format="html")


class TestRunMatrix:
    """Test running experiment plans."""

    def test_results_and_files(self, synth_inputs, tmp_path):
        """Levels run in ascending order and every cell is persisted."""
        embeddings, dataset = synth_inputs
        plan = _plan(embeddings, [("synth", dataset)], tmp_path / "out", levels=(10, 0))
        outcome = run_matrix(plan)

        assert not outcome.partial
        assert [r.level for r in outcome.results] == [0, 10]
        assert outcome.results[0].augment_report is None
        report = outcome.results[1].augment_report
        assert report.generated == report.requested > 0

        out = tmp_path / "out"
        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["runs"] == ["runs/synth/0.json", "runs/synth/10.json"]
        assert manifest["failures"] == []
        assert manifest["plan"]["levels"] == [10, 0]
        assert len(manifest["inputs"]["embeddings"]) == 64
        assert (out / "models" / "synth" / "10.json").is_file()

    def test_load_results_round_trip(self, synth_inputs, tmp_path):
        """Persisted runs read back equal, minus wall-clock time."""
        embeddings, dataset = synth_inputs
        plan = _plan(embeddings, [("synth", dataset)], tmp_path / "out", levels=(0, 20))
        results = run_experiment(plan)
        loaded = load_results(tmp_path / "out")
        assert [r.to_dict() for r in loaded] == [r.to_dict() for r in results]
        assert "| synth |" in emit_report(loaded)

    def test_evaluation_on_former_test_split(self, synth_inputs, tmp_path, synthetic_vocab):
        """Val folds into train and the test split is scored."""
        embeddings, dataset = synth_inputs
        corpus = make_synthetic_corpus(synthetic_vocab, n_samples=600, positive_fraction=0.2, seed=1)
        plan = _plan(embeddings, [("synth", dataset)], tmp_path / "out", levels=(0,))
        (result,) = run_experiment(plan)
        assert result.metrics.cm.total == corpus.count(Split.TEST)

    def test_byte_identical_across_runs_and_workers(self, synth_inputs, tmp_path):
        """Output files depend only on the plan and inputs."""
        embeddings, dataset = synth_inputs
        for name, workers in (("a", 1), ("b", 3)):
            plan = _plan(embeddings, [("synth", dataset)], tmp_path / name, levels=(0, 10, 20))
            run_matrix(plan, workers=workers)
        assert _tree(tmp_path / "a") == _tree(tmp_path / "b")

    def test_multiple_seeds(self, synth_inputs, tmp_path):
        """Each seed gets its own run file."""
        embeddings, dataset = synth_inputs
        plan = _plan(
            embeddings, [("synth", dataset)], tmp_path / "out", levels=(0, 10), seeds=(1, 2)
        )
        outcome = run_matrix(plan)
        assert [(r.level, r.seed) for r in outcome.results] == [(0, 1), (0, 2), (10, 1), (10, 2)]
        assert (tmp_path / "out" / "runs" / "synth" / "10.seed2.json").is_file()

    def test_corrupt_dataset_is_partial(self, synth_inputs, tmp_path):
        """A dataset that fails to load fails only its own cells."""
        embeddings, dataset = synth_inputs
        broken = write_rows(tmp_path / "broken.csv", [("fine text", "maybe", "train")])
        plan = _plan(
            embeddings, [("synth", dataset), ("broken", broken)], tmp_path / "out"
        )
        outcome = run_matrix(plan)
        assert outcome.partial
        assert len(outcome.results) == 4
        assert len(outcome.failures) == 4
        assert {f.stage for f in outcome.failures} == {"load"}
        assert [f.level for f in outcome.failures] == [0, 10, 20, 30]
        manifest = json.loads(outcome.manifest_path.read_text(encoding="utf-8"))
        assert len(manifest["failures"]) == 4

    def test_missing_evaluation_split(self, synth_inputs, tmp_path, synthetic_vocab):
        """A dataset without a test split fails at evaluation."""
        embeddings, _ = synth_inputs
        corpus = make_synthetic_corpus(synthetic_vocab, n_samples=200, positive_fraction=0.3)
        path = write_dataset(corpus, tmp_path / "novel.csv", splits=[Split.TRAIN, Split.VAL])
        plan = _plan(embeddings, [("novel", path)], tmp_path / "out", levels=(0,))
        outcome = run_matrix(plan)
        assert outcome.results == []
        assert [f.stage for f in outcome.failures] == ["evaluate"]

    @pytest.mark.slow
    def test_augmentation_helps_minority_class(self, tmp_path, synthetic_table, synthetic_vocab):
        """On the imbalanced synthetic corpus, 20% growth raises the mean F-score."""
        embeddings = write_glove(synthetic_table, tmp_path / "embeddings.txt")
        corpus = make_synthetic_corpus(synthetic_vocab)
        dataset = write_dataset(corpus, tmp_path / "synthetic.csv")
        plan = _plan(
            embeddings,
            [("synthetic", dataset)],
            tmp_path / "out",
            levels=(0, 20),
            seeds=tuple(range(10)),
        )
        results = run_experiment(plan, workers=4)
        baseline = np.mean([r.metrics.f_score for r in results if r.level == 0])
        augmented = np.mean([r.metrics.f_score for r in results if r.level == 20])
        assert augmented > baseline


class TestDatasetSource:
    """Test dataset source validation."""

    @pytest.mark.parametrize("name", ["../outside", "a/b", "a\\b", ".", ".."])
    def test_path_like_names_rejected(self, name):
        """Names become result directories, so separators are refused."""
        with pytest.raises(ValidationError):
            DatasetSource(name=name, path="d.csv")

    def test_published_style_names_accepted(self):
        """Hyphens and mixed case are fine."""
        assert DatasetSource(name="SemEval-18", path="d.csv").name == "SemEval-18"
