"""Tests for the baseline classifier."""

from __future__ import annotations

import logging

import numpy as np
import pytest
from conftest import make_dataset

from sarcasm_augment.classify import (
    TrainedModel,
    clip_gradient,
    evaluate,
    export_for_external_trainer,
    featurize,
    fit,
    learning_rate_at,
    load_export,
    load_model,
    loss_and_gradient,
    predict,
    save_model,
    sigmoid,
    train,
    warmup_steps,
)
from sarcasm_augment.exceptions import DimensionMismatchError, ParseError, ValidationError
from sarcasm_augment.synthetic import make_synthetic_corpus
from sarcasm_augment.types import AugmentReport, ClassifierConfig, Label, Split

FAST = ClassifierConfig(learning_rate=0.5, num_train_epochs=20, weight_decay=0.0)


@pytest.fixture
def separable(synthetic_vocab):
    """Texts made only of cluster words, half of them sarcastic."""
    return make_synthetic_corpus(
        synthetic_vocab, n_samples=400, positive_fraction=0.5, seed=5, min_share=1.0, max_share=1.0
    )


class TestSigmoid:
    """Test sigmoid."""

    def test_values(self):
        """Zero maps to one half; extremes saturate without overflow."""
        out = sigmoid(np.array([0.0, 1000.0, -1000.0]))
        assert out[0] == 0.5
        assert out[1] == 1.0
        assert out[2] == 0.0


class TestFeaturize:
    """Test featurize."""

    def test_mean_vector(self, tiny_table):
        """Known tokens are averaged, unknown tokens ignored."""
        np.testing.assert_allclose(
            featurize("love zzz traffic", tiny_table), [0.5, 0.5, 0.0, 0.0]
        )

    def test_out_of_vocabulary(self, tiny_table):
        """A text without known tokens is the zero vector."""
        assert not featurize("zzz yyy", tiny_table).any()

    def test_max_seq_length(self, tiny_table):
        """Only the first max_seq_length known tokens count."""
        np.testing.assert_allclose(
            featurize("zzz love traffic", tiny_table, max_seq_length=1), [1.0, 0.0, 0.0, 0.0]
        )


class TestOptimizerPieces:
    """Test gradient, schedule and clipping."""

    def test_gradient_matches_finite_differences(self):
        """Analytic gradient agrees with central differences."""
        rng = np.random.default_rng(0)
        features = rng.normal(size=(32, 6))
        labels = (rng.random(32) > 0.5).astype(float)
        weights = rng.normal(size=6)
        bias = 0.3
        _, grad_w, grad_b = loss_and_gradient(weights, bias, features, labels)

        eps = 1e-6
        for i in range(6):
            step = np.zeros(6)
            step[i] = eps
            plus = loss_and_gradient(weights + step, bias, features, labels)[0]
            minus = loss_and_gradient(weights - step, bias, features, labels)[0]
            assert grad_w[i] == pytest.approx((plus - minus) / (2 * eps), abs=1e-7)
        plus = loss_and_gradient(weights, bias + eps, features, labels)[0]
        minus = loss_and_gradient(weights, bias - eps, features, labels)[0]
        assert grad_b == pytest.approx((plus - minus) / (2 * eps), abs=1e-7)

    @pytest.mark.parametrize(("total", "ratio", "expected"), [(10, 0.2, 2), (7, 0.2, 2), (5, 0.2, 1), (9, 0.0, 0)])
    def test_warmup_steps(self, total, ratio, expected):
        """Warmup is the ceiling of ratio times total steps."""
        assert warmup_steps(total, ratio) == expected

    def test_schedule_endpoints(self):
        """Zero at the start, peak after warmup, zero at the end."""
        cfg = ClassifierConfig(learning_rate=1e-5, warmup_ratio=0.2)
        expected = {0: 0.0, 1: 0.5e-5, 2: 1e-5, 6: 0.5e-5, 10: 0.0}
        for step, rate in expected.items():
            assert abs(learning_rate_at(step, 10, cfg) - rate) <= 1e-12

    def test_last_executed_step(self):
        """The final update (step total - 1) still moves with a small rate."""
        cfg = ClassifierConfig(learning_rate=1e-5, warmup_ratio=0.2)
        assert abs(learning_rate_at(9, 10, cfg) - 1.25e-6) <= 1e-12
        assert learning_rate_at(9, 10, cfg) > 0

    def test_schedule_without_warmup(self):
        """A zero warmup ratio starts at the peak."""
        cfg = ClassifierConfig(warmup_ratio=0.0)
        assert learning_rate_at(0, 4, cfg) == pytest.approx(cfg.learning_rate)

    def test_clipping(self):
        """Large gradients are rescaled to the cap; small ones pass through."""
        grad_w, grad_b, before, after = clip_gradient(np.array([3.0, 0.0]), 4.0, 1.0)
        assert before == pytest.approx(5.0)
        assert after == pytest.approx(1.0)
        np.testing.assert_allclose(grad_w, [0.6, 0.0])
        assert grad_b == pytest.approx(0.8)

        small = np.array([0.1, 0.1])
        grad_w, _, before, after = clip_gradient(small, 0.0, 1.0)
        assert grad_w is small
        assert before == after


class TestTrain:
    """Test training and prediction."""

    def test_single_step_follows_negative_gradient(self, tiny_table):
        """Without weight decay one full-batch step is -lr times the analytic gradient."""
        samples = make_dataset(
            [("love adore", Label.POSITIVE), ("traffic monday", Label.NEGATIVE)]
        ).samples
        cfg = ClassifierConfig(
            learning_rate=0.1,
            weight_decay=0.0,
            warmup_ratio=0.0,
            num_train_epochs=1,
            train_batch_size=2,
            max_grad_norm=1e6,
        )
        features = np.vstack([featurize(s.text, tiny_table) for s in samples])
        labels = np.array([1.0, 0.0])
        _, grad_w, grad_b = loss_and_gradient(np.zeros(4), 0.0, features, labels)

        model, history = fit(samples, cfg, tiny_table)
        assert history.total_steps == 1
        assert history.learning_rates == [0.1]
        np.testing.assert_allclose(model.weights, -0.1 * grad_w, rtol=1e-12, atol=1e-15)
        assert model.bias == pytest.approx(-0.1 * grad_b, rel=1e-12, abs=1e-15)

    def test_separable_clusters(self, separable, synthetic_table):
        """Cluster-only texts are classified almost perfectly."""
        model = train(separable.split(Split.TRAIN), FAST, synthetic_table)
        val = separable.split(Split.VAL) + separable.split(Split.TEST)
        predicted = evaluate(model, val, synthetic_table)
        accuracy = np.mean([p is s.label for p, s in zip(predicted, val)])
        assert accuracy >= 0.95

    def test_deterministic(self, separable, synthetic_table):
        """Training twice gives identical parameters."""
        a = train(separable.split(Split.TRAIN), FAST, synthetic_table)
        b = train(separable.split(Split.TRAIN), FAST, synthetic_table)
        np.testing.assert_array_equal(a.weights, b.weights)
        assert a.bias == b.bias
        assert a.config_fingerprint == b.config_fingerprint

    def test_history(self, separable, synthetic_table):
        """The trace follows the schedule and the clipping cap."""
        cfg = ClassifierConfig(num_train_epochs=2, train_batch_size=32, max_grad_norm=0.01)
        _, history = fit(separable.split(Split.TRAIN), cfg, synthetic_table)
        assert history.total_steps == 2 * 10
        assert len(history.learning_rates) == 20
        assert history.learning_rates[0] == 0.0
        assert max(history.learning_rates) == pytest.approx(cfg.learning_rate)
        assert all(n <= 0.01 + 1e-12 for n in history.clipped_grad_norms)

    def test_zero_epochs(self, separable, synthetic_table, caplog):
        """Zero epochs return the zero model, which scores 0.5 everywhere."""
        cfg = ClassifierConfig(num_train_epochs=0)
        with caplog.at_level(logging.WARNING, logger="sarcasm_augment.classify"):
            model = train(separable.split(Split.TRAIN), cfg, synthetic_table)
        assert "num_train_epochs=0" in caplog.text
        for sample in separable.split(Split.VAL):
            label, score = predict(model, sample.text, synthetic_table)
            assert score == 0.5
            assert label is Label.POSITIVE

    def test_single_class_rejected(self, tiny_table):
        """Training needs both classes."""
        ds = make_dataset([("love", Label.POSITIVE), ("adore", Label.POSITIVE)])
        with pytest.raises(ValidationError):
            train(ds.samples, ClassifierConfig(), tiny_table)

    def test_empty_rejected(self, tiny_table):
        """Training needs data."""
        with pytest.raises(ValidationError):
            train([], ClassifierConfig(), tiny_table)

    def test_dimension_mismatch(self, separable, synthetic_table, tiny_table):
        """A model cannot score with a table of another dimension."""
        model = train(separable.split(Split.TRAIN), ClassifierConfig(num_train_epochs=0), synthetic_table)
        with pytest.raises(DimensionMismatchError):
            predict(model, "love", tiny_table)
        with pytest.raises(DimensionMismatchError):
            evaluate(model, separable.split(Split.VAL), tiny_table)

    def test_evaluate_empty(self, separable, synthetic_table):
        """Evaluating nothing predicts nothing."""
        model = train(separable.split(Split.TRAIN), ClassifierConfig(num_train_epochs=0), synthetic_table)
        assert evaluate(model, [], synthetic_table) == []


class TestModelFiles:
    """Test model persistence."""

    def test_save_load(self, separable, synthetic_table, tmp_path):
        """Parameters survive a save/load cycle exactly."""
        model = train(separable.split(Split.TRAIN), FAST, synthetic_table)
        loaded = load_model(save_model(model, tmp_path / "model.json"))
        np.testing.assert_array_equal(loaded.weights, model.weights)
        assert loaded.bias == model.bias
        assert loaded.config_fingerprint == model.config_fingerprint
        assert loaded.dim == model.dim

    def test_invalid_model_file(self, tmp_path):
        """A file without model fields is a parse error."""
        path = tmp_path / "model.json"
        path.write_text('{"weights": [1.0]}', encoding="utf-8")
        with pytest.raises(ParseError):
            load_model(path)

    def test_weights_must_match_dim(self):
        """The weight vector length must equal dim."""
        with pytest.raises(DimensionMismatchError):
            TrainedModel(weights=np.zeros(3), bias=0.0, config_fingerprint="x", dim=4)


class TestExport:
    """Test the external-trainer export."""

    def test_round_trip(self, fixture_csv, tmp_path):
        """Texts, labels and splits come back from an export."""
        from sarcasm_augment.corpus import load_dataset

        ds = load_dataset(fixture_csv)
        report = AugmentReport(requested=1, generated=1)
        manifest = export_for_external_trainer(ds, tmp_path / "out", report, "abc", seed=128)
        assert manifest.name == "manifest.json"

        again = load_export(tmp_path / "out")
        for split in Split:
            assert [(s.text, s.label) for s in again.split(split)] == [
                (s.text, s.label) for s in ds.split(split)
            ]

    def test_byte_identical(self, fixture_csv, tmp_path):
        """Exporting twice gives the same bytes."""
        from sarcasm_augment.corpus import load_dataset

        ds = load_dataset(fixture_csv)
        export_for_external_trainer(ds, tmp_path / "a")
        export_for_external_trainer(ds, tmp_path / "b")
        for name in ("train.jsonl", "val.jsonl", "test.jsonl", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_round_trip_with_line_separator_characters(self, tmp_path):
        """Texts holding U+2028 or U+0085 come back unchanged."""
        texts = ["oh\u2028sure", "great\x85job"]
        ds = make_dataset(
            [(texts[0], Label.POSITIVE), (texts[1], Label.NEGATIVE)],
            splits=[Split.TRAIN, Split.TEST],
        )
        export_for_external_trainer(ds, tmp_path / "out")
        again = load_export(tmp_path / "out")
        assert [s.text for s in again.split(Split.TRAIN)] == [texts[0]]
        assert [s.text for s in again.split(Split.TEST)] == [texts[1]]
