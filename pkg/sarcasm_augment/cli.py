"""
Command-line interface.

Exit codes:

    0  success
    1  experiment finished with failed cells
    2  usage error (unknown flag, missing argument)
    3  configuration or validation error
    4  missing input file or malformed input
    5  any other stage error
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from . import __version__
from .augment import augment_class
from .classify import evaluate, export_for_external_trainer, load_model, save_model, train
from .corpus import compute_stats, load_dataset, render_stats_table, write_dataset
from .embeddings import load_embeddings
from .exceptions import (
    ConfigError,
    InputFileNotFoundError,
    ParseError,
    SarcasmAugmentError,
    ValidationError,
)
from .experiment import (
    REPORT_FORMATS,
    emit_report,
    load_results,
    published_results,
    run_matrix,
)
from .metrics import metric_set
from .parsers.plan import load_plan
from .preprocess import preprocess_dataset, resolve_stopwords
from .synthetic import make_fixture_table, make_synthetic_corpus, write_glove
from .types.config import AugmentPolicy, ClassifierConfig, PipelineConfig
from .types.corpus import Label, Split
from .utils import atomic_write_text, canonical_json

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_INPUT = 4
EXIT_STAGE = 5


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    """Write ``payload`` as JSON with ``--json``, else the human-readable text."""
    if args.json:
        sys.stdout.write(canonical_json(payload))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_stats(args: argparse.Namespace) -> int:
    rows = []
    for path in args.datasets:
        d = load_dataset(path, args.format)
        rows.append((d.name, compute_stats(d)))
    payload = {name: dataclasses.asdict(stats) for name, stats in rows}
    _emit(args, payload, render_stats_table(rows))
    return EXIT_OK


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        max_len_tokens=args.max_len,
        length_unit=args.length_unit,
        remove_stopwords=not args.keep_stopwords,
        strip_punctuation=not args.keep_punctuation,
        stopwords_path=args.stopwords,
    )


def _cmd_preprocess(args: argparse.Namespace) -> int:
    d = load_dataset(args.input, args.format)
    cleaned, report = preprocess_dataset(d, _pipeline_config(args))
    write_dataset(cleaned, args.output)
    payload = {"dataset": d.name, "kept": len(cleaned), "dropped": report.dropped_ids}
    _emit(args, payload, f"{d.name}: kept {len(cleaned)}, dropped {len(report.dropped)}")
    return EXIT_OK


def _cmd_augment(args: argparse.Namespace) -> int:
    d = load_dataset(args.input, args.format)
    table = load_embeddings(args.embeddings, args.cache_dir, workers=args.workers)
    policy = AugmentPolicy(
        target_label=Label.parse(args.target),
        increase_pct=args.pct,
        words_per_sentence=args.words_per_sentence,
        k_candidates=args.k,
        min_similarity=args.min_sim,
        seed=args.seed if args.seed is not None else 0,
        max_attempts_per_sample=args.max_attempts,
    )
    stopwords = resolve_stopwords(PipelineConfig(stopwords_path=args.stopwords))
    augmented, report = augment_class(d, table, policy, stopwords, workers=args.workers)
    write_dataset(augmented, args.output)
    if args.report:
        atomic_write_text(args.report, canonical_json(report.to_dict()))
    sys.stdout.write(canonical_json(report.to_dict()))
    return EXIT_OK


def _classifier_config(args: argparse.Namespace, n_train: int) -> ClassifierConfig:
    overrides: dict[str, Any] = {}
    if args.epochs is not None:
        overrides["num_train_epochs"] = args.epochs
    if args.batch_size is not None:
        overrides["train_batch_size"] = args.batch_size
    if args.lr is not None:
        overrides["learning_rate"] = args.lr
    if args.seed is not None:
        overrides["manual_seed"] = args.seed
    return ClassifierConfig.for_dataset_size(n_train, **overrides)


def _cmd_train(args: argparse.Namespace) -> int:
    d = load_dataset(args.input, args.format)
    table = load_embeddings(args.embeddings, args.cache_dir, workers=args.workers)
    samples = d.split(Split.TRAIN)
    cfg = _classifier_config(args, len(samples))
    model = train(samples, cfg, table)
    save_model(model, args.model)
    payload = {"model": str(args.model), "config_fingerprint": model.config_fingerprint}
    _emit(args, payload, f"model written to {args.model} ({model.config_fingerprint})")
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    d = load_dataset(args.input, args.format)
    table = load_embeddings(args.embeddings, args.cache_dir, workers=args.workers)
    model = load_model(args.model)
    samples = d.split(Split.parse(args.split))
    if not samples:
        raise ValidationError(
            f"Split {args.split!r} of {d.name!r} is empty",
            parameter="split",
            value=args.split,
            expected="a split with samples",
        )
    metrics = metric_set(evaluate(model, samples, table), [s.label for s in samples], args.macro)
    cm = metrics.cm
    text = (
        f"precision {metrics.precision:.4f}  recall {metrics.recall:.4f}  "
        f"F {metrics.f_score:.4f}  MCC {metrics.mcc:.4f}\n"
        f"tp {cm.tp}  tn {cm.tn}  fp {cm.fp}  fn {cm.fn}"
    )
    _emit(args, metrics.to_dict(), text)
    return EXIT_OK


def _cmd_experiment(args: argparse.Namespace) -> int:
    plan = load_plan(args.plan)
    changes: dict[str, Any] = {}
    if args.seed is not None:
        changes.update(master_seed=args.seed, seeds=())
    if args.output_dir is not None:
        changes["output_dir"] = str(args.output_dir)
    if changes:
        plan = dataclasses.replace(plan, **changes)
    outcome = run_matrix(plan, workers=args.workers)
    if args.json:
        payload = {
            "manifest": str(outcome.manifest_path),
            "runs": [r.to_dict() for r in outcome.results],
            "failures": [f.to_dict() for f in outcome.failures],
        }
        sys.stdout.write(canonical_json(payload))
    elif outcome.results:
        sys.stdout.write(emit_report(outcome.results, deltas=plan.deltas))
    for failure in outcome.failures:
        print(
            f"failed: {failure.dataset} level {failure.level} seed {failure.seed} "
            f"at {failure.stage}: {failure.error}",
            file=sys.stderr,
        )
    return EXIT_PARTIAL if outcome.partial else EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    if args.published:
        results = published_results()
    elif args.results is None:
        raise ValidationError(
            "A results directory is required unless --published is given",
            parameter="results",
            value=None,
            expected="results directory",
        )
    else:
        results = load_results(args.results)
    if args.json:
        sys.stdout.write(canonical_json([r.to_dict() for r in results]))
    else:
        sys.stdout.write(emit_report(results, args.format, deltas=not args.no_deltas))
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else 0
    out_dir = Path(args.output_dir)
    table, vocab = make_fixture_table(seed)
    corpus = make_synthetic_corpus(
        vocab, args.samples, args.positive_fraction, seed=seed, name="synthetic"
    )
    embeddings = write_glove(table, out_dir / "embeddings.txt")
    dataset = write_dataset(corpus, out_dir / "synthetic.csv")
    plan = {
        "datasets": [{"name": "synthetic", "path": dataset.name, "format": "csv"}],
        "embeddings": embeddings.name,
        "levels": [0, 10, 20, 30],
        "output_dir": "results",
        "master_seed": 128,
    }
    plan_path = atomic_write_text(out_dir / "plan.json", canonical_json(plan))
    payload = {"embeddings": str(embeddings), "dataset": str(dataset), "plan": str(plan_path)}
    _emit(args, payload, f"wrote {embeddings}, {dataset} and {plan_path}")
    return EXIT_OK


def _cmd_export(args: argparse.Namespace) -> int:
    d = load_dataset(args.input, args.format)
    manifest = export_for_external_trainer(d, args.output_dir, seed=args.seed)
    _emit(args, {"manifest": str(manifest)}, f"export manifest: {manifest}")
    return EXIT_OK


def _add_dataset_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("csv", "jsonl"),
        default=None,
        help="dataset file format (default: from the file suffix)",
    )


def _add_embeddings(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--embeddings", required=True, help="GloVe text file")
    parser.add_argument(
        "--cache-dir", default=None, help="directory for the binary embedding cache"
    )


def _add_workers(parser: argparse.ArgumentParser, default: int | None = 1) -> None:
    shown = "by plan" if default is None else default
    parser.add_argument(
        "--workers", type=int, default=default, help=f"worker threads (default: {shown})"
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="errors only")
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--seed", type=int, default=None, help="seed override")

    parser = argparse.ArgumentParser(
        prog="sarcasm-augment",
        description="Embedding-neighbor augmentation and evaluation for sarcasm corpora.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("stats", parents=[common], help="split counts and %% sarcastic")
    p.add_argument("datasets", nargs="+", help="dataset files")
    _add_dataset_format(p)
    p.set_defaults(handler=_cmd_stats)

    p = sub.add_parser("preprocess", parents=[common], help="normalize, clean and trim texts")
    p.add_argument("input", help="dataset file")
    p.add_argument("output", help="cleaned dataset file")
    _add_dataset_format(p)
    p.add_argument("--max-len", type=int, default=100, help="length limit (default: 100)")
    p.add_argument("--length-unit", choices=("tokens", "chars"), default="tokens")
    p.add_argument("--keep-stopwords", action="store_true", help="do not remove stopwords")
    p.add_argument("--keep-punctuation", action="store_true", help="do not strip punctuation")
    p.add_argument("--stopwords", default=None, help="stopword file (default: shipped list)")
    p.set_defaults(handler=_cmd_preprocess)

    p = sub.add_parser("augment", parents=[common], help="grow one class of the train split")
    p.add_argument("input", help="preprocessed dataset file")
    p.add_argument("output", help="augmented dataset file")
    _add_dataset_format(p)
    _add_embeddings(p)
    p.add_argument("--pct", type=float, default=10.0, help="class growth in percent")
    p.add_argument("--k", type=int, default=5, help="neighbor candidates per word")
    p.add_argument("--min-sim", type=float, default=0.5, help="cosine similarity floor")
    p.add_argument("--words-per-sentence", type=int, default=1, help="replacements per text")
    p.add_argument("--max-attempts", type=int, default=10, help="attempts per source sample")
    p.add_argument("--target", default=Label.POSITIVE.value, help="label to grow")
    p.add_argument("--stopwords", default=None, help="stopword file (default: shipped list)")
    p.add_argument("--report", default=None, help="also write the report JSON here")
    _add_workers(p)
    p.set_defaults(handler=_cmd_augment)

    p = sub.add_parser("train", parents=[common], help="train the baseline classifier")
    p.add_argument("input", help="dataset file (train split is used)")
    _add_dataset_format(p)
    _add_embeddings(p)
    p.add_argument("--model", required=True, help="output model JSON")
    p.add_argument("--epochs", type=int, default=None, help="epochs (default: by size)")
    p.add_argument("--batch-size", type=int, default=None, help="batch size (default: by size)")
    p.add_argument("--lr", type=float, default=None, help="peak learning rate")
    _add_workers(p)
    p.set_defaults(handler=_cmd_train)

    p = sub.add_parser("evaluate", parents=[common], help="score a model on one split")
    p.add_argument("input", help="dataset file")
    _add_dataset_format(p)
    _add_embeddings(p)
    p.add_argument("--model", required=True, help="model JSON written by train")
    p.add_argument("--split", choices=[s.value for s in Split], default=Split.VAL.value)
    p.add_argument("--macro", action="store_true", help="report macro-F1")
    _add_workers(p)
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("experiment", parents=[common], help="run a plan's full matrix")
    p.add_argument("--plan", required=True, help="plan JSON file")
    p.add_argument("--output-dir", default=None, help="override the plan's output_dir")
    _add_workers(p, default=None)
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("report", parents=[common], help="render F-score and MCC tables")
    p.add_argument("results", nargs="?", default=None, help="results directory")
    p.add_argument("--format", choices=REPORT_FORMATS, default="markdown")
    p.add_argument("--no-deltas", action="store_true", help="omit the change table")
    p.add_argument(
        "--published", action="store_true", help="render the published reference values"
    )
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("synth", parents=[common], help="write the synthetic fixture set")
    p.add_argument("output_dir", help="destination directory")
    p.add_argument("--samples", type=int, default=2000, help="corpus size (default: 2000)")
    p.add_argument(
        "--positive-fraction", type=float, default=0.1, help="share of sarcastic samples"
    )
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("export", parents=[common], help="export splits for external training")
    p.add_argument("input", help="dataset file")
    p.add_argument("output_dir", help="export directory")
    _add_dataset_format(p)
    p.set_defaults(handler=_cmd_export)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def cli_main(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand and return its exit code.

    Usage errors print argparse's message and return 2; library errors are
    printed to stderr and mapped to the codes in the module docstring.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    _configure_logging(args)
    if getattr(args, "workers", None) is not None and args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputFileNotFoundError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SarcasmAugmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE


def main() -> None:
    """Console-script entry point."""
    sys.exit(cli_main())
