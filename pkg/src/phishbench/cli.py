"""Command-line entry point: ingest / evaluate / rank / extract / synth / suite.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error. Every
failure path writes a single-line summary to stderr. stdout carries only
human-readable summaries; machine-readable artifacts go to files.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from ._util import ToolkitWarning, sha256_bytes
from .classifiers import ALGORITHMS, DISPLAY_NAMES
from .classifiers.serialize import FORMAT_VERSION
from .data import (
    DataError,
    class_counts,
    csv_bytes,
    descriptor_by_id,
    generate_synthetic,
    load_table,
    sniff_descriptor,
    write_csv,
)
from .pca import feature_importance, fit_pca, select_components
from .runner import (
    PROTOCOLS,
    ExperimentConfig,
    PcaSettings,
    render_markdown_report,
    render_table,
    report_manifest_entry,
    run_experiment,
    run_paper_suite,
)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as exceptions so the
    caller controls the exit code and the single-line stderr contract."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _classifier_list(text: str) -> tuple[str, ...]:
    if text == "all":
        return ALGORITHMS
    tags = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [t for t in tags if t not in ALGORITHMS]
    if unknown:
        raise UsageError(
            f"unknown classifier(s) {', '.join(unknown)}; "
            f"choose from {', '.join(ALGORITHMS)} or 'all'"
        )
    if not tags:
        raise UsageError("empty classifier list")
    return tags


def _load_input(path: str, dataset: str | None):
    source = Path(path)
    descriptor = (
        descriptor_by_id(dataset) if dataset else sniff_descriptor(source)
    )
    return descriptor, load_table(source, descriptor)


def _print_warnings(messages: list[str]) -> None:
    for message in dict.fromkeys(messages):
        sys.stderr.write(f"phishbench: warning: {_one_line(message)}\n")


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def cmd_ingest(args: argparse.Namespace) -> int:
    descriptor = descriptor_by_id(args.dataset)
    with warnings.catch_warnings(record=True) as sink:
        warnings.simplefilter("always", ToolkitWarning)
        matrix = load_table(args.input, descriptor)
        write_csv(matrix, args.out)
    _print_warnings([str(w.message) for w in sink])
    counts = ", ".join(
        f"{label.display_name} {n}" for label, n in class_counts(matrix).items()
    )
    print(f"{matrix.n_rows} rows; {counts}")
    print(f"canonical CSV written to {args.out}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    replay_config = None
    input_path = args.input
    if args.manifest:
        payload = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        replay = payload.get("replay")
        if not replay or replay.get("command") != "evaluate":
            raise UsageError(
                f"{args.manifest} does not contain an evaluate replay section"
            )
        input_path = args.input or replay["input"]
        replay_config = ExperimentConfig.from_dict(replay["config"])
    if not input_path:
        raise UsageError("--input is required unless --manifest is given")
    descriptor, data = _load_input(input_path, args.dataset)
    config = replay_config or ExperimentConfig(
        dataset_id=descriptor.id.lower(),
        classifiers=_classifier_list(args.classifier),
        protocol=args.protocol,
        pca=PcaSettings(
            enabled=args.pca,
            variance_threshold=args.variance,
            standardize=not args.no_standardize,
        ),
        seed=args.seed,
        averaging=args.averaging,
    )
    config.validate()
    report = run_experiment(config, data)
    kind = "pca" if config.pca.enabled else "full"
    print(
        f"{descriptor.id}: {data.n_rows} rows, protocol {config.protocol}, "
        f"{kind} features, seed {config.seed}"
    )
    print()
    print(render_table(report, "markdown"))
    if config.pca.enabled:
        counts = ", ".join(str(f.pc_count) for f in report.folds)
        print(f"components per fold at "
              f"{config.pca.variance_threshold:.0%}: {counts}")
    print(f"wall time: {report.wall_seconds:.1f}s")
    _print_warnings(report.warnings)
    if args.report:
        out_dir = Path(args.report)
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = f"{config.dataset_id}_{kind}_metrics"
        (out_dir / f"{stem}.csv").write_text(
            render_table(report, "csv"), encoding="utf-8"
        )
        (out_dir / f"{stem}.md").write_text(
            render_markdown_report(
                report, f"{config.dataset_id.upper()} {kind} features"
            ),
            encoding="utf-8",
        )
        manifest = {
            "replay": {
                "command": "evaluate",
                "input": str(input_path),
                "config": config.to_dict(),
            },
            "report": report_manifest_entry(report),
        }
        (out_dir / "manifest.json").write_text(
            json.dumps(manifest, indent=2), encoding="utf-8"
        )
        from . import plots

        plots.save_accuracy_bars(
            {
                DISPLAY_NAMES[tag]: {
                    kind: report.classifiers[tag].pooled_metrics.accuracy
                }
                for tag in config.classifiers
            },
            out_dir / f"accuracy_{config.dataset_id}.png",
            title=f"{config.dataset_id.upper()} pooled accuracy ({kind})",
        )
        if config.pca.enabled:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ToolkitWarning)
                full_model = fit_pca(data, standardize=config.pca.standardize)
            plots.save_variance_curve(
                full_model,
                out_dir / f"variance_curve_{config.dataset_id}.png",
                threshold=config.pca.variance_threshold,
            )
        print(f"report files written to {out_dir}")
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    if args.top <= 0:
        raise UsageError("--top must be a positive integer")
    descriptor, data = _load_input(args.input, args.dataset)
    with warnings.catch_warnings(record=True) as sink:
        warnings.simplefilter("always", ToolkitWarning)
        model = fit_pca(data, standardize=True)
        k = select_components(model, args.variance)
        ranking = feature_importance(model, k, weighted=args.weighted)
    _print_warnings([str(w.message) for w in sink])
    print(
        f"{descriptor.id}: {k} components cover "
        f"{args.variance:.0%} of the variance"
    )
    for rank, (name, score) in enumerate(ranking.top(args.top), start=1):
        print(f"{rank:3d}. {name:40s} {score:.4f}")
    if args.out:
        Path(args.out).write_text(ranking.to_csv(), encoding="utf-8")
        print(f"full ranking written to {args.out}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    from .urlfeatures import extract_from_string, rows_to_csv

    target = descriptor_by_id(args.schema)
    if args.url:
        sources = [args.url]
    else:
        text = Path(args.file).read_text(encoding="utf-8")
        sources = [line.strip() for line in text.splitlines() if line.strip()]
    if not sources:
        raise DataError("no URLs to extract")
    rows = []
    heuristic_notes: list[str] = []
    for raw in sources:
        try:
            with warnings.catch_warnings(record=True) as sink:
                warnings.simplefilter("always", ToolkitWarning)
                rows.append(extract_from_string(raw, target))
            heuristic_notes.extend(str(w.message) for w in sink)
        except DataError as exc:
            sys.stderr.write(
                f"phishbench: warning: skipped {raw!r}: {_one_line(exc)}\n"
            )
    if not rows:
        raise DataError("no URL could be parsed")
    _print_warnings(heuristic_notes)
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{len(rows)} of {len(sources)} rows written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    descriptor = descriptor_by_id(args.schema)
    matrix = generate_synthetic(
        descriptor, args.rows, seed=args.seed, separation=args.separation
    )
    payload = csv_bytes(matrix)
    Path(args.out).write_bytes(payload)
    counts = ", ".join(
        f"{label.display_name} {n}" for label, n in class_counts(matrix).items()
    )
    print(f"{matrix.n_rows} synthetic rows ({counts})")
    print(f"sha256 {sha256_bytes(payload)}")
    print(f"written to {args.out}")
    return 0


def cmd_suite(args: argparse.Namespace) -> int:
    seed, variance, protocol = args.seed, args.variance, args.protocol
    classifiers = _classifier_list(args.classifier)
    if args.manifest:
        payload = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        seed = payload.get("seed", seed)
        variance = payload.get("variance_threshold", variance)
        protocol = payload.get("protocol", protocol)
        classifiers = tuple(payload.get("classifiers", classifiers))
    manifest = run_paper_suite(
        args.data,
        args.out,
        seed=seed,
        variance_threshold=variance,
        classifiers=classifiers,
        protocol=protocol,
        render_figures=not args.no_figures,
    )
    for notice in manifest["notices"]:
        sys.stderr.write(f"phishbench: warning: {_one_line(notice)}\n")
    for dataset_id, entry in manifest["datasets"].items():
        best_full = max(entry["full"]["pooled_accuracy"].items(),
                        key=lambda kv: kv[1])
        best_pca = max(entry["pca"]["pooled_accuracy"].items(),
                       key=lambda kv: kv[1])
        print(
            f"{dataset_id}: best full {DISPLAY_NAMES[best_full[0]]} "
            f"{best_full[1] * 100:.2f}%, best PCA "
            f"{DISPLAY_NAMES[best_pca[0]]} {best_pca[1] * 100:.2f}% "
            f"({entry['components_at_threshold']} components)"
        )
    if not manifest["datasets"]:
        print("no datasets found; nothing to do")
    print(f"suite artifacts written to {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="phishbench",
        description=(
            "Benchmark toolkit for phishing-website classification: dataset "
            "ingestion, six classifiers, PCA reduction, and report rendering."
        ),
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"phishbench {__version__} (model format {FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("ingest", help="convert a source file to canonical CSV")
    p.add_argument("--dataset", required=True, choices=("d1", "d2", "d3"))
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("evaluate", help="run a benchmark protocol")
    p.add_argument("--input")
    p.add_argument("--dataset", choices=("d1", "d2", "d3"))
    p.add_argument("--classifier", default="all",
                   help="comma-separated tags or 'all'")
    p.add_argument("--protocol", default="cv10", choices=PROTOCOLS)
    p.add_argument("--pca", action="store_true")
    p.add_argument("--variance", type=float, default=0.95)
    p.add_argument("--no-standardize", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--averaging", default="macro", choices=("macro", "micro"))
    p.add_argument("--report", help="directory for report artifacts")
    p.add_argument("--manifest", help="replay a prior run's manifest.json")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("rank", help="PCA-based feature ranking")
    p.add_argument("--input", required=True)
    p.add_argument("--dataset", choices=("d1", "d2", "d3"))
    p.add_argument("--variance", type=float, default=0.95)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--weighted", action="store_true",
                   help="weight loadings by sqrt(eigenvalue)")
    p.add_argument("--out", help="write the full ranking CSV here")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("extract", help="lexical URL features to CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--url")
    group.add_argument("--file", help="newline-delimited URL list")
    p.add_argument("--schema", required=True, choices=("d1", "d2", "d3"))
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    p.add_argument("--schema", required=True, choices=("d1", "d2", "d3"))
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--separation", type=float, default=0.8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("suite", help="full benchmark over d1/d2/d3 files")
    p.add_argument("--data", required=True,
                   help="directory holding d1.csv/d2.csv/d3.csv")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variance", type=float, default=0.95)
    p.add_argument("--protocol", default="cv10", choices=PROTOCOLS)
    p.add_argument("--classifier", default="all")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument(
        "--manifest", help="replay settings from a prior run's manifest"
    )
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"phishbench: usage error: {_one_line(exc)}\n")
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"phishbench: usage error: {_one_line(exc)}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"phishbench: usage error: {_one_line(exc)}\n")
        return 1
    except DataError as exc:
        sys.stderr.write(f"phishbench: data error: {_one_line(exc)}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"phishbench: data error: {_one_line(exc)}\n")
        return 2
    except Exception as exc:  # pragma: no cover - defensive catch-all
        sys.stderr.write(
            f"phishbench: internal error: "
            f"{type(exc).__name__}: {_one_line(exc)}\n"
        )
        return 3


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
