"""Command-line front end: fit, predict, evaluate, bench, summarize."""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from aggbench import __version__
from aggbench.aggregate import (
    KINDS,
    fit_model,
    load_model,
    predict_all,
    save_model,
)
from aggbench.bench import (
    MEASURES,
    BenchmarkConfig,
    load_benchmark_config,
    read_report_csv,
    run_benchmark,
    summarize,
    write_report_files,
    write_summary_csv,
    _evaluate_outputs,
)
from aggbench.errors import AggbenchError
from aggbench.ingest import DatasetConfig, load_scaled


def _add_ingest_flags(parser: argparse.ArgumentParser, response_help: str) -> None:
    parser.add_argument("data", help="input CSV file")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--response", help=response_help)
    group.add_argument(
        "--response-index", type=int, help="response column by 0-based position"
    )
    parser.add_argument(
        "--drop", default="", help="comma-separated columns to drop (ids, timestamps)"
    )
    parser.add_argument("--delimiter", default=",", help="field delimiter (default ,)")
    parser.add_argument(
        "--no-header", action="store_true", help="file has no header row; columns are c0, c1, ..."
    )


def _dataset_config(args) -> DatasetConfig:
    response = args.response if args.response is not None else args.response_index
    return DatasetConfig(
        path=args.data,
        response_column=response,
        drop_columns=tuple(s.strip() for s in args.drop.split(",") if s.strip()),
        has_header=not args.no_header,
        delimiter=args.delimiter,
    )


def _print_weights(names, weights) -> None:
    for name, w in zip(names, weights):
        print(f"  {name}: {w:.6f}")


def cmd_fit(args) -> int:
    config = _dataset_config(args)
    dataset = load_scaled(config)
    model = fit_model(
        args.kind, dataset,
        dominance_cap=args.dominance_cap, seed=args.seed,
        exact_dominance=args.exact_dominance,
    )
    save_model(model, args.output)
    print(f"fitted {model.kind} on {dataset.n} rows x {model.k} inputs -> {args.output}")
    if model.weights is not None:
        print("weights:")
        _print_weights(model.column_names, model.weights)
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    dataset = load_scaled(_dataset_config(args))
    outputs = predict_all(model, dataset.without_response())
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["output"])
        for v in outputs:
            writer.writerow([repr(float(v))])
    print(f"wrote {outputs.size} predictions to {args.output}")
    return 0


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    dataset = load_scaled(_dataset_config(args))
    outputs = predict_all(model, dataset.without_response())
    measures = _evaluate_outputs(outputs, dataset.inputs, dataset.response)
    print(f"{model.kind} on {Path(args.data).name} (n={dataset.n}, k={dataset.k}):")
    for measure in MEASURES:
        value = measures.value(measure)
        text = "nan" if np.isnan(value) else f"{value:.6f}"
        print(f"  {measure}: {text}")
    if measures.flags:
        print(f"  flags: {', '.join(measures.flags)}")
    if args.output:
        payload = {m: (None if np.isnan(measures.value(m)) else measures.value(m)) for m in MEASURES}
        payload["flags"] = list(measures.flags)
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    return 0


def _print_summary(table) -> None:
    """Median table, approaches as rows; excluded-family variant in parentheses."""
    datasets_note = ""
    widths = {m: max(len(m), 14) for m in table.measures}
    header = "approach".ljust(10) + "".join(m.ljust(widths[m] + 2) for m in table.measures)
    print(header)
    for approach in table.approaches:
        line = approach.ljust(10)
        for measure in table.measures:
            row = table.row(approach, measure)
            if row is None or np.isnan(row["median"]):
                text = "-"
            elif table.excluded_family is not None:
                text = f"{row['median']:.2f} ({row['median_excluded']:.2f})"
            else:
                text = f"{row['median']:.2f}"
            line += text.ljust(widths[measure] + 2)
        print(line)
    if table.rows:
        datasets_note = f"medians over {table.rows[0]['n_datasets']} complete datasets"
        if table.excluded_family is not None:
            datasets_note += f"; parentheses exclude ids matching {table.excluded_family!r}"
    print(datasets_note)


def cmd_bench(args) -> int:
    config = load_benchmark_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.dominance_cap is not None:
        overrides["dominance_cap"] = args.dominance_cap
    if args.exact_dominance:
        overrides["exact_dominance"] = True
    if args.approaches:
        overrides["approaches"] = tuple(
            a.strip().lower() for a in args.approaches.split(",") if a.strip()
        )
    if overrides:
        config = BenchmarkConfig(
            datasets=config.datasets,
            approaches=overrides.get("approaches", config.approaches),
            seed=overrides.get("seed", config.seed),
            dominance_cap=overrides.get("dominance_cap", config.dominance_cap),
            exact_dominance=overrides.get("exact_dominance", config.exact_dominance),
            workers=overrides.get("workers", config.workers),
            output_dir=config.output_dir,
        )
    output_dir = Path(args.output_dir) if args.output_dir else (config.output_dir or Path("aggbench-out"))

    report = run_benchmark(config)
    paths = write_report_files(report, output_dir, exclude_family=args.exclude_family)
    failed = sum(1 for c in report.cells if c.error is not None)
    print(f"evaluated {len(report.approaches)} approaches on {len(report.datasets)} datasets "
          f"({len(report.cells)} cells, {failed} failed)")
    _print_summary(summarize(report, args.exclude_family))
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print("artifacts:")
    for name in sorted(paths):
        print(f"  {paths[name]}")
    return 0


def cmd_summarize(args) -> int:
    report = read_report_csv(args.report)
    table = summarize(report, args.exclude_family)
    if args.output:
        write_summary_csv(table, args.output)
        print(f"wrote {args.output}")
    _print_summary(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aggbench",
        description="Learn unsupervised aggregation models and benchmark them "
                    "against basic functions and constrained regression.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit one aggregation model on a CSV dataset")
    p_fit.add_argument("kind", choices=KINDS, help="aggregation approach")
    _add_ingest_flags(p_fit, "response column name (required for reg; excluded from inputs)")
    p_fit.add_argument("-o", "--output", default="model.json", help="model file to write")
    p_fit.add_argument("--seed", type=int, default=0, help="seed for dominance subsampling")
    p_fit.add_argument("--dominance-cap", type=int, default=20_000,
                       help="rows above this are subsampled for the dependency weights")
    p_fit.add_argument("--exact-dominance", action="store_true",
                       help="disable the dominance subsampling cap")
    p_fit.set_defaults(func=cmd_fit)

    p_pred = sub.add_parser("predict", help="apply a fitted model to a CSV dataset")
    p_pred.add_argument("model", help="model file from fit")
    _add_ingest_flags(p_pred, "response column to exclude from the inputs")
    p_pred.add_argument("-o", "--output", default="predictions.csv",
                        help="single-column CSV aligned with input rows")
    p_pred.set_defaults(func=cmd_predict)

    p_eval = sub.add_parser("evaluate", help="compute the four measures for a model on a dataset")
    p_eval.add_argument("model", help="model file from fit")
    _add_ingest_flags(p_eval, "response column (enables the external measures)")
    p_eval.add_argument("-o", "--output", default=None, help="optional JSON output file")
    p_eval.set_defaults(func=cmd_evaluate)

    p_bench = sub.add_parser("bench", help="run the full benchmark from a config file")
    p_bench.add_argument("config", help="JSON config listing datasets")
    p_bench.add_argument("--output-dir", default=None, help="directory for report artifacts")
    p_bench.add_argument("--approaches", default=None,
                         help="comma-separated subset of: " + ",".join(KINDS))
    p_bench.add_argument("--seed", type=int, default=None, help="seed; all randomness flows from it")
    p_bench.add_argument("--workers", type=int, default=None, help="parallel dataset workers")
    p_bench.add_argument("--dominance-cap", type=int, default=None)
    p_bench.add_argument("--exact-dominance", action="store_true")
    p_bench.add_argument("--exclude-family", default=None,
                         help="also report quartiles excluding dataset ids containing this substring")
    p_bench.set_defaults(func=cmd_bench)

    p_sum = sub.add_parser("summarize", help="recompute the summary table from report.csv")
    p_sum.add_argument("report", help="report.csv from a bench run")
    p_sum.add_argument("--exclude-family", default=None)
    p_sum.add_argument("-o", "--output", default=None, help="summary CSV to write")
    p_sum.set_defaults(func=cmd_summarize)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AggbenchError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
