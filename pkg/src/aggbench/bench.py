"""Benchmark orchestration: fit every approach on every dataset, evaluate, summarize.

Each dataset is loaded, preprocessed, min-max scaled, and handed to every
requested approach. Non-REG approaches are fitted through a view that has
the response removed outright, so the unsupervised contract is structural.
Per-cell failures are recorded, never fatal; a run aborts only when every
dataset fails ingestion.
"""

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from aggbench.aggregate import KINDS, fit_model, predict_all
from aggbench.errors import (
    AggbenchError,
    EmptyReportError,
    InsufficientDataError,
    NoUsableDatasetsError,
    ParseError,
)
from aggbench.ingest import DatasetConfig, config_from_dict, load_csv, minmax_scale
from aggbench.metrics import (
    distinct_value_count,
    kemeny_distance,
    kendall_tau_distance,
    pearson_r,
    sensitivity_ratio,
    spearman_rho,
)

log = logging.getLogger(__name__)

MEASURES = ("predictive_power", "similarity", "consensus", "sensitivity")

_REPORT_COLUMNS = (
    "dataset", "approach", "n", "k",
    "predictive_power", "similarity", "consensus", "sensitivity", "flags",
)


@dataclass(frozen=True)
class BenchmarkConfig:
    datasets: Tuple[DatasetConfig, ...]
    approaches: Tuple[str, ...] = KINDS
    seed: int = 0
    dominance_cap: int = 20_000
    exact_dominance: bool = False
    workers: int = 1
    output_dir: Optional[Path] = None

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("benchmark config needs at least one dataset")
        if not self.approaches:
            raise ValueError("benchmark config needs at least one approach")
        unknown = [a for a in self.approaches if a not in KINDS]
        if unknown:
            raise ValueError(f"unknown approaches {unknown}; valid: {KINDS}")
        ids = [d.id for d in self.datasets]
        if len(set(ids)) != len(ids):
            raise ValueError("dataset ids must be unique; set explicit 'id' entries")


@dataclass(frozen=True)
class MeasureSet:
    predictive_power: float
    similarity: float
    consensus: float
    sensitivity: float
    flags: Tuple[str, ...] = ()

    def value(self, measure: str) -> float:
        return getattr(self, measure)


@dataclass(frozen=True)
class CellResult:
    dataset_id: str
    approach: str
    n: Optional[int] = None
    k: Optional[int] = None
    measures: Optional[MeasureSet] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class DatasetRecord:
    dataset_id: str
    n: Optional[int] = None
    k: Optional[int] = None
    distinct_responses: Optional[int] = None
    error: Optional[str] = None
    warnings: Tuple[str, ...] = ()


@dataclass
class EvaluationReport:
    approaches: Tuple[str, ...]
    datasets: List[DatasetRecord]
    cells: List[CellResult]
    warnings: List[str] = field(default_factory=list)

    def cell(self, dataset_id: str, approach: str) -> Optional[CellResult]:
        for c in self.cells:
            if c.dataset_id == dataset_id and c.approach == approach:
                return c
        return None


@dataclass
class SummaryTable:
    approaches: Tuple[str, ...]
    measures: Tuple[str, ...]
    rows: List[dict]
    excluded_family: Optional[str] = None

    def row(self, approach: str, measure: str) -> Optional[dict]:
        for r in self.rows:
            if r["approach"] == approach and r["measure"] == measure:
                return r
        return None


def _evaluate_outputs(
    outputs: np.ndarray, inputs: np.ndarray, response: Optional[np.ndarray]
) -> MeasureSet:
    flags: List[str] = []
    n = outputs.size
    if n < 2:
        return MeasureSet(
            float("nan"), float("nan"), float("nan"),
            sensitivity_ratio(outputs, inputs), flags=("insufficient_rows",),
        )
    if response is None:
        predictive = float("nan")
        similarity = float("nan")
        flags.append("no_response")
    else:
        rho = spearman_rho(outputs, response)
        if math.isnan(rho):
            predictive = 0.0
            flags.append("degenerate_spearman")
        else:
            predictive = rho
        similarity = kendall_tau_distance(outputs, response)
    consensus = kemeny_distance(outputs, inputs)
    sensitivity = sensitivity_ratio(outputs, inputs)
    return MeasureSet(predictive, similarity, consensus, sensitivity, tuple(flags))


def _evaluate_dataset(task: tuple) -> Tuple[DatasetRecord, List[CellResult]]:
    index, cfg, approaches, seed, dominance_cap, exact_dominance = task
    dataset_id = cfg.id
    derived_seed = int(np.random.SeedSequence([seed, index]).generate_state(1)[0])
    try:
        scaled = minmax_scale(load_csv(cfg))
    except (AggbenchError, OSError) as exc:
        message = f"dataset failed: {exc}"
        record = DatasetRecord(dataset_id, error=str(exc))
        return record, [CellResult(dataset_id, a, error=message) for a in approaches]

    record = DatasetRecord(
        dataset_id,
        n=scaled.n,
        k=scaled.k,
        distinct_responses=(
            distinct_value_count(scaled.response) if scaled.response is not None else None
        ),
        warnings=scaled.warnings,
    )
    unsupervised = scaled.without_response()
    cells = []
    for approach in approaches:
        try:
            model = fit_model(
                approach,
                scaled if approach == "reg" else unsupervised,
                dominance_cap=dominance_cap,
                seed=derived_seed,
                exact_dominance=exact_dominance,
            )
            outputs = predict_all(model, unsupervised)
            measures = _evaluate_outputs(outputs, scaled.inputs, scaled.response)
            flags = list(measures.flags)
            if (
                approach in ("wsm", "wpm")
                and not exact_dominance
                and scaled.n > dominance_cap
            ):
                flags.append("subsampled_dominance")
            if approach == "reg" and model.solver_converged is False:
                flags.append("solver_not_converged")
            if flags != list(measures.flags):
                measures = MeasureSet(
                    measures.predictive_power, measures.similarity,
                    measures.consensus, measures.sensitivity, tuple(flags),
                )
            cells.append(
                CellResult(dataset_id, approach, n=scaled.n, k=scaled.k, measures=measures)
            )
        except Exception as exc:  # per-cell isolation: record, never abort the run
            log.warning("%s/%s failed: %s", dataset_id, approach, exc)
            cells.append(
                CellResult(dataset_id, approach, n=scaled.n, k=scaled.k, error=str(exc))
            )
    return record, cells


def run_benchmark(config: BenchmarkConfig) -> EvaluationReport:
    """Run every requested approach on every dataset; deterministic given the seed."""
    tasks = [
        (i, cfg, config.approaches, config.seed, config.dominance_cap, config.exact_dominance)
        for i, cfg in enumerate(config.datasets)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_evaluate_dataset, tasks))
    else:
        results = [_evaluate_dataset(t) for t in tasks]

    records = [r for r, _ in results]
    if all(r.error is not None for r in records):
        raise NoUsableDatasetsError(
            "every dataset failed ingestion: " + "; ".join(r.error for r in records)
        )
    cells: List[CellResult] = []
    warnings: List[str] = []
    for record, dataset_cells in results:
        cells.extend(dataset_cells)
        warnings.extend(record.warnings)
        if record.error:
            warnings.append(f"{record.dataset_id}: {record.error}")
    return EvaluationReport(
        approaches=config.approaches, datasets=records, cells=cells, warnings=warnings
    )


def _measure_vectors(report: EvaluationReport, measure: str) -> Dict[str, Dict[str, float]]:
    """measure values keyed [approach][dataset_id], complete cells only."""
    out: Dict[str, Dict[str, float]] = {a: {} for a in report.approaches}
    for cell in report.cells:
        if cell.measures is None or cell.approach not in out:
            continue
        value = cell.measures.value(measure)
        if not math.isnan(value):
            out[cell.approach][cell.dataset_id] = value
    return out


def _quartiles(values: List[float]) -> Tuple[float, float, float]:
    if not values:
        return (float("nan"),) * 3
    p25, p50, p75 = np.percentile(np.asarray(values, dtype=np.float64), (25, 50, 75))
    return float(p25), float(p50), float(p75)


def summarize(report: EvaluationReport, exclude_family: Optional[str] = None) -> SummaryTable:
    """Quartiles per approach x measure over the common complete dataset set.

    For each measure only datasets where every approach produced a value
    are used, so quartiles are comparable across approaches. When
    exclude_family is given, a filtered variant over the datasets whose id
    does not contain that substring (case-insensitive) is added.
    """
    if not report.cells:
        raise EmptyReportError("report has no cells to summarize")
    rows: List[dict] = []
    for measure in MEASURES:
        vectors = _measure_vectors(report, measure)
        common = None
        for approach in report.approaches:
            ids = set(vectors[approach])
            common = ids if common is None else common & ids
        common_ids = sorted(common or ())
        if exclude_family is not None:
            needle = exclude_family.lower()
            filtered_ids = [i for i in common_ids if needle not in i.lower()]
        for approach in report.approaches:
            values = [vectors[approach][i] for i in common_ids]
            p25, p50, p75 = _quartiles(values)
            row = {
                "approach": approach, "measure": measure,
                "p25": p25, "median": p50, "p75": p75,
                "n_datasets": len(common_ids),
            }
            if exclude_family is not None:
                fp25, fp50, fp75 = _quartiles(
                    [vectors[approach][i] for i in filtered_ids]
                )
                row.update(
                    p25_excluded=fp25, median_excluded=fp50, p75_excluded=fp75,
                    n_datasets_excluded=len(filtered_ids),
                )
            rows.append(row)
    return SummaryTable(
        approaches=report.approaches, measures=MEASURES, rows=rows,
        excluded_family=exclude_family,
    )


def correlation_matrix(report: EvaluationReport, measure: str) -> Tuple[Tuple[str, ...], np.ndarray]:
    """Pairwise Pearson correlation between approaches' per-dataset measure values.

    Pairs are correlated over the datasets where both approaches have a
    value; pairs with fewer than 3 shared datasets come back NaN.
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    approaches = report.approaches
    if len(approaches) < 2:
        raise InsufficientDataError("correlation matrix needs at least 2 approaches")
    vectors = _measure_vectors(report, measure)
    a = len(approaches)
    matrix = np.full((a, a), np.nan)
    any_pair = False
    for i in range(a):
        matrix[i, i] = 1.0
        for j in range(i + 1, a):
            shared = sorted(set(vectors[approaches[i]]) & set(vectors[approaches[j]]))
            if len(shared) < 3:
                continue
            any_pair = True
            vi = np.array([vectors[approaches[i]][s] for s in shared])
            vj = np.array([vectors[approaches[j]][s] for s in shared])
            r = pearson_r(vi, vj)
            matrix[i, j] = matrix[j, i] = r
    if not any_pair:
        raise InsufficientDataError(
            "no approach pair shares 3 or more datasets with complete cells"
        )
    return approaches, matrix


def _fmt(value) -> str:
    """Stable CSV cell text: repr for floats (round-trips exactly), '' for NaN/None."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def write_report_csv(report: EvaluationReport, path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_REPORT_COLUMNS)
        for cell in report.cells:
            if cell.measures is None:
                flags = f"error:{cell.error}"
                values = ["", "", "", ""]
            else:
                flags = "|".join(cell.measures.flags)
                values = [_fmt(cell.measures.value(m)) for m in MEASURES]
            writer.writerow(
                [cell.dataset_id, cell.approach, _fmt(cell.n), _fmt(cell.k), *values, flags]
            )


def read_report_csv(path: Union[str, Path]) -> EvaluationReport:
    """Rebuild a report from report.csv (enough structure for summaries)."""
    cells: List[CellResult] = []
    approaches: List[str] = []
    dataset_ids: List[str] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != _REPORT_COLUMNS:
            raise ParseError(f"{path}: not a benchmark report (unexpected columns)")
        for row in reader:
            dataset_id = row["dataset"]
            approach = row["approach"]
            if approach not in approaches:
                approaches.append(approach)
            if dataset_id not in dataset_ids:
                dataset_ids.append(dataset_id)
            n = int(row["n"]) if row["n"] else None
            k = int(row["k"]) if row["k"] else None
            if row["flags"].startswith("error:"):
                cells.append(
                    CellResult(dataset_id, approach, n=n, k=k, error=row["flags"][6:])
                )
                continue
            measures = MeasureSet(
                *(float(row[m]) if row[m] else float("nan") for m in MEASURES),
                flags=tuple(f for f in row["flags"].split("|") if f),
            )
            cells.append(CellResult(dataset_id, approach, n=n, k=k, measures=measures))
    records = [DatasetRecord(i) for i in dataset_ids]
    return EvaluationReport(
        approaches=tuple(approaches), datasets=records, cells=cells
    )


def write_report_json(report: EvaluationReport, path: Union[str, Path]) -> None:
    payload = {
        "format": "aggbench-report",
        "version": 1,
        "approaches": list(report.approaches),
        "datasets": [
            {
                "id": r.dataset_id, "n": r.n, "k": r.k,
                "distinct_responses": r.distinct_responses,
                "error": r.error, "warnings": list(r.warnings),
            }
            for r in report.datasets
        ],
        "cells": [
            {
                "dataset": c.dataset_id, "approach": c.approach,
                "n": c.n, "k": c.k,
                "measures": (
                    None if c.measures is None else {
                        m: (None if math.isnan(c.measures.value(m)) else c.measures.value(m))
                        for m in MEASURES
                    }
                ),
                "flags": list(c.measures.flags) if c.measures else [],
                "error": c.error,
            }
            for c in report.cells
        ],
        "warnings": list(report.warnings),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def write_summary_csv(table: SummaryTable, path: Union[str, Path]) -> None:
    columns = ["approach", "measure", "p25", "median", "p75", "n_datasets"]
    if table.excluded_family is not None:
        columns += ["p25_excluded", "median_excluded", "p75_excluded", "n_datasets_excluded"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in table.rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])


def write_correlation_csv(
    approaches: Tuple[str, ...], matrix: np.ndarray, path: Union[str, Path]
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["approach", *approaches])
        for name, row in zip(approaches, matrix):
            writer.writerow([name, *(_fmt(float(v)) for v in row)])


def write_boxplot_csv(report: EvaluationReport, measure: str, path: Union[str, Path]) -> None:
    """Quartiles plus Tukey whiskers per approach: the content of a box plot."""
    vectors = _measure_vectors(report, measure)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["approach", "whisker_low", "p25", "median", "p75", "whisker_high", "n_datasets"]
        )
        for approach in report.approaches:
            values = np.array(sorted(vectors[approach].values()))
            if values.size == 0:
                writer.writerow([approach, "", "", "", "", "", 0])
                continue
            p25, p50, p75 = _quartiles(list(values))
            iqr = p75 - p25
            in_fence = values[(values >= p25 - 1.5 * iqr) & (values <= p75 + 1.5 * iqr)]
            writer.writerow([
                approach,
                _fmt(float(in_fence.min())), _fmt(p25), _fmt(p50), _fmt(p75),
                _fmt(float(in_fence.max())), values.size,
            ])


def write_report_files(
    report: EvaluationReport,
    output_dir: Union[str, Path],
    exclude_family: Optional[str] = None,
) -> Dict[str, Path]:
    """Write report.csv/json, summary.csv, and per-measure correlation/box-plot files."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: Dict[str, Path] = {}

    paths["report.csv"] = out / "report.csv"
    write_report_csv(report, paths["report.csv"])
    paths["report.json"] = out / "report.json"
    write_report_json(report, paths["report.json"])

    table = summarize(report, exclude_family)
    paths["summary.csv"] = out / "summary.csv"
    write_summary_csv(table, paths["summary.csv"])

    for measure in MEASURES:
        try:
            approaches, matrix = correlation_matrix(report, measure)
        except InsufficientDataError as exc:
            report.warnings.append(f"correlation matrix for {measure} skipped: {exc}")
            continue
        name = f"corr_{measure}.csv"
        paths[name] = out / name
        write_correlation_csv(approaches, matrix, paths[name])
    for measure in MEASURES:
        name = f"boxplot_{measure}.csv"
        paths[name] = out / name
        write_boxplot_csv(report, measure, paths[name])
    return paths


def load_benchmark_config(path: Union[str, Path]) -> BenchmarkConfig:
    """Read the declarative benchmark config (JSON; dataset paths relative to it)."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict) or "datasets" not in raw:
        raise ParseError(f"{path}: benchmark config must be an object with 'datasets'")
    datasets = tuple(
        config_from_dict(entry, base_dir=path.parent) for entry in raw["datasets"]
    )
    approaches = raw.get("approaches")
    if approaches is not None:
        approaches = tuple(a.lower() for a in approaches)
    output_dir = raw.get("output_dir")
    return BenchmarkConfig(
        datasets=datasets,
        approaches=approaches if approaches is not None else KINDS,
        seed=int(raw.get("seed", 0)),
        dominance_cap=int(raw.get("dominance_cap", 20_000)),
        exact_dominance=bool(raw.get("exact_dominance", False)),
        workers=int(raw.get("workers", 1)),
        output_dir=Path(output_dir) if output_dir else None,
    )
