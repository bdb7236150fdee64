"""CSV loading and preprocessing: drop rules, missing values, min-max scaling."""

import csv
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Union

import numpy as np

from aggbench.errors import EmptyDatasetError, ParseError

log = logging.getLogger(__name__)

# Markers treated as missing, per the UCI conventions; any cell that parses
# to a non-finite float (e.g. "inf") is treated the same way so that loaded
# datasets contain finite values only.
MISSING_MARKERS = frozenset({"", "NA", "NaN", "?"})


@dataclass(frozen=True)
class DatasetConfig:
    """Per-dataset ingestion settings: where the file is and how to read it."""

    path: Union[str, Path]
    response_column: Union[str, int, None] = None
    drop_columns: tuple = ()
    has_header: bool = True
    delimiter: str = ","
    dataset_id: Optional[str] = None

    def __post_init__(self):
        if self.response_column is not None and self.response_column in self.drop_columns:
            raise ValueError("response_column must not appear in drop_columns")

    @property
    def id(self) -> str:
        return self.dataset_id if self.dataset_id is not None else Path(self.path).stem


@dataclass(frozen=True)
class Dataset:
    """Clean numeric data: an n x k input matrix plus an optional response."""

    inputs: np.ndarray
    response: Optional[np.ndarray]
    column_names: tuple
    response_name: Optional[str] = None
    warnings: tuple = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return self.inputs.shape[0]

    @property
    def k(self) -> int:
        return self.inputs.shape[1]

    def without_response(self) -> "Dataset":
        """A view of the same inputs with the response removed entirely."""
        return replace(self, response=None, response_name=None)


def _is_missing(cell: str) -> bool:
    s = cell.strip()
    if s in MISSING_MARKERS:
        return True
    try:
        return not math.isfinite(float(s))
    except ValueError:
        return False


def _parse_cell(cell: str) -> Optional[float]:
    """Finite float value of a cell, or None when it does not parse."""
    try:
        v = float(cell.strip())
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def load_csv(config: DatasetConfig) -> Dataset:
    """Load a delimited file and apply the preprocessing rules.

    Dropped columns are removed first, then non-numeric input columns
    (any column with a non-missing cell that does not parse as a finite
    real), then every row with a missing value in the retained inputs or
    the response. Deterministic: the same file and config always produce
    the same Dataset.
    """
    path = Path(config.path)
    with open(path, newline="", encoding="utf-8-sig") as fh:
        try:
            rows = [row for row in csv.reader(fh, delimiter=config.delimiter) if row]
        except csv.Error as exc:
            raise ParseError(f"{path}: {exc}") from exc
    if not rows:
        raise EmptyDatasetError(f"{path}: file contains no rows")

    if config.has_header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
    else:
        names = [f"c{i}" for i in range(len(rows[0]))]
        body = rows
    width = len(names)
    for lineno, row in enumerate(body, start=2 if config.has_header else 1):
        if len(row) != width:
            raise ParseError(
                f"{path}: row {lineno} has {len(row)} fields, expected {width}"
            )

    if isinstance(config.response_column, int):
        if not 0 <= config.response_column < width:
            raise ParseError(
                f"{path}: response column index {config.response_column} out of range"
            )
        resp_idx: Optional[int] = config.response_column
        response_name = names[resp_idx]
    elif config.response_column is not None:
        if config.response_column not in names:
            raise ParseError(
                f"{path}: response column {config.response_column!r} not found"
            )
        response_name = config.response_column
        resp_idx = names.index(response_name)
    else:
        response_name = None
        resp_idx = None

    warnings = []
    for dropped in config.drop_columns:
        if dropped not in names:
            warnings.append(f"drop column {dropped!r} not present in {path.name}")

    input_idx = []
    for i, name in enumerate(names):
        if i == resp_idx or name in config.drop_columns:
            continue
        numeric = all(
            _is_missing(row[i]) or _parse_cell(row[i]) is not None for row in body
        )
        if numeric:
            input_idx.append(i)
        else:
            warnings.append(f"removed non-numeric column {name!r} from {path.name}")

    kept_rows = []
    for row in body:
        if any(_is_missing(row[i]) for i in input_idx):
            continue
        if resp_idx is not None and _is_missing(row[resp_idx]):
            continue
        if resp_idx is not None and _parse_cell(row[resp_idx]) is None:
            # unparseable response cells count as missing
            continue
        kept_rows.append(row)

    dropped_rows = len(body) - len(kept_rows)
    if dropped_rows:
        warnings.append(f"removed {dropped_rows} rows with missing values from {path.name}")
    for w in warnings:
        log.warning(w)

    if len(input_idx) < 2:
        raise EmptyDatasetError(
            f"{path}: only {len(input_idx)} numeric input columns after cleaning (need >= 2)"
        )
    if not kept_rows:
        raise EmptyDatasetError(f"{path}: no rows left after removing missing values")

    inputs = np.array(
        [[float(row[i]) for i in input_idx] for row in kept_rows], dtype=np.float64
    )
    response = None
    if resp_idx is not None:
        response = np.array([float(row[resp_idx]) for row in kept_rows], dtype=np.float64)
    return Dataset(
        inputs=inputs,
        response=response,
        column_names=tuple(names[i] for i in input_idx),
        response_name=response_name,
        warnings=tuple(warnings),
    )


def minmax_scale(d: Dataset) -> Dataset:
    """Map every input column through (x - min) / (max - min).

    Constant columns make the formula undefined; they carry no ordering
    information, so they are dropped with a warning. The response is left
    untouched.
    """
    mins = d.inputs.min(axis=0)
    maxs = d.inputs.max(axis=0)
    keep = maxs > mins
    warnings = list(d.warnings)
    for name, kept in zip(d.column_names, keep):
        if not kept:
            w = f"dropped constant column {name!r} during min-max scaling"
            warnings.append(w)
            log.warning(w)
    if int(keep.sum()) < 2:
        raise EmptyDatasetError(
            f"only {int(keep.sum())} non-constant input columns remain after scaling"
        )
    scaled = (d.inputs[:, keep] - mins[keep]) / (maxs[keep] - mins[keep])
    return Dataset(
        inputs=scaled,
        response=d.response,
        column_names=tuple(n for n, kept in zip(d.column_names, keep) if kept),
        response_name=d.response_name,
        warnings=tuple(warnings),
    )


def load_scaled(config: DatasetConfig) -> Dataset:
    """Convenience pipeline: load_csv followed by minmax_scale."""
    return minmax_scale(load_csv(config))


def config_from_dict(entry: dict, base_dir: Optional[Path] = None) -> DatasetConfig:
    """Build a DatasetConfig from one declarative config entry.

    Recognized keys: path (required), response, drop, delimiter, has_header, id.
    Relative paths resolve against base_dir when given.
    """
    if "path" not in entry:
        raise ParseError("dataset entry is missing required key 'path'")
    path = Path(entry["path"])
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    drop = entry.get("drop", ())
    if isinstance(drop, str):
        drop = tuple(s.strip() for s in drop.split(",") if s.strip())
    return DatasetConfig(
        path=path,
        response_column=entry.get("response"),
        drop_columns=tuple(drop),
        has_header=bool(entry.get("has_header", True)),
        delimiter=entry.get("delimiter", ","),
        dataset_id=entry.get("id"),
    )
