"""Per-variable empirical-CDF scoring with direction detection.

A score function maps a raw value to the fraction of training values it
weakly dominates. Directions are chosen so every variable correlates
non-negatively with the first one: a variable whose Pearson correlation
against column 1 is negative is scored descending (fraction of training
values >= v instead of <=).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from aggbench.errors import EmptyColumnError, LengthMismatchError, NonFiniteInputError
from aggbench.ingest import Dataset
from aggbench.metrics import pearson_r

ASCENDING = "ascending"
DESCENDING = "descending"


@dataclass(frozen=True)
class ScoreFunction:
    """Empirical CDF of one training column, with a direction flag.

    Immutable after fitting; applying it is reentrant. Training values
    always score in [1/n, 1] because each value counts itself.
    """

    sorted_values: np.ndarray
    direction: str

    @property
    def n(self) -> int:
        return self.sorted_values.size

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Score many values at once via binary search on the sorted copy."""
        values = np.asarray(values, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise NonFiniteInputError("score queries must be finite")
        if self.direction == ASCENDING:
            counts = np.searchsorted(self.sorted_values, values, side="right")
        else:
            counts = self.n - np.searchsorted(self.sorted_values, values, side="left")
        return counts / self.n

    def __call__(self, value: float) -> float:
        return float(self.apply(np.asarray([value]))[0])


@dataclass(frozen=True)
class ScoreMatrix:
    """Training scores (n x k, each cell in [1/n, 1]) and the fitted functions."""

    scores: np.ndarray
    functions: Tuple[ScoreFunction, ...]

    @property
    def n(self) -> int:
        return self.scores.shape[0]

    @property
    def k(self) -> int:
        return self.scores.shape[1]


def detect_direction(x_i: np.ndarray, x_1: np.ndarray) -> str:
    """Ascending iff Pearson correlation against the anchor column is >= 0.

    An undefined correlation (constant column) defaults to ascending: the
    score column is constant either way, so the choice is immaterial.
    """
    x_i = np.asarray(x_i, dtype=np.float64)
    x_1 = np.asarray(x_1, dtype=np.float64)
    if x_i.shape != x_1.shape:
        raise LengthMismatchError(f"length mismatch: {x_i.shape} vs {x_1.shape}")
    r = pearson_r(x_i, x_1)
    if np.isnan(r):
        return ASCENDING
    return ASCENDING if r >= 0 else DESCENDING


def fit_score(column: np.ndarray, direction: str = ASCENDING) -> ScoreFunction:
    """Fit the empirical CDF of one column; stores a sorted copy only."""
    column = np.asarray(column, dtype=np.float64)
    if column.size == 0:
        raise EmptyColumnError("cannot fit a score function on an empty column")
    if not np.all(np.isfinite(column)):
        raise NonFiniteInputError("training values must be finite")
    if direction not in (ASCENDING, DESCENDING):
        raise ValueError(f"unknown direction {direction!r}")
    values = np.sort(column)
    values.flags.writeable = False
    return ScoreFunction(sorted_values=values, direction=direction)


def apply_score(f: ScoreFunction, v: float) -> float:
    """Score a single value; any finite v maps into [0, 1]."""
    return f(v)


def fit_score_matrix(d: Dataset) -> ScoreMatrix:
    """Fit one score function per input column, anchored on column 1.

    Uses only the inputs, never the response.
    """
    inputs = d.inputs
    anchor = inputs[:, 0]
    functions = []
    columns = []
    for i in range(inputs.shape[1]):
        direction = detect_direction(inputs[:, i], anchor)
        f = fit_score(inputs[:, i], direction)
        functions.append(f)
        columns.append(f.apply(inputs[:, i]))
    return ScoreMatrix(scores=np.column_stack(columns), functions=tuple(functions))
