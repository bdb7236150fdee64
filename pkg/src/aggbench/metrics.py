"""Rank-based evaluation measures: predictive power, similarity, consensus, sensitivity.

All operations are pure and work on plain 1-D value vectors; ranking (with
fractional ranks for ties) happens internally where a measure is defined on
rankings.
"""

import numpy as np

from aggbench._kernels import strict_inversions
from aggbench.errors import LengthMismatchError


def fractional_ranks(values: np.ndarray) -> np.ndarray:
    """Ascending 1-based ranks with ties averaged; sums to n(n+1)/2."""
    values = np.asarray(values, dtype=np.float64)
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    upper = np.cumsum(counts)
    lower = upper - counts
    # values tied at a distinct level occupy positions lower+1 .. upper
    mean_rank = (lower + upper + 1) / 2.0
    return mean_rank[inverse]


def pearson_r(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation; NaN when either vector is constant or n < 2."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatchError(f"length mismatch: {a.shape} vs {b.shape}")
    n = a.size
    if n < 2:
        return float("nan")
    da = a - a.mean()
    db = b - b.mean()
    denom = np.sqrt(np.sum(da * da) * np.sum(db * db))
    if denom == 0.0:
        return float("nan")
    r = float(np.sum(da * db) / denom)
    return min(1.0, max(-1.0, r))


def spearman_rho(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of the fractional ranks of the two vectors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatchError(f"length mismatch: {a.shape} vs {b.shape}")
    return pearson_r(fractional_ranks(a), fractional_ranks(b))


def discordant_pairs(a: np.ndarray, b: np.ndarray) -> int:
    """Count pairs ordered strictly one way by `a` and strictly the other by `b`.

    Pairs tied in either vector contribute nothing. Sorting by (a, b) reduces
    the count to strict inversions of b in that order, which the merge-sort
    kernel counts in O(n log n).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatchError(f"length mismatch: {a.shape} vs {b.shape}")
    order = np.lexsort((b, a))
    return int(strict_inversions(b[order]))


def kendall_tau_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Fraction of discordant pairs among all n(n-1)/2 pairs, in [0, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatchError(f"length mismatch: {a.shape} vs {b.shape}")
    n = a.size
    if n < 2:
        raise ValueError("kendall_tau_distance needs n >= 2")
    pairs = n * (n - 1) // 2
    return discordant_pairs(a, b) / pairs


def kemeny_distance(outputs: np.ndarray, inputs: np.ndarray) -> float:
    """Mean Kendall tau distance between the output ranking and each input column's.

    Normalizing the sum by the number of columns keeps values in [0, 1] and
    comparable across datasets of different arity.
    """
    outputs = np.asarray(outputs, dtype=np.float64)
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 2 or inputs.shape[0] != outputs.size:
        raise LengthMismatchError(
            f"inputs {inputs.shape} do not align with outputs of length {outputs.size}"
        )
    k = inputs.shape[1]
    total = 0.0
    for i in range(k):
        total += kendall_tau_distance(outputs, inputs[:, i])
    return total / k


def distinct_value_count(values: np.ndarray) -> int:
    """Number of distinct values under exact bitwise equality."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    return int(np.unique(values.view(np.int64)).size)


def distinct_row_count(rows: np.ndarray) -> int:
    """Number of distinct rows under exact bitwise equality."""
    rows = np.ascontiguousarray(rows, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError("expected a 2-D row matrix")
    return int(np.unique(rows.view(np.int64), axis=0).shape[0])


def sensitivity_ratio(outputs: np.ndarray, input_rows: np.ndarray) -> float:
    """Distinct aggregation outputs divided by distinct input tuples."""
    outputs = np.asarray(outputs, dtype=np.float64)
    input_rows = np.asarray(input_rows, dtype=np.float64)
    if input_rows.shape[0] != outputs.size:
        raise LengthMismatchError(
            f"{input_rows.shape[0]} rows vs {outputs.size} outputs"
        )
    if outputs.size == 0:
        raise ValueError("sensitivity_ratio needs n >= 1")
    return distinct_value_count(outputs) / distinct_row_count(input_rows)
