"""NumPy fallback for the hot kernels.

Same contracts as the compiled module ``aggbench._ext``; used when the
extension is unavailable or ``AGGBENCH_PURE_PYTHON`` is set.
"""

import numpy as np

BACKEND = "python"

# Upper bound on comparison-matrix cells per dominance chunk (~16 MB of bools).
_CHUNK_CELLS = 16_000_000

# Block size below which inversions are counted by direct pairwise comparison.
_BASE_BLOCK = 64


def dominance_counts(scores: np.ndarray) -> np.ndarray:
    """For each row j, count rows j' with scores[j'] <= scores[j] in every column.

    Exact O(n^2 k) computation, chunked to bound temporary memory.
    """
    scores = np.ascontiguousarray(scores, dtype=np.float64)
    n, k = scores.shape
    out = np.empty(n, dtype=np.int64)
    chunk = max(1, _CHUNK_CELLS // max(n * k, 1))
    for start in range(0, n, chunk):
        block = scores[start : start + chunk]
        dominated = (scores[None, :, :] <= block[:, None, :]).all(axis=2)
        out[start : start + block.shape[0]] = dominated.sum(axis=1)
    return out


def strict_inversions(values: np.ndarray) -> int:
    """Count pairs (i < j) with values[i] > values[j]; ties contribute nothing.

    Bottom-up merge counting: cross-block inversions come from searchsorted
    on the sorted left half, giving O(n log^2 n) overall.
    """
    arr = np.array(values, dtype=np.float64)
    n = arr.size
    if n < 2:
        return 0
    total = 0
    for start in range(0, n, _BASE_BLOCK):
        block = arr[start : start + _BASE_BLOCK]
        m = block.size
        if m > 1:
            gt = block[:, None] > block[None, :]
            total += int(gt[np.triu_indices(m, 1)].sum())
        block.sort()
    width = _BASE_BLOCK
    while width < n:
        for start in range(0, n, 2 * width):
            left = arr[start : start + width]
            right = arr[start + width : start + 2 * width]
            if right.size == 0:
                continue
            pos = np.searchsorted(left, right, side="right")
            total += left.size * right.size - int(pos.sum())
            arr[start : start + left.size + right.size] = np.sort(
                np.concatenate([left, right])
            )
        width *= 2
    return total
