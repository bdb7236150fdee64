"""Independent brute-force oracles the implementation is checked against.

Everything here is written as directly as possible from the definitions
(plain loops, exhaustive grids) and must stay independent of the library
code paths it verifies.
"""

import numpy as np


def count_score(training, v, direction):
    """O(n) counting definition of the empirical-CDF score."""
    if direction == "ascending":
        count = sum(1 for t in training if t <= v)
    else:
        count = sum(1 for t in training if t >= v)
    return count / len(training)


def dominance_counts_naive(scores):
    """O(n^2 k) double loop over the weak-dominance definition."""
    n, k = scores.shape
    out = np.zeros(n, dtype=np.int64)
    for j in range(n):
        for jp in range(n):
            if all(scores[jp, i] <= scores[j, i] for i in range(k)):
                out[j] += 1
    return out


def discordant_pairs_naive(a, b):
    """O(n^2) pair enumeration; ties in either vector are not discordant."""
    n = len(a)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (a[i] - a[j]) * (b[i] - b[j]) < 0:
                count += 1
    return count


def kendall_distance_naive(a, b):
    n = len(a)
    return discordant_pairs_naive(a, b) / (n * (n - 1) / 2)


def simplex_grid(k, resolution=0.001):
    """All weight vectors on the simplex with coordinates multiples of resolution."""
    steps = round(1.0 / resolution)
    if k == 2:
        w1 = np.arange(steps + 1) / steps
        return np.column_stack([w1, 1.0 - w1])
    if k == 3:
        rows = []
        for i in range(steps + 1):
            j = np.arange(steps + 1 - i)
            w = np.empty((j.size, 3))
            w[:, 0] = i / steps
            w[:, 1] = j / steps
            w[:, 2] = 1.0 - w[:, 0] - w[:, 1]
            rows.append(w)
        return np.vstack(rows)
    raise ValueError("grid oracle only implemented for k in {2, 3}")


def grid_search_objective(X, y, resolution=0.001):
    """Exhaustive minimum of ||Xw - y||^2 over the simplex grid."""
    grid = simplex_grid(X.shape[1], resolution)
    gram = X.T @ X
    xty = X.T @ y
    const = float(y @ y)
    best = np.inf
    best_w = None
    chunk = 200_000
    for start in range(0, grid.shape[0], chunk):
        w = grid[start : start + chunk]
        obj = np.einsum("ij,jk,ik->i", w, gram, w) - 2.0 * (w @ xty) + const
        idx = int(np.argmin(obj))
        if obj[idx] < best:
            best = float(obj[idx])
            best_w = w[idx].copy()
    return best, best_w


def refined_grid_objective(X, y, center, radius=0.002, resolution=1e-5):
    """Brute-force objective minimum on a fine local simplex grid around center."""
    k = X.shape[1]
    steps = np.arange(-radius, radius + resolution / 2, resolution)
    if k == 2:
        w1 = np.clip(center[0] + steps, 0.0, 1.0)
        grid = np.column_stack([w1, 1.0 - w1])
    elif k == 3:
        a = np.clip(center[0] + steps, 0.0, 1.0)
        b = np.clip(center[1] + steps, 0.0, 1.0)
        aa, bb = np.meshgrid(a, b, indexing="ij")
        aa, bb = aa.ravel(), bb.ravel()
        cc = 1.0 - aa - bb
        mask = cc >= 0.0
        grid = np.column_stack([aa[mask], bb[mask], cc[mask]])
    else:
        raise ValueError("refinement oracle only implemented for k in {2, 3}")
    residuals = grid @ X.T - y
    return float((residuals ** 2).sum(axis=1).min())


def nearest_simplex_point_on_grid(v, resolution=0.001):
    """Closest grid point of the simplex to v, by exhaustive search."""
    grid = simplex_grid(len(v), resolution)
    d = ((grid - np.asarray(v)) ** 2).sum(axis=1)
    idx = int(np.argmin(d))
    return float(d[idx]), grid[idx]


def shannon_entropy_naive(values):
    """Entropy over the distinct-value distribution, from the definition."""
    values = list(values)
    n = len(values)
    h = 0.0
    for v in set(values):
        p = values.count(v) / n
        h -= p * np.log(p)
    return h


def spearman_naive(a, b):
    """Spearman via explicitly averaged ranks and the Pearson formula."""

    def ranks(x):
        order = sorted(range(len(x)), key=lambda i: x[i])
        out = [0.0] * len(x)
        i = 0
        while i < len(x):
            j = i
            while j + 1 < len(x) and x[order[j + 1]] == x[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for t in range(i, j + 1):
                out[order[t]] = avg
            i = j + 1
        return out

    ra = np.array(ranks(list(a)))
    rb = np.array(ranks(list(b)))
    da = ra - ra.mean()
    db = rb - rb.mean()
    denom = np.sqrt((da ** 2).sum() * (db ** 2).sum())
    if denom == 0:
        return float("nan")
    return float((da * db).sum() / denom)


def wpm_by_hand(weights, scores):
    """Direct product form, no log-space trick."""
    out = 1.0
    for w, s in zip(weights, scores):
        out *= s ** w
    return out


def enumerate_distinct(values):
    return len({float(v) for v in values})


def all_monotone_pairs(rng, k, count):
    """Random tuple pairs (x, x') with x <= x' coordinatewise, for monotonicity checks."""
    base = rng.uniform(0.0, 1.0, size=(count, k))
    bumps = rng.uniform(0.0, 1.0, size=(count, k)) * rng.integers(0, 2, size=(count, k))
    upper = np.minimum(base + bumps, 1.0)
    return base, upper
