"""Simplex-constrained least squares via projected gradient descent.

Minimizes sum_j (sum_i w_i X_ji - y_j)^2 over the probability simplex
(w_i >= 0, sum w_i = 1). Dependency-free and provably convergent on this
convex problem: step 1/L with L the largest eigenvalue of 2 X^T X
(estimated by power iteration), exact Euclidean projection onto the
simplex after each step.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from aggbench.errors import NonFiniteInputError

_POWER_ITERATIONS = 100


@dataclass
class SimplexLsProblem:
    X: np.ndarray
    y: np.ndarray
    tolerance: float = 1e-9
    max_iterations: int = 50_000


@dataclass(frozen=True)
class SimplexLsResult:
    weights: np.ndarray
    objective: float
    iterations: int
    converged: bool
    objective_trace: Optional[List[float]] = field(default=None, compare=False)


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-and-threshold)."""
    v = np.asarray(v, dtype=np.float64)
    u = np.sort(v)[::-1]
    cumulative = np.cumsum(u) - 1.0
    indices = np.arange(1, v.size + 1)
    positive = u - cumulative / indices > 0
    rho = indices[positive][-1]
    theta = cumulative[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def snap_weights_to_unit_sum(w: np.ndarray) -> np.ndarray:
    """Normalize, then nudge the largest weight so the float sum is exactly 1.

    The adjustment is at most a few ulps; it keeps weights non-negative and
    makes boundary identities like sum(w * 1) == 1 hold bitwise.
    """
    w = np.maximum(np.asarray(w, dtype=np.float64), 0.0)
    total = w.sum()
    if total <= 0.0 or not np.isfinite(total):
        return np.full(w.size, 1.0 / w.size)
    w = w / total
    for _ in range(4):
        residual = 1.0 - w.sum()
        if residual == 0.0:
            return w
        # the correction only registers on an entry whose ulp is fine enough,
        # so probe candidates from the smallest weight upward
        for idx in np.argsort(w):
            trial = w.copy()
            trial[idx] += residual
            if trial[idx] >= 0.0 and float(np.sum(trial)) == 1.0:
                return trial
        w[np.argmax(w)] += residual
        np.maximum(w, 0.0, out=w)
    return w


def _largest_eigenvalue(matrix: np.ndarray) -> float:
    """Power-iteration estimate of the top eigenvalue of a PSD matrix."""
    k = matrix.shape[0]
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(k)
    v /= np.linalg.norm(v)
    for _ in range(_POWER_ITERATIONS):
        w = matrix @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
    return float(v @ (matrix @ v))


def solve_simplex_ls(
    problem: SimplexLsProblem, *, track_objective: bool = False
) -> SimplexLsResult:
    """Solve the constrained problem; the result is feasible even on early stop.

    Terminates when the projected-gradient norm falls below the tolerance or
    max_iterations is hit (converged=False). If an iterate ever increases the
    objective (possible only when the power-iteration estimate of L falls
    short), the step is halved and retried, preserving monotone descent.
    """
    X = np.asarray(problem.X, dtype=np.float64)
    y = np.asarray(problem.y, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
        raise NonFiniteInputError("X and y must contain finite values only")
    if X.shape[0] != y.size:
        raise ValueError(f"X has {X.shape[0]} rows but y has {y.size} entries")
    n, k = X.shape

    gram = X.T @ X
    xty = X.T @ y
    const = float(y @ y)

    def objective(w: np.ndarray) -> float:
        r = X @ w - y
        return float(r @ r)

    w = np.full(k, 1.0 / k)
    trace = [objective(w)] if track_objective else None

    lipschitz = _largest_eigenvalue(2.0 * gram)
    if lipschitz <= 0.0:
        # X is identically zero: every feasible point has the same objective
        w = snap_weights_to_unit_sum(w)
        return SimplexLsResult(w, const, 0, True, trace)

    current_quad = float(w @ (gram @ w) - 2.0 * (xty @ w)) + const
    # objective changes smaller than this are indistinguishable from rounding
    noise_floor = 1e-13 * (1.0 + const + abs(current_quad))
    iterations = 0
    doublings = 0
    converged = False
    while iterations < problem.max_iterations:
        grad = 2.0 * (gram @ w - xty)
        step = 1.0 / lipschitz
        candidate = project_to_simplex(w - step * grad)
        gap = np.linalg.norm(w - candidate) / step
        if gap <= problem.tolerance:
            converged = True
            break
        candidate_quad = float(candidate @ (gram @ candidate) - 2.0 * (xty @ candidate)) + const
        if candidate_quad > current_quad + noise_floor and doublings < 60:
            lipschitz *= 2.0
            doublings += 1
            continue
        if candidate_quad > current_quad:
            # descent has hit the floating-point floor: converged numerically
            converged = True
            break
        w = candidate
        current_quad = candidate_quad
        iterations += 1
        if trace is not None:
            trace.append(objective(w))

    w = snap_weights_to_unit_sum(w)
    return SimplexLsResult(w, objective(w), iterations, converged, trace)
