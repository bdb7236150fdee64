"""Unsupervised weight learning: entropy share times dependency share.

Entropy weights reward variables whose score distribution discriminates
instances; dependency weights reward variables whose ranking the joint
dominance ranking under-represents (low absolute Spearman correlation).
The final weights are the normalized elementwise product of the two parts.

Every degenerate case (all-zero entropy, fully determined joint ranking,
all-zero products) falls back to uniform weights with a logged warning:
a benchmark over many datasets must not abort on pathological inputs.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from aggbench._kernels import dominance_counts
from aggbench.metrics import spearman_rho
from aggbench.scoring import ScoreMatrix
from aggbench.solver import snap_weights_to_unit_sum

log = logging.getLogger(__name__)

DEGENERATE_DEPENDENCY_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Final weights plus their entropy/dependency provenance; all on the simplex."""

    weights: np.ndarray
    entropy_parts: np.ndarray
    dependency_parts: np.ndarray

    @property
    def k(self) -> int:
        return self.weights.size


@dataclass(frozen=True)
class DominanceRanking:
    """Per-row fraction of rows weakly dominated in every score coordinate."""

    r_values: np.ndarray
    scores: np.ndarray

    @property
    def n(self) -> int:
        return self.r_values.size


def _as_scores(s: Union[ScoreMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(s, ScoreMatrix):
        return s.scores
    return np.asarray(s, dtype=np.float64)


def shannon_entropy(values: np.ndarray, base: Optional[float] = None) -> float:
    """Entropy of the empirical distribution over distinct values.

    Natural log by default; the base cancels in the weight normalization.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    _, counts = np.unique(values, return_counts=True)
    p = counts / n
    h = float(-(p * np.log(p)).sum())
    if base is not None:
        h /= math.log(base)
    return h


def entropy_weights(s: Union[ScoreMatrix, np.ndarray], base: Optional[float] = None) -> np.ndarray:
    """Per-column entropy share H_i / sum(H); uniform fallback when all H are 0."""
    scores = _as_scores(s)
    h = np.array([shannon_entropy(scores[:, i], base) for i in range(scores.shape[1])])
    total = h.sum()
    if total <= 0.0:
        log.warning("all score columns are constant; entropy weights fall back to uniform")
        return np.full(h.size, 1.0 / h.size)
    return h / total


def dominance_rank(s: Union[ScoreMatrix, np.ndarray]) -> DominanceRanking:
    """Exact pairwise dominance fractions: r_j = |{j': s_j' <= s_j coordinatewise}| / n."""
    scores = _as_scores(s)
    n = scores.shape[0]
    counts = dominance_counts(scores)
    return DominanceRanking(r_values=counts / n, scores=scores)


def dependency_weights_from_rho(rho: np.ndarray) -> np.ndarray:
    """Apply (1 - rho_i) / (k - sum(rho)); uniform fallback when the denominator vanishes."""
    rho = np.asarray(rho, dtype=np.float64)
    k = rho.size
    denominator = k - rho.sum()
    if denominator <= DEGENERATE_DEPENDENCY_TOL:
        log.warning(
            "every column perfectly determines the joint ranking; "
            "dependency weights fall back to uniform"
        )
        return np.full(k, 1.0 / k)
    return (1.0 - rho) / denominator


def dependency_weights(
    s: Union[ScoreMatrix, np.ndarray], ranking: DominanceRanking
) -> np.ndarray:
    """Dependency share per column from |Spearman(score column, dominance ranking)|.

    An undefined correlation (constant column or constant ranking) is read
    as no dependency, rho = 0.
    """
    scores = _as_scores(s)
    if scores.shape[0] != ranking.n:
        raise ValueError(
            f"score matrix has {scores.shape[0]} rows, ranking has {ranking.n}"
        )
    rho = np.empty(scores.shape[1])
    for i in range(scores.shape[1]):
        r = spearman_rho(scores[:, i], ranking.r_values)
        rho[i] = 0.0 if np.isnan(r) else abs(r)
    return dependency_weights_from_rho(rho)


def combine_weights(ent: np.ndarray, dep: np.ndarray) -> WeightVector:
    """Normalized elementwise product of the two parts; uniform on all-zero products."""
    ent = np.asarray(ent, dtype=np.float64)
    dep = np.asarray(dep, dtype=np.float64)
    if ent.shape != dep.shape:
        raise ValueError(f"shape mismatch: {ent.shape} vs {dep.shape}")
    product = ent * dep
    total = product.sum()
    if total <= 0.0:
        log.warning("all entropy x dependency products are zero; weights fall back to uniform")
        weights = np.full(ent.size, 1.0 / ent.size)
    else:
        weights = product / total
    return WeightVector(
        weights=snap_weights_to_unit_sum(weights),
        entropy_parts=ent,
        dependency_parts=dep,
    )


def learn_weights(
    s: ScoreMatrix,
    *,
    dominance_cap: int = 20_000,
    seed: int = 0,
    exact_dominance: bool = False,
) -> WeightVector:
    """Full pipeline: entropy weights, dominance ranking, dependency weights, combine.

    Above the cap, the O(n^2 k) dominance ranking is estimated on a seeded
    uniform row subsample (dependency part only; entropy always uses all
    rows). exact_dominance disables the cap.
    """
    scores = s.scores
    n = scores.shape[0]
    ent = entropy_weights(scores)
    if not exact_dominance and n > dominance_cap:
        rng = np.random.default_rng(seed)
        idx = rng.choice(n, size=dominance_cap, replace=False)
        idx.sort()
        sub = scores[idx]
        log.warning(
            "dominance ranking estimated on %d of %d rows (seed %d)",
            dominance_cap, n, seed,
        )
    else:
        sub = scores
    ranking = dominance_rank(sub)
    dep = dependency_weights(sub, ranking)
    return combine_weights(ent, dep)
