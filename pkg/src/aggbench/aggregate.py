"""The seven aggregation approaches behind one fit/predict contract.

PROD, MIN, MAX, and SUM are stateless. WSM and WPM learn empirical-CDF
score functions and unsupervised weights from the inputs alone; REG learns
simplex-constrained least-squares weights from inputs and response. Fitted
models are immutable and safe for concurrent prediction.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from aggbench.errors import (
    ArityMismatchError,
    MissingResponseError,
    ModelFormatError,
    NonFiniteInputError,
)
from aggbench.ingest import Dataset
from aggbench.scoring import ScoreFunction, fit_score_matrix
from aggbench.solver import SimplexLsProblem, solve_simplex_ls
from aggbench.weights import WeightVector, learn_weights

log = logging.getLogger(__name__)

BASIC_KINDS = ("prod", "min", "max", "sum")
LEARNED_KINDS = ("wsm", "wpm", "reg")
KINDS = BASIC_KINDS + ("wsm", "wpm", "reg")
UNSUPERVISED_KINDS = BASIC_KINDS + ("wsm", "wpm")

MODEL_FORMAT = "aggbench-model"
MODEL_VERSION = 1

# Basic kinds and REG expect inputs in [0,1]; out-of-range values are accepted
# for robustness but flagged once per run.
_range_warning_issued = False


def _warn_out_of_range(kind: str) -> None:
    global _range_warning_issued
    if not _range_warning_issued:
        log.warning(
            "%s received inputs outside [0,1]; results are still computed "
            "but the data looks unscaled (warning issued once per run)", kind,
        )
        _range_warning_issued = True


def reset_range_warning() -> None:
    global _range_warning_issued
    _range_warning_issued = False


@dataclass(frozen=True)
class AggregationModel:
    """A fitted, immutable predictor for one of the seven kinds."""

    kind: str
    k: int
    column_names: Optional[Tuple[str, ...]] = None
    score_functions: Optional[Tuple[ScoreFunction, ...]] = None
    weights: Optional[np.ndarray] = None
    weight_parts: Optional[WeightVector] = None
    train_n: Optional[int] = None
    solver_objective: Optional[float] = None
    solver_iterations: Optional[int] = None
    solver_converged: Optional[bool] = None


def _fit_weighted_state(
    d: Dataset, *, dominance_cap: int, seed: int, exact_dominance: bool
) -> Tuple[Tuple[ScoreFunction, ...], WeightVector]:
    """Shared scoring + weight learning for WSM and WPM (inputs only)."""
    unsupervised = d.without_response()
    matrix = fit_score_matrix(unsupervised)
    parts = learn_weights(
        matrix, dominance_cap=dominance_cap, seed=seed, exact_dominance=exact_dominance
    )
    return matrix.functions, parts


def fit_model(
    kind: str,
    d: Dataset,
    *,
    dominance_cap: int = 20_000,
    seed: int = 0,
    exact_dominance: bool = False,
) -> AggregationModel:
    """Fit one approach on an already-scaled dataset.

    Only REG reads the response; every other kind is fitted through a
    response-stripped view, so two datasets differing only in the response
    yield identical models.
    """
    kind = kind.lower()
    if kind not in KINDS:
        raise ValueError(f"unknown aggregation kind {kind!r}; expected one of {KINDS}")
    if kind in BASIC_KINDS:
        return AggregationModel(kind=kind, k=d.k, column_names=d.column_names, train_n=d.n)
    if kind in ("wsm", "wpm"):
        functions, parts = _fit_weighted_state(
            d, dominance_cap=dominance_cap, seed=seed, exact_dominance=exact_dominance
        )
        return AggregationModel(
            kind=kind,
            k=d.k,
            column_names=d.column_names,
            score_functions=functions,
            weights=parts.weights,
            weight_parts=parts,
            train_n=d.n,
        )
    # reg
    if d.response is None:
        raise MissingResponseError("REG needs a dataset with a response column")
    result = solve_simplex_ls(SimplexLsProblem(X=d.inputs, y=d.response))
    if not result.converged:
        log.warning("REG solver hit the iteration cap; returning the last feasible point")
    return AggregationModel(
        kind="reg",
        k=d.k,
        column_names=d.column_names,
        weights=result.weights,
        train_n=d.n,
        solver_objective=result.objective,
        solver_iterations=result.iterations,
        solver_converged=result.converged,
    )


def _score_rows(model: AggregationModel, rows: np.ndarray) -> np.ndarray:
    columns = [f.apply(rows[:, i]) for i, f in enumerate(model.score_functions)]
    return np.column_stack(columns)


def predict_matrix(model: AggregationModel, rows: np.ndarray) -> np.ndarray:
    """Aggregate every row of an n x k matrix; deterministic and reentrant."""
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != model.k:
        raise ArityMismatchError(
            f"model expects rows of width {model.k}, got shape {rows.shape}"
        )
    if not np.all(np.isfinite(rows)):
        raise NonFiniteInputError("prediction inputs must be finite")
    kind = model.kind
    if kind in BASIC_KINDS or kind == "reg":
        if rows.size and (rows.min() < 0.0 or rows.max() > 1.0):
            _warn_out_of_range(kind)
    if kind == "prod":
        return np.prod(rows, axis=1)
    if kind == "min":
        return rows.min(axis=1)
    if kind == "max":
        return rows.max(axis=1)
    if kind == "sum":
        return np.sum(rows, axis=1)
    if kind == "reg":
        return np.sum(model.weights * rows, axis=1)
    scores = _score_rows(model, rows)
    if kind == "wsm":
        return np.sum(model.weights * scores, axis=1)
    # wpm: log-space product; clamping unseen zero scores to 1/(2n) keeps the
    # veto semantics for worst-ranked values while avoiding log(0)
    floors = np.array([1.0 / (2.0 * f.n) for f in model.score_functions])
    clamped = np.maximum(scores, floors)
    return np.exp(np.sum(model.weights * np.log(clamped), axis=1))


def predict_row(model: AggregationModel, row: np.ndarray) -> float:
    """Aggregate a single length-k tuple."""
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1 or row.size != model.k:
        raise ArityMismatchError(f"model expects rows of width {model.k}, got {row.shape}")
    return float(predict_matrix(model, row[None, :])[0])


def predict_all(model: AggregationModel, d: Dataset) -> np.ndarray:
    """Row-wise prediction over a dataset's inputs."""
    return predict_matrix(model, d.inputs)


def model_to_dict(model: AggregationModel) -> dict:
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": model.kind,
        "k": model.k,
        "column_names": list(model.column_names) if model.column_names else None,
        "train_n": model.train_n,
        "weights": model.weights.tolist() if model.weights is not None else None,
    }
    if model.weight_parts is not None:
        payload["weight_parts"] = {
            "entropy": model.weight_parts.entropy_parts.tolist(),
            "dependency": model.weight_parts.dependency_parts.tolist(),
        }
    if model.score_functions is not None:
        payload["score_functions"] = [
            {"direction": f.direction, "values": f.sorted_values.tolist()}
            for f in model.score_functions
        ]
    if model.kind == "reg":
        payload["solver"] = {
            "objective": model.solver_objective,
            "iterations": model.solver_iterations,
            "converged": model.solver_converged,
        }
    return payload


def model_from_dict(payload: dict) -> AggregationModel:
    if payload.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not an aggbench model file")
    if payload.get("version") != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {payload.get('version')!r}")
    kind = payload["kind"]
    score_functions = None
    if payload.get("score_functions") is not None:
        functions = []
        for entry in payload["score_functions"]:
            values = np.asarray(entry["values"], dtype=np.float64)
            values.flags.writeable = False
            functions.append(ScoreFunction(sorted_values=values, direction=entry["direction"]))
        score_functions = tuple(functions)
    weights = None
    if payload.get("weights") is not None:
        weights = np.asarray(payload["weights"], dtype=np.float64)
        weights.flags.writeable = False
    weight_parts = None
    if payload.get("weight_parts") is not None:
        weight_parts = WeightVector(
            weights=weights,
            entropy_parts=np.asarray(payload["weight_parts"]["entropy"], dtype=np.float64),
            dependency_parts=np.asarray(payload["weight_parts"]["dependency"], dtype=np.float64),
        )
    solver_info = payload.get("solver") or {}
    return AggregationModel(
        kind=kind,
        k=int(payload["k"]),
        column_names=tuple(payload["column_names"]) if payload.get("column_names") else None,
        score_functions=score_functions,
        weights=weights,
        weight_parts=weight_parts,
        train_n=payload.get("train_n"),
        solver_objective=solver_info.get("objective"),
        solver_iterations=solver_info.get("iterations"),
        solver_converged=solver_info.get("converged"),
    )


def save_model(model: AggregationModel, path: Union[str, Path]) -> None:
    """Write the model as JSON; floats round-trip bit-exactly via repr."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=1)
        fh.write("\n")


def load_model(path: Union[str, Path]) -> AggregationModel:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError(f"{path}: model file must contain a JSON object")
    return model_from_dict(payload)
