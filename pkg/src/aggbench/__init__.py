"""aggbench: unsupervised aggregation models with a rank-based evaluation harness.

Seven approaches behind one fit/predict contract: the basic aggregation
functions (PROD, MIN, MAX, SUM), two approaches learned without labels
(WSM, WPM: empirical-CDF scores with entropy x dependency weights), and a
supervised simplex-constrained least-squares baseline (REG). A benchmark
harness evaluates all of them on CSV regression datasets with four
rank-based measures.
"""

__version__ = "0.1.0"

from aggbench.aggregate import (
    KINDS,
    AggregationModel,
    fit_model,
    load_model,
    predict_all,
    predict_matrix,
    predict_row,
    save_model,
)
from aggbench.bench import (
    BenchmarkConfig,
    EvaluationReport,
    SummaryTable,
    correlation_matrix,
    load_benchmark_config,
    run_benchmark,
    summarize,
    write_report_files,
)
from aggbench.ingest import Dataset, DatasetConfig, load_csv, load_scaled, minmax_scale
from aggbench.metrics import (
    kemeny_distance,
    kendall_tau_distance,
    sensitivity_ratio,
    spearman_rho,
)
from aggbench.scoring import ScoreFunction, ScoreMatrix, fit_score, fit_score_matrix
from aggbench.solver import SimplexLsProblem, SimplexLsResult, project_to_simplex, solve_simplex_ls
from aggbench.weights import WeightVector, dominance_rank, learn_weights

__all__ = [
    "KINDS",
    "AggregationModel",
    "BenchmarkConfig",
    "Dataset",
    "DatasetConfig",
    "EvaluationReport",
    "ScoreFunction",
    "ScoreMatrix",
    "SimplexLsProblem",
    "SimplexLsResult",
    "SummaryTable",
    "WeightVector",
    "correlation_matrix",
    "dominance_rank",
    "fit_model",
    "fit_score",
    "fit_score_matrix",
    "kemeny_distance",
    "kendall_tau_distance",
    "learn_weights",
    "load_benchmark_config",
    "load_csv",
    "load_model",
    "load_scaled",
    "minmax_scale",
    "predict_all",
    "predict_matrix",
    "predict_row",
    "project_to_simplex",
    "run_benchmark",
    "save_model",
    "sensitivity_ratio",
    "solve_simplex_ls",
    "spearman_rho",
    "summarize",
    "write_report_files",
]
