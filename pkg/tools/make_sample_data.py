#!/usr/bin/env python3
"""Regenerate the bundled sample datasets (seeded; outputs are committed).

The samples are synthetic, CC0, and small enough that `aggbench bench`
runs out of the box. Between them they exercise every ingestion path:
dropped id columns, a non-numeric column, missing-value markers, a
semicolon delimiter, and tie-heavy discretized inputs.
"""

import json
from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "aggbench" / "data"


def write_csv(name: str, header, rows, delimiter=","):
    path = DATA_DIR / name
    lines = [delimiter.join(header)]
    lines += [delimiter.join(str(c) for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(rows)} rows)")


def correlated_inputs(rng, n, k, loading=0.6):
    """Columns sharing a latent factor, like typical co-varying measurements."""
    u = rng.uniform(0, 1, n)
    return np.column_stack(
        [loading * u + (1 - loading) * rng.uniform(0, 1, n) for _ in range(k)]
    )


def linear_blend(rng):
    """y is a noisy weighted sum; includes an id column that configs drop."""
    n = 120
    x = correlated_inputs(rng, n, 4) ** np.array([5.0, 0.2, 2.0, 1.0])
    x = (10 * x).round(4)
    y = (0.4 * x[:, 0] + 0.3 * x[:, 1] + 0.2 * x[:, 2] + 0.1 * x[:, 3]
         + rng.normal(0, 0.15, n)).round(4)
    rows = [[i + 1, *x[i], y[i]] for i in range(n)]
    write_csv("linear_blend.csv", ["id", "x1", "x2", "x3", "x4", "y"], rows)


def monotone_curve(rng):
    """y is a monotone transform of a blend; has a text column and missing cells."""
    n = 150
    x = (correlated_inputs(rng, n, 3) ** np.array([4.0, 0.25, 1.0])).round(5)
    z = 0.5 * x[:, 0] + 0.3 * x[:, 1] + 0.2 * x[:, 2]
    y = (10 * z ** 2 + rng.normal(0, 0.05, n)).round(5)
    grades = rng.choice(["low", "mid", "high"], size=n)
    rows = []
    for i in range(n):
        row = [x[i, 0], x[i, 1], x[i, 2], grades[i], y[i]]
        rows.append(row)
    # sprinkle missing markers into a few input/response cells
    rows[7][0] = "NA"
    rows[23][1] = "?"
    rows[41][4] = ""
    rows[88][2] = "NaN"
    write_csv("monotone_curve.csv", ["a", "b", "c", "grade", "response"], rows)


def shortfall(rng):
    """y tracks the row minimum; semicolon-delimited."""
    n = 100
    x = (5 * correlated_inputs(rng, n, 3, loading=0.4)).round(4)
    y = (x.min(axis=1) + rng.normal(0, 0.1, n)).round(4)
    rows = [[*x[i], y[i]] for i in range(n)]
    write_csv("shortfall.csv", ["u", "v", "w", "target"], rows, delimiter=";")


def tied_grid(rng):
    """Discretized inputs with heavy ties; y monotone in their sum."""
    n = 90
    x = np.round(correlated_inputs(rng, n, 4) * 5) / 5.0
    y = (x.sum(axis=1) + rng.normal(0, 0.08, n)).round(4)
    rows = [[*x[i], y[i]] for i in range(n)]
    write_csv("tied_grid.csv", ["p", "q", "r", "s", "y"], rows)


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20260412)
    linear_blend(rng)
    monotone_curve(rng)
    shortfall(rng)
    tied_grid(rng)
    config = {
        "seed": 0,
        "datasets": [
            {"id": "linear_blend", "path": "linear_blend.csv", "response": "y", "drop": ["id"]},
            {"id": "monotone_curve", "path": "monotone_curve.csv", "response": "response"},
            {"id": "shortfall", "path": "shortfall.csv", "response": "target", "delimiter": ";"},
            {"id": "tied_grid", "path": "tied_grid.csv", "response": "y"},
        ],
    }
    config_path = DATA_DIR / "sample_config.json"
    config_path.write_text(json.dumps(config, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {config_path}")


if __name__ == "__main__":
    main()
