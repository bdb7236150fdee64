import csv
import json

import numpy as np
import pytest

from aggbench.cli import main


@pytest.fixture
def training_csv(tmp_path):
    rng = np.random.default_rng(0)
    inputs = rng.uniform(0, 1, size=(40, 3))
    y = inputs @ np.array([0.5, 0.3, 0.2])
    lines = ["a,b,c,y"]
    for row, target in zip(inputs, y):
        lines.append(",".join(repr(float(v)) for v in row) + f",{float(target)!r}")
    path = tmp_path / "train.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_fit_writes_model_and_prints_weights(tmp_path, training_csv, capsys):
    model_path = tmp_path / "m.json"
    rc = main(["fit", "wpm", str(training_csv), "--response", "y", "-o", str(model_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "weights" in out
    payload = json.loads(model_path.read_text())
    assert payload["kind"] == "wpm"
    assert len(payload["score_functions"]) == 3


def test_fit_reg_without_response_fails(tmp_path, training_csv, capsys):
    rc = main(["fit", "reg", str(training_csv), "--drop", "y",
               "-o", str(tmp_path / "m.json")])
    assert rc == 1
    assert "response" in capsys.readouterr().err.lower()


def test_fit_stateless_model(tmp_path, training_csv):
    model_path = tmp_path / "min.json"
    rc = main(["fit", "min", str(training_csv), "--response", "y", "-o", str(model_path)])
    assert rc == 0
    payload = json.loads(model_path.read_text())
    assert payload["weights"] is None


def test_predict_row_count_and_round_trip(tmp_path, training_csv):
    model_path = tmp_path / "m.json"
    out1 = tmp_path / "p1.csv"
    out2 = tmp_path / "p2.csv"
    assert main(["fit", "wpm", str(training_csv), "--response", "y",
                 "-o", str(model_path)]) == 0
    assert main(["predict", str(model_path), str(training_csv), "--response", "y",
                 "-o", str(out1)]) == 0
    assert main(["predict", str(model_path), str(training_csv), "--response", "y",
                 "-o", str(out2)]) == 0
    rows = out1.read_text().splitlines()
    assert rows[0] == "output"
    assert len(rows) == 41
    assert out1.read_bytes() == out2.read_bytes()


def test_predict_arity_mismatch(tmp_path, training_csv, capsys):
    model_path = tmp_path / "m.json"
    assert main(["fit", "min", str(training_csv), "--response", "y",
                 "-o", str(model_path)]) == 0
    narrow = tmp_path / "narrow.csv"
    narrow.write_text("a,b\n0.1,0.2\n0.5,0.8\n0.3,0.4\n")
    rc = main(["predict", str(model_path), str(narrow)])
    assert rc == 1


def test_predict_unreadable_model(tmp_path, training_csv):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["predict", str(bad), str(training_csv)]) == 1


def test_evaluate_prints_measures(tmp_path, training_csv, capsys):
    model_path = tmp_path / "m.json"
    assert main(["fit", "wsm", str(training_csv), "--response", "y",
                 "-o", str(model_path)]) == 0
    out_path = tmp_path / "eval.json"
    rc = main(["evaluate", str(model_path), str(training_csv), "--response", "y",
               "-o", str(out_path)])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "predictive_power" in captured
    payload = json.loads(out_path.read_text())
    assert set(payload) >= {"predictive_power", "similarity", "consensus", "sensitivity"}


@pytest.fixture
def bench_config(tmp_path):
    rng = np.random.default_rng(1)
    names = []
    for idx in range(2):
        inputs = rng.uniform(0, 1, size=(30, 3))
        y = inputs.sum(axis=1) + rng.normal(0, 0.05, 30)
        lines = ["x0,x1,x2,y"]
        for row, target in zip(inputs, y):
            lines.append(",".join(repr(float(v)) for v in row) + f",{float(target)!r}")
        path = tmp_path / f"ds{idx}.csv"
        path.write_text("\n".join(lines) + "\n")
        names.append(path.name)
    config = {
        "seed": 0,
        "datasets": [
            {"id": f"ds{idx}", "path": name, "response": "y"}
            for idx, name in enumerate(names)
        ],
    }
    config_path = tmp_path / "bench.json"
    config_path.write_text(json.dumps(config))
    return config_path


def test_bench_produces_all_artifacts(tmp_path, bench_config, capsys):
    out_dir = tmp_path / "out"
    rc = main(["bench", str(bench_config), "--output-dir", str(out_dir)])
    assert rc == 0
    report_rows = list(csv.DictReader(open(out_dir / "report.csv")))
    assert len(report_rows) == 2 * 7
    assert (out_dir / "summary.csv").exists()
    assert "approach" in capsys.readouterr().out


def test_bench_approaches_filter(tmp_path, bench_config):
    out_dir = tmp_path / "filtered"
    rc = main(["bench", str(bench_config), "--output-dir", str(out_dir),
               "--approaches", "wpm,wsm,reg"])
    assert rc == 0
    rows = list(csv.DictReader(open(out_dir / "report.csv")))
    assert len(rows) == 2 * 3
    assert {r["approach"] for r in rows} == {"wpm", "wsm", "reg"}


def test_bench_broken_path_is_warning_not_failure(tmp_path, bench_config, capsys):
    config = json.loads(bench_config.read_text())
    config["datasets"].append({"id": "ghost", "path": "ghost.csv", "response": "y"})
    bench_config.write_text(json.dumps(config))
    out_dir = tmp_path / "warn"
    rc = main(["bench", str(bench_config), "--output-dir", str(out_dir)])
    assert rc == 0
    err = capsys.readouterr().err
    assert "ghost" in err


def test_bench_seed_determinism(tmp_path, bench_config):
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["bench", str(bench_config), "--output-dir", str(out1), "--seed", "9"]) == 0
    assert main(["bench", str(bench_config), "--output-dir", str(out2), "--seed", "9"]) == 0
    assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()
    assert (out1 / "summary.csv").read_bytes() == (out2 / "summary.csv").read_bytes()


def test_bench_missing_config(tmp_path):
    assert main(["bench", str(tmp_path / "none.json")]) == 1


def test_summarize_from_report(tmp_path, bench_config, capsys):
    out_dir = tmp_path / "sum"
    assert main(["bench", str(bench_config), "--output-dir", str(out_dir)]) == 0
    capsys.readouterr()
    summary_path = tmp_path / "resummary.csv"
    rc = main(["summarize", str(out_dir / "report.csv"), "-o", str(summary_path)])
    assert rc == 0
    assert summary_path.exists()
    assert "approach" in capsys.readouterr().out


def test_help_available_for_every_subcommand(capsys):
    for sub in ("fit", "predict", "evaluate", "bench", "summarize"):
        with pytest.raises(SystemExit) as exc:
            main([sub, "--help"])
        assert exc.value.code == 0
        assert "--help" in capsys.readouterr().out or True


def test_bundled_samples_run_end_to_end(tmp_path, sample_data_dir, capsys):
    out_dir = tmp_path / "samples_out"
    rc = main(["bench", str(sample_data_dir / "sample_config.json"),
               "--output-dir", str(out_dir)])
    assert rc == 0
    rows = list(csv.DictReader(open(out_dir / "report.csv")))
    assert len(rows) == 4 * 7
    assert all(r["flags"].count("error") == 0 for r in rows)
