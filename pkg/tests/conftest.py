import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")

SAMPLE_DATA = Path(__file__).resolve().parent.parent / "src" / "aggbench" / "data"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance" in report.nodeid:
                lines.append((report.nodeid.split("::")[-1], outcome.upper()))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{name}: {outcome}")


@pytest.fixture(autouse=True)
def _reset_range_warning():
    from aggbench.aggregate import reset_range_warning

    reset_range_warning()
    yield


@pytest.fixture
def sample_data_dir() -> Path:
    return SAMPLE_DATA


@pytest.fixture
def write_csv(tmp_path):
    """Write CSV text (dedented, stripped) to a temp file and return its path."""

    counter = {"n": 0}

    def _write(text: str, name: str = None) -> Path:
        counter["n"] += 1
        path = tmp_path / (name or f"data{counter['n']}.csv")
        lines = [ln.strip() for ln in text.strip().splitlines()]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
