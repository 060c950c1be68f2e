import json
import math

import pytest

from pfgsynth.bench import (
    COLUMNS,
    ModelSpec,
    SuiteError,
    SuiteSpec,
    build_hamiltonian,
    default_workers,
    emit_report,
    fit_slope,
    run_instance,
    run_suite,
    run_sweep,
    summary_text,
    table_text,
)
from pfgsynth.models import save_hamiltonian

from .conftest import FIXTURE_TEXT


def small_suite(tmp_path) -> SuiteSpec:
    (tmp_path / "fx.ham").write_text(FIXTURE_TEXT)
    raw = {
        "models": [
            {"model": "fermi_hubbard", "sizes": [2, 3]},
            {"model": "bose_hubbard", "encoding": "gray", "d": 4, "sizes": [2]},
            {"model": "vibronic", "sizes": [2], "seed": 4},
            {"model": "file", "path": "fx.ham"},
        ]
    }
    return SuiteSpec.from_dict(raw, tmp_path)


def test_fit_slope():
    assert fit_slope([1, 2, 4, 8], [3, 12, 48, 192]) == pytest.approx(2)
    assert math.isnan(fit_slope([2], [3]))
    assert math.isnan(fit_slope([2, 2], [3, 4]))


@pytest.mark.parametrize(
    "raw",
    [
        {},
        {"models": []},
        {"models": 3},
        {"models": [{"sizes": [2]}]},
        {"models": [{"model": "ising", "sizes": [2]}]},
        {"models": [{"model": "vibronic"}]},
        {"models": [{"model": "vibronic", "sizes": ["x"]}]},
        {"models": [{"model": "file"}]},
        {"models": [{"model": "vibronic", "sizes": [2], "colour": 1}]},
        {"models": [{"model": "vibronic", "sizes": [2]}], "methods": ["qiskit"]},
        {"models": [{"model": "vibronic", "sizes": [2]}], "credit": "lots"},
        {"models": [{"model": "vibronic", "sizes": [2]}], "extra": 1},
    ],
)
def test_invalid_suites(raw):
    with pytest.raises(SuiteError):
        SuiteSpec.from_dict(raw)


def test_invalid_json(tmp_path):
    p = tmp_path / "s.json"
    p.write_text("{not json")
    with pytest.raises(SuiteError):
        SuiteSpec.load(p)


def test_labels():
    assert ModelSpec("fermi_hubbard", (2,), mapping="bk").label == "fh-bk"
    assert ModelSpec("vibronic", (2,), encoding="gray", d=8).label == "vib-gray-d8"


def test_file_path_relative_to_suite(tmp_path):
    suite = small_suite(tmp_path)
    spec = suite.models[-1]
    assert build_hamiltonian(spec, 0).n_qubits == 4


def test_run_instance_records_errors(tmp_path):
    spec = ModelSpec("file", path=str(tmp_path / "missing.ham"))
    row = run_instance(spec, 0, "pfg", SuiteSpec((spec,)))
    assert row.error.startswith("FileNotFoundError")


def test_run_instance_verifies(tmp_path):
    spec = ModelSpec("fermi_hubbard", (2,))
    suite = SuiteSpec((spec,))
    for method in ("pfg", "baseline"):
        row = run_instance(spec, 2, method, suite)
        assert row.verified == "pass" and row.n_qubits == 4 and row.n_terms == 10
        assert row.cpu_time >= 0 and row.wall_time > 0


def test_verification_size_cap():
    spec = ModelSpec("fermi_hubbard", (3,))
    row = run_instance(spec, 3, "pfg", SuiteSpec((spec,), verify_max_qubits=4))
    assert row.verified == "skipped"


def test_report(tmp_path):
    suite = small_suite(tmp_path)
    rows = run_suite(suite, workers=1)
    assert len(rows) == 2 * 5
    table, summary = emit_report(rows, tmp_path / "out")
    lines = table.read_text().splitlines()
    assert lines[0].split(",") == list(COLUMNS)
    assert len(lines) == 11
    text = summary.read_text()
    assert "# failures: 0" in text and "fh-jw pfg" in text
    assert "wall_time" not in table_text(rows, include_timing=False)


def test_summary_lists_failures():
    spec = ModelSpec("file", path="/nonexistent.ham")
    rows = run_sweep(spec, ["pfg"], SuiteSpec((spec,)))
    assert "# failures: 1" in summary_text(rows)


def test_workers_do_not_change_results(tmp_path):
    suite = small_suite(tmp_path)
    one = table_text(run_suite(suite, workers=1), include_timing=False)
    two = table_text(run_suite(suite, workers=2), include_timing=False)
    assert one == two


def test_default_workers(monkeypatch):
    monkeypatch.delenv("PFGSYNTH_WORKERS", raising=False)
    assert default_workers() == 1
    monkeypatch.setenv("PFGSYNTH_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("PFGSYNTH_WORKERS", "many")
    with pytest.raises(SuiteError):
        default_workers()


def test_load_from_file(tmp_path):
    h_path = tmp_path / "h.ham"
    from pfgsynth.models import fermi_hubbard

    save_hamiltonian(fermi_hubbard(2), h_path)
    (tmp_path / "suite.json").write_text(json.dumps({"models": [{"model": "file", "path": "h.ham"}], "methods": ["pfg"]}))
    suite = SuiteSpec.load(tmp_path / "suite.json")
    assert suite.methods == ("pfg",) and suite.time_limit == 10.0
