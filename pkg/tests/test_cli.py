import json
import subprocess
import sys

import pytest

from pfgsynth.circuit import import_text
from pfgsynth.cli import main, parse_manifest
from pfgsynth.models import load_hamiltonian

from .conftest import FIXTURE_TEXT


@pytest.fixture
def fixture_file(tmp_path):
    p = tmp_path / "fx.ham"
    p.write_text(FIXTURE_TEXT)
    return p


def test_gen_models(tmp_path, capsys):
    out = tmp_path / "h.ham"
    assert main(["gen", "--model", "fermi-hubbard", "--sites", "3", "--mapping", "bk", "-o", str(out)]) == 0
    assert "n_qubits=6" in capsys.readouterr().out
    assert load_hamiltonian(out).n_qubits == 6
    assert main(["gen", "--model", "bose-hubbard", "--sites", "2", "--levels", "8", "--encoding", "gray", "-o", str(out)]) == 0
    assert load_hamiltonian(out).n_qubits == 6
    assert main(["gen", "--model", "vibronic", "--modes", "3", "--seed", "2", "-o", str(out)]) == 0
    assert load_hamiltonian(out).n_qubits == 6


def test_gen_seeded_output_is_reproducible(tmp_path):
    a, b = tmp_path / "a.ham", tmp_path / "b.ham"
    for p in (a, b):
        main(["gen", "--model", "vibronic", "--modes", "3", "--seed", "9", "--encoding", "gray", "-o", str(p)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--model", "fermi-hubbard", "--encoding", "gray"],
        ["gen", "--model", "bose-hubbard", "--levels", "3"],
        ["gen", "--model", "vibronic", "--mapping", "jw"],
        ["gen", "--model", "fermi-hubbard", "--sites", "1"],
    ],
)
def test_gen_usage_errors(tmp_path, argv):
    assert main(argv + ["-o", str(tmp_path / "x")]) == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["synth"])
    assert err.value.code == 2


def test_synth_and_verify_round_trip(tmp_path, fixture_file, capsys):
    circ = tmp_path / "fx.circ"
    metrics = tmp_path / "m.csv"
    assert main(["synth", str(fixture_file), "--close-cycle", "-o", str(circ), "--metrics", str(metrics)]) == 0
    header, values = metrics.read_text().splitlines()
    row = dict(zip(header.split(","), values.split(",")))
    assert int(row["tqe_count"]) <= 8
    assert main(["verify", str(fixture_file), str(circ), f"{circ}.rot"]) == 0
    assert capsys.readouterr().out.startswith("pass")


def test_verify_detects_corruption(tmp_path, fixture_file, capsys):
    circ = tmp_path / "fx.circ"
    main(["synth", str(fixture_file), "-o", str(circ), "--metrics", str(tmp_path / "m.csv")])
    lines = circ.read_text().splitlines()
    k = next(i for i, line in enumerate(lines) if line.startswith("RZ"))
    parts = lines[k].split()
    parts[2] = repr(float(parts[2]) + 0.1)
    lines[k] = " ".join(parts)
    circ.write_text("\n".join(lines) + "\n")
    assert main(["verify", str(fixture_file), str(circ), f"{circ}.rot"]) == 1
    assert capsys.readouterr().out.startswith("fail")


def test_verify_detects_manifest_mismatch(tmp_path, fixture_file):
    circ = tmp_path / "fx.circ"
    main(["synth", str(fixture_file), "-o", str(circ), "--metrics", str(tmp_path / "m.csv")])
    rot = (tmp_path / "fx.circ.rot").read_text().splitlines()
    (tmp_path / "short.rot").write_text("\n".join(rot[:-1]) + "\n")
    assert main(["verify", str(fixture_file), str(circ), str(tmp_path / "short.rot")]) == 1


@pytest.mark.parametrize("extra", [["--retrace"], ["--expand-tqe"], ["--method", "staircase"], ["--credit", "0", "--tie-break", "lex"]])
def test_synth_modes_verify(tmp_path, fixture_file, extra):
    circ = tmp_path / "c.circ"
    assert main(["synth", str(fixture_file), "-o", str(circ), "--metrics", str(tmp_path / "m.csv")] + extra) == 0
    assert main(["verify", str(fixture_file), str(circ), f"{circ}.rot"]) == 0


def test_expanded_circuit_uses_standard_gates(tmp_path, fixture_file):
    circ = tmp_path / "c.circ"
    main(["synth", str(fixture_file), "--expand-tqe", "-o", str(circ), "--metrics", str(tmp_path / "m.csv")])
    kinds = {g.kind for g in import_text(circ.read_text()).gates}
    assert kinds <= {"CX", "H", "P", "PDG", "X", "Y", "Z", "RX", "RY", "RZ"}


def test_staircase_not_better_than_pfg(tmp_path, fixture_file):
    rows = {}
    for method, extra in (("pfg", ["--close-cycle"]), ("staircase", [])):
        m = tmp_path / f"{method}.csv"
        main(["synth", str(fixture_file), "--method", method, "-o", str(tmp_path / "c"), "--metrics", str(m)] + extra)
        header, values = m.read_text().splitlines()
        rows[method] = int(dict(zip(header.split(","), values.split(",")))["tqe_count"])
    assert rows["staircase"] >= rows["pfg"]


def test_synth_errors(tmp_path, fixture_file):
    out = str(tmp_path / "c")
    assert main(["synth", str(fixture_file), "--retrace", "--close-cycle", "-o", out]) == 2
    assert main(["synth", str(fixture_file), "--method", "staircase", "--retrace", "-o", out]) == 2
    assert main(["synth", str(tmp_path / "missing.ham"), "-o", out]) == 3
    bad = tmp_path / "bad.ham"
    bad.write_text("qubits 2\n0.1 XQ\n")
    assert main(["synth", str(bad), "-o", out]) == 3
    assert main(["synth", str(fixture_file), "-o", str(tmp_path / "no" / "dir" / "c")]) == 3


def test_verify_size_cap(tmp_path):
    h = tmp_path / "big.ham"
    main(["gen", "--model", "fermi-hubbard", "--sites", "6", "-o", str(h)])
    circ = tmp_path / "c"
    main(["synth", str(h), "-o", str(circ), "--metrics", str(tmp_path / "m.csv")])
    assert main(["verify", str(h), str(circ), f"{circ}.rot"]) == 2


def test_manifest_parse_errors():
    from pfgsynth.cli import InputError

    with pytest.raises(InputError):
        parse_manifest("0 0.1\n", 2)
    with pytest.raises(InputError):
        parse_manifest("0 abc XX\n", 2)
    assert parse_manifest("# c\n3 0.5 XZ\n", 2)[0][0] == 3


def test_bench_command(tmp_path, capsys):
    suite = tmp_path / "s.json"
    suite.write_text(json.dumps({"models": [{"model": "fermi_hubbard", "sizes": [2]}]}))
    assert main(["bench", str(suite), "-o", str(tmp_path / "out"), "--workers", "1"]) == 0
    assert (tmp_path / "out" / "results.csv").exists() and (tmp_path / "out" / "summary.txt").exists()
    bad = tmp_path / "bad.json"
    bad.write_text('{"models": 3}')
    assert main(["bench", str(bad), "-o", str(tmp_path / "o2")]) == 2
    assert main(["bench", str(tmp_path / "missing.json"), "-o", str(tmp_path / "o3")]) == 3
    assert main(["bench", str(suite), "-o", str(tmp_path / "o4"), "--workers", "0"]) == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "pfgsynth.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "synth" in out.stdout
