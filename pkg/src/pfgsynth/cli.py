"""Command-line entry point: ``pfgsynth {gen,synth,verify,bench}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
input-format error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baseline import CancelConfig, synth_baseline
from .circuit import CircuitParseError, export_text, import_text
from .frame import frame_of_circuit
from .models import bose_hubbard, fermi_hubbard, vibronic
from .models.hamiltonian import HamiltonianParseError, load_hamiltonian, save_hamiltonian
from .pauli import parse_pauli
from .pfg import SynthConfig, synth
from .verify import PATH_CHECK_QUBITS, check_path_equivalence

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pfgsynth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a model Hamiltonian file")
    g.add_argument("--model", required=True, choices=["fermi-hubbard", "bose-hubbard", "vibronic"])
    g.add_argument("--sites", type=int, default=2)
    g.add_argument("--modes", type=int, default=2)
    g.add_argument("--levels", type=int, default=4, help="bosonic cutoff d (power of two)")
    g.add_argument("--mapping", choices=["jw", "bk"], help="fermion mapping (fermi-hubbard only)")
    g.add_argument("--encoding", choices=["std", "gray"], help="boson encoding")
    g.add_argument("--t", type=float, default=1.0)
    g.add_argument("--u", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--open", action="store_true", help="open chain (fermi-hubbard)")
    g.add_argument("-o", "--output", required=True)

    s = sub.add_parser("synth", help="synthesize a Trotter-step circuit")
    s.add_argument("input")
    s.add_argument("--method", choices=["pfg", "staircase"], default="pfg")
    s.add_argument("--credit", type=float, default=0.1)
    s.add_argument("--dt", type=float, default=1.0)
    s.add_argument("--tie-break", choices=["spread", "lex"], default="spread")
    s.add_argument("--retrace", action="store_true")
    s.add_argument("--close-cycle", action="store_true")
    s.add_argument("--expand-tqe", action="store_true", help="write TQE gates as H/P around CX")
    s.add_argument("--time-limit", type=float, default=60.0, help="staircase cancellation budget (s)")
    s.add_argument("-o", "--output", required=True, help="circuit file")
    s.add_argument("--metrics", help="metrics CSV (default: stdout)")
    s.add_argument("--manifest", help="rotation manifest (default: <output>.rot)")

    v = sub.add_parser("verify", help="dense check of a circuit against its rotation manifest")
    v.add_argument("hamiltonian")
    v.add_argument("circuit")
    v.add_argument("manifest")
    v.add_argument("--tol", type=float, default=1e-9)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("suite")
    b.add_argument("-o", "--output", required=True, help="output directory")
    b.add_argument("--workers", type=int, help="process count (default: $PFGSYNTH_WORKERS or 1)")
    return p


def _cmd_gen(a) -> int:
    if a.model == "fermi-hubbard":
        if a.encoding:
            raise UsageError("--encoding applies to bosonic models only")
        h = fermi_hubbard(a.sites, a.t, 4.0 if a.u is None else a.u, a.mapping or "jw", not a.open)
    else:
        if a.mapping:
            raise UsageError("--mapping applies to fermi-hubbard only")
        d = a.levels
        if d < 2 or d & (d - 1):
            raise UsageError(f"--levels must be a power of two, got {d}")
        enc = a.encoding or "std"
        if a.model == "bose-hubbard":
            h = bose_hubbard(a.sites, a.t, 1.0 if a.u is None else a.u, d, enc)
        else:
            h = vibronic(a.modes, d, enc, a.seed)
    try:
        save_hamiltonian(h, a.output)
    except OSError as exc:
        raise InputError(str(exc)) from None
    print(f"n_qubits={h.n_qubits} n_terms={len(h)}")
    return EXIT_OK


def _read_hamiltonian(path):
    try:
        return load_hamiltonian(path)
    except (OSError, HamiltonianParseError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(str(exc)) from None


def manifest_text(rotations) -> str:
    lines = ["# term_id angle pauli"]
    lines += [f"{r.term_id} {float(r.angle)!r} {r.pauli.label()}" for r in rotations]
    return "\n".join(lines) + "\n"


def parse_manifest(text: str, n_qubits: int) -> list[tuple[int, object, float]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"manifest line {lineno}: expected 'term_id angle pauli'")
        try:
            sp = parse_pauli(parts[2], n_qubits)
            out.append((int(parts[0]), sp.pauli, float(parts[1])))
        except ValueError as exc:
            raise InputError(f"manifest line {lineno}: {exc}") from None
    return out


def _cmd_synth(a) -> int:
    if a.retrace and a.close_cycle:
        raise UsageError("--retrace and --close-cycle are mutually exclusive")
    h = _read_hamiltonian(a.input)
    if len(h) == 0:
        raise InputError(f"{a.input}: Hamiltonian has no terms")
    if a.method == "pfg":
        res = synth(
            h,
            SynthConfig(credit=a.credit, close_cycle=a.close_cycle, retrace=a.retrace, dt=a.dt, tie_break=a.tie_break),
        )
    else:
        if a.retrace or a.close_cycle:
            raise UsageError("--retrace/--close-cycle apply to the pfg method only")
        res = synth_baseline(h, a.dt, CancelConfig(time_limit=a.time_limit))
    _write(a.output, export_text(res.circuit, expand=a.expand_tqe))
    _write(a.manifest or f"{a.output}.rot", manifest_text(res.rotations))
    if a.metrics:
        _write(a.metrics, res.metrics.to_csv())
    else:
        sys.stdout.write(res.metrics.to_csv())
    return EXIT_OK


def _cmd_verify(a) -> int:
    h = _read_hamiltonian(a.hamiltonian)
    try:
        circuit = import_text(Path(a.circuit).read_text())
        manifest = parse_manifest(Path(a.manifest).read_text(), h.n_qubits)
    except (OSError, CircuitParseError) as exc:
        raise InputError(str(exc)) from None
    if circuit.n_qubits != h.n_qubits:
        raise InputError("circuit and Hamiltonian qubit counts differ")
    if h.n_qubits > PATH_CHECK_QUBITS:
        raise UsageError(f"verification is limited to {PATH_CHECK_QUBITS} qubits")
    problems = []
    seen = set()
    for tid, pauli, _ in manifest:
        if not 0 <= tid < len(h) or h.terms[tid][1] != pauli:
            problems.append(f"manifest term {tid} does not match the Hamiltonian")
        seen.add(tid)
    if seen != set(range(len(h))):
        problems.append(f"manifest covers {len(seen)} of {len(h)} terms")
    rep = check_path_equivalence(circuit, [(p, ang) for _, p, ang in manifest], frame_of_circuit(circuit), a.tol)
    for msg in problems:
        print(msg)
    status = "pass" if rep.passed and not problems else "fail"
    print(f"{status} defect={rep.defect:.3e} max_entry_defect={rep.max_modulus_defect:.3e}")
    return EXIT_OK if status == "pass" else EXIT_VERIFY


def _cmd_bench(a) -> int:
    from .bench import SuiteError, SuiteSpec, default_workers, emit_report, run_suite

    try:
        suite = SuiteSpec.load(a.suite)
        workers = a.workers if a.workers is not None else default_workers()
    except OSError as exc:
        raise InputError(str(exc)) from None
    except SuiteError as exc:
        raise UsageError(str(exc)) from None
    if workers < 1:
        raise UsageError("--workers must be positive")
    rows = run_suite(suite, workers)
    try:
        table, summary = emit_report(rows, a.output)
    except OSError as exc:
        raise InputError(str(exc)) from None
    failed = sum(1 for r in rows if r.error or r.verified == "fail")
    print(f"{len(rows)} rows -> {table}; {failed} failed")
    return EXIT_VERIFY if any(r.verified == "fail" for r in rows) else EXIT_OK


_COMMANDS = {"gen": _cmd_gen, "synth": _cmd_synth, "verify": _cmd_verify, "bench": _cmd_bench}


def main(argv=None) -> int:
    parser = _parser()
    a = parser.parse_args(argv)
    try:
        return _COMMANDS[a.command](a)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pfgsynth {a.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"pfgsynth {a.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"pfgsynth {a.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
