"""Size sweeps over the model generators for both synthesizers.

A suite is a JSON object::

    {"methods": ["pfg", "baseline"], "credit": 0.1, "dt": 1.0,
     "time_limit": 10, "verify_max_qubits": 10,
     "models": [{"model": "fermi_hubbard", "mapping": "jw", "sizes": [2, 4, 6]},
                {"model": "bose_hubbard", "encoding": "gray", "d": 4, "sizes": [2, 4]},
                {"model": "vibronic", "encoding": "std", "d": 4, "sizes": [2, 3], "seed": 7},
                {"model": "file", "path": "h.ham"}]}
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .baseline import CancelConfig, synth_baseline
from .circuit import export_text
from .frame import frame_of_circuit
from .models import bose_hubbard, fermi_hubbard, load_hamiltonian, vibronic
from .models.hamiltonian import PauliSumHamiltonian
from .pfg import SynthConfig, synth
from .verify import PATH_CHECK_QUBITS, check_path_equivalence

__all__ = [
    "COLUMNS",
    "TIMING_COLUMNS",
    "ModelSpec",
    "SuiteSpec",
    "BenchRow",
    "SuiteError",
    "build_hamiltonian",
    "run_instance",
    "run_sweep",
    "run_suite",
    "emit_report",
    "table_text",
    "summary_text",
    "fit_slope",
    "default_workers",
]

COLUMNS = (
    "model",
    "label",
    "size",
    "method",
    "n_qubits",
    "n_terms",
    "tqe_count",
    "tqe_per_term",
    "depth_all",
    "depth_tqe",
    "rotation_count",
    "circuit_digest",
    "wall_time",
    "cpu_time",
    "verified",
    "error",
)
TIMING_COLUMNS = ("wall_time", "cpu_time")
METHODS = ("pfg", "baseline")
MODELS = ("fermi_hubbard", "bose_hubbard", "vibronic", "file")


class SuiteError(ValueError):
    """Malformed suite specification."""


def default_workers() -> int:
    raw = os.environ.get("PFGSYNTH_WORKERS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise SuiteError(f"PFGSYNTH_WORKERS must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class ModelSpec:
    model: str
    sizes: tuple[int, ...] = ()
    mapping: str = "jw"
    encoding: str = "std"
    d: int = 4
    seed: int = 0
    t: float = 1.0
    u: float = 4.0
    path: str | None = None

    @property
    def label(self) -> str:
        if self.model == "fermi_hubbard":
            return f"fh-{self.mapping}"
        if self.model in ("bose_hubbard", "vibronic"):
            short = "bh" if self.model == "bose_hubbard" else "vib"
            return f"{short}-{self.encoding}-d{self.d}"
        return f"file-{Path(self.path).stem}"

    @classmethod
    def from_dict(cls, raw: dict) -> ModelSpec:
        if not isinstance(raw, dict) or "model" not in raw:
            raise SuiteError("each model entry needs a 'model' key")
        unknown = set(raw) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise SuiteError(f"unknown model keys {sorted(unknown)}")
        if raw["model"] not in MODELS:
            raise SuiteError(f"unknown model {raw['model']!r}")
        kw = dict(raw)
        try:
            kw["sizes"] = tuple(int(s) for s in kw.get("sizes", ()))
        except (TypeError, ValueError):
            raise SuiteError("'sizes' must be a list of integers") from None
        spec = cls(**kw)
        if spec.model == "file":
            if not spec.path:
                raise SuiteError("file model needs 'path'")
        elif not spec.sizes:
            raise SuiteError(f"model {spec.model} needs a non-empty 'sizes' list")
        return spec

    def instance_sizes(self) -> tuple[int, ...]:
        return (0,) if self.model == "file" else self.sizes


@dataclass(frozen=True)
class SuiteSpec:
    models: tuple[ModelSpec, ...]
    methods: tuple[str, ...] = METHODS
    credit: float = 0.1
    dt: float = 1.0
    time_limit: float = 10.0
    verify_max_qubits: int = PATH_CHECK_QUBITS

    @classmethod
    def from_dict(cls, raw: dict, base_dir: Path | None = None) -> SuiteSpec:
        if not isinstance(raw, dict) or not isinstance(raw.get("models"), list) or not raw["models"]:
            raise SuiteError("suite needs a non-empty 'models' list")
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise SuiteError(f"unknown suite keys {sorted(unknown)}")
        models = []
        for m in raw["models"]:
            spec = ModelSpec.from_dict(m)
            if spec.model == "file" and base_dir is not None and not Path(spec.path).is_absolute():
                spec = ModelSpec(**{**asdict(spec), "path": str(base_dir / spec.path)})
            models.append(spec)
        methods = tuple(raw.get("methods", METHODS))
        bad = set(methods) - set(METHODS)
        if bad or not methods:
            raise SuiteError(f"methods must be drawn from {METHODS}")
        try:
            return cls(
                tuple(models),
                methods,
                float(raw.get("credit", 0.1)),
                float(raw.get("dt", 1.0)),
                float(raw.get("time_limit", 10.0)),
                int(raw.get("verify_max_qubits", PATH_CHECK_QUBITS)),
            )
        except (TypeError, ValueError) as exc:
            raise SuiteError(str(exc)) from None

    @classmethod
    def load(cls, path: str | os.PathLike) -> SuiteSpec:
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise SuiteError(f"suite file is not valid JSON: {exc}") from None
        return cls.from_dict(raw, Path(path).parent)


@dataclass
class BenchRow:
    model: str
    label: str
    size: int
    method: str
    n_qubits: int = 0
    n_terms: int = 0
    tqe_count: int = 0
    tqe_per_term: float = 0.0
    depth_all: int = 0
    depth_tqe: int = 0
    rotation_count: int = 0
    circuit_digest: str = ""
    wall_time: float = 0.0
    cpu_time: float = 0.0
    verified: str = "skipped"
    error: str = ""
    extra: dict = field(default_factory=dict, repr=False)

    def as_row(self) -> list[str]:
        out = []
        for c in COLUMNS:
            v = getattr(self, c)
            out.append(f"{v:.6g}" if c in TIMING_COLUMNS else (repr(v) if isinstance(v, float) else str(v)))
        return out


def build_hamiltonian(spec: ModelSpec, size: int) -> PauliSumHamiltonian:
    if spec.model == "fermi_hubbard":
        return fermi_hubbard(size, spec.t, spec.u, spec.mapping)
    if spec.model == "bose_hubbard":
        return bose_hubbard(size, spec.t, spec.u, spec.d, spec.encoding)
    if spec.model == "vibronic":
        return vibronic(size, spec.d, spec.encoding, spec.seed)
    return load_hamiltonian(spec.path)


def run_instance(spec: ModelSpec, size: int, method: str, suite: SuiteSpec) -> BenchRow:
    """One (model instance, method) cell; errors are recorded, not raised."""
    row = BenchRow(spec.model, spec.label, size, method)
    try:
        h = build_hamiltonian(spec, size)
        row.n_qubits, row.n_terms = h.n_qubits, len(h)
        w0, c0 = time.perf_counter(), time.process_time()
        if method == "pfg":
            res = synth(h, SynthConfig(credit=suite.credit, dt=suite.dt))
            circuit, rotations, frame = res.circuit, res.rotations, res.final_frame
        else:
            res = synth_baseline(h, suite.dt, CancelConfig(time_limit=suite.time_limit))
            circuit, rotations, frame = res.circuit, res.rotations, None
        row.wall_time = time.perf_counter() - w0
        row.cpu_time = time.process_time() - c0
        m = res.metrics
        row.tqe_count, row.tqe_per_term = m.tqe_count, m.tqe_per_term
        row.depth_all, row.depth_tqe, row.rotation_count = m.depth_all_gates, m.depth_tqe_only, m.rotation_count
        row.circuit_digest = hashlib.sha256(export_text(circuit).encode()).hexdigest()[:16]
        if h.n_qubits <= suite.verify_max_qubits:
            frame = frame if frame is not None else frame_of_circuit(circuit)
            row.verified = "pass" if check_path_equivalence(circuit, rotations, frame) else "fail"
    except Exception as exc:  # noqa: BLE001 - recorded per instance
        row.error = f"{type(exc).__name__}: {exc}".replace("\n", " ")
    return row


def _job(args):
    return run_instance(*args)


def run_sweep(
    spec: ModelSpec, methods: Sequence[str], suite: SuiteSpec, workers: int = 1
) -> list[BenchRow]:
    jobs = [(spec, size, method, suite) for size in spec.instance_sizes() for method in methods]
    return _run_jobs(jobs, workers)


def _run_jobs(jobs, workers: int) -> list[BenchRow]:
    if workers <= 1 or len(jobs) <= 1:
        return [_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps submission order, so output is independent of scheduling
        return list(pool.map(_job, jobs))


def run_suite(suite: SuiteSpec, workers: int | None = None) -> list[BenchRow]:
    workers = default_workers() if workers is None else workers
    jobs = [
        (spec, size, method, suite)
        for spec in suite.models
        for size in spec.instance_sizes()
        for method in suite.methods
    ]
    return _run_jobs(jobs, workers)


def fit_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log y against log x; nan with fewer than two usable points."""
    pts = [(math.log(a), math.log(b)) for a, b in zip(x, y) if a > 0 and b > 0]
    if len(pts) < 2 or len({p[0] for p in pts}) < 2:
        return float("nan")
    lx, ly = np.array(pts).T
    return float(np.polyfit(lx, ly, 1)[0])


def table_text(rows: Sequence[BenchRow], include_timing: bool = True) -> str:
    cols = [c for c in COLUMNS if include_timing or c not in TIMING_COLUMNS]
    idx = [COLUMNS.index(c) for c in cols]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        full = r.as_row()
        w.writerow([full[i] for i in idx])
    return buf.getvalue()


def summary_text(rows: Sequence[BenchRow]) -> str:
    lines = ["# fitted log-log slopes per (model, method)"]
    groups: dict[tuple[str, str], list[BenchRow]] = {}
    for r in rows:
        if not r.error:
            groups.setdefault((r.label, r.method), []).append(r)
    for (label, method), rs in groups.items():
        size_terms = fit_slope([r.n_qubits for r in rs], [r.n_terms for r in rs])
        cpu = fit_slope([r.n_qubits * r.n_terms for r in rs], [r.cpu_time for r in rs])
        lines.append(
            f"{label} {method}: instances={len(rs)} terms_vs_qubits={size_terms:.3f} "
            f"cpu_vs_NxT={cpu:.3f} mean_tqe_per_term={np.mean([r.tqe_per_term for r in rs]):.3f}"
        )
    failed = [r for r in rows if r.error or r.verified == "fail"]
    lines.append(f"# failures: {len(failed)}")
    for r in failed:
        lines.append(f"{r.label} size={r.size} {r.method}: {r.error or 'verification failed'}")
    lines.append(
        "# baseline cancellation only merges dependency-adjacent pairs; "
        "single-qubit commutation rewrites are not attempted"
    )
    return "\n".join(lines) + "\n"


def emit_report(rows: Sequence[BenchRow], out_dir: str | os.PathLike) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table, summary = out / "results.csv", out / "summary.txt"
    table.write_text(table_text(rows))
    summary.write_text(summary_text(rows))
    return table, summary
