"""Compiled vs numpy kernel timings, plus end-to-end synthesis under each backend.

    python3 benchmarks/bench_kernels.py [--qubits 32] [--terms 2000] [--repeat 5]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from pfgsynth._kernels import compiled_backend, python_backend

_E2E = (
    "import time; from pfgsynth import synth, SynthConfig; from pfgsynth.models import fermi_hubbard; "
    "from pfgsynth._kernels import BACKEND_NAME; h = fermi_hubbard({n}); "
    "t = time.perf_counter(); synth(h, SynthConfig()); "
    "print(BACKEND_NAME, time.perf_counter() - t)"
)


def kernel_inputs(n_qubits: int, n_terms: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    local = rng.integers(0, 4, (n_qubits, n_terms), dtype=np.uint8)
    pi, pj = np.triu_indices(n_qubits, 1)
    support = np.count_nonzero(local, axis=0).astype(np.int64)
    new_cfg = rng.permutation(16).astype(np.uint8)
    new_cfg[new_cfg == 0], new_cfg[0] = new_cfg[0], 0
    delta = rng.integers(-1, 2, 16).astype(np.int8)
    return local, pi.astype(np.int64), pj.astype(np.int64), support, new_cfg, delta


def time_kernels(backend, args, repeat: int) -> dict[str, float]:
    local, pi, pj, support, new_cfg, delta = args
    cases = {
        "pair_histograms": lambda: backend.pair_histograms(local, pi, pj),
        "pair_weighted_histograms": lambda: backend.pair_weighted_histograms(local, pi, pj, support),
        "apply_tqe": lambda: backend.apply_tqe(local.copy(), support.copy(), 0, 1, new_cfg, delta),
    }
    return {k: min(timeit.repeat(f, number=1, repeat=repeat)) for k, f in cases.items()}


def end_to_end(sites: int, pure: bool) -> str:
    env = dict(os.environ)
    if pure:
        env["PFGSYNTH_PURE_PYTHON"] = "1"
    else:
        env.pop("PFGSYNTH_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", _E2E.format(n=sites)], env=env, capture_output=True, text=True, check=True
    )
    return out.stdout.strip()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", type=int, default=32)
    ap.add_argument("--terms", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sites", type=int, default=16, help="Fermi-Hubbard size for the end-to-end run")
    a = ap.parse_args()

    args = kernel_inputs(a.qubits, a.terms)
    py = time_kernels(python_backend, args, a.repeat)
    print(f"kernels on {a.qubits} qubits x {a.terms} terms (best of {a.repeat}, ms)")
    if compiled_backend is None:
        print("compiled backend unavailable; numpy timings only")
        for k, v in py.items():
            print(f"  {k:26s} numpy {1e3 * v:9.3f}")
    else:
        cy = time_kernels(compiled_backend, args, a.repeat)
        for k in py:
            print(f"  {k:26s} numpy {1e3 * py[k]:9.3f}  cython {1e3 * cy[k]:9.3f}  speedup {py[k] / cy[k]:6.1f}x")
    print(f"end-to-end synth, Fermi-Hubbard {a.sites} sites (s)")
    for pure in (True, False):
        print("  " + end_to_end(a.sites, pure))


if __name__ == "__main__":
    main()
