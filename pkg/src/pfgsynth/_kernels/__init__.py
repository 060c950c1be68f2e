"""Inner-loop kernels: compiled when available, numpy otherwise.

Set ``PFGSYNTH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as python_backend

try:
    if os.environ.get("PFGSYNTH_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by environment")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "cython" if compiled_backend is not None else "python"

pair_histograms = backend.pair_histograms
apply_tqe = backend.apply_tqe
pair_weighted_histograms = backend.pair_weighted_histograms

__all__ = ["pair_histograms", "pair_weighted_histograms", "apply_tqe", "BACKEND_NAME", "python_backend", "compiled_backend"]
