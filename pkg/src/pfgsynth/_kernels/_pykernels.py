"""numpy implementations of the greedy-walk inner loops (fallback path)."""
import numpy as np


def pair_histograms(local, pi, pj):
    n_pairs = len(pi)
    if n_pairs == 0:
        return np.zeros((0, 16), dtype=np.int64)
    cfg = 4 * local[pi].astype(np.int64) + local[pj]
    cfg += 16 * np.arange(n_pairs, dtype=np.int64)[:, None]
    return np.bincount(cfg.ravel(), minlength=16 * n_pairs).reshape(n_pairs, 16)


def apply_tqe(local, support, i, j, new_cfg, delta):
    cfg = 4 * local[i].astype(np.int64) + local[j]
    nc = new_cfg[cfg]
    local[i] = nc >> 2
    local[j] = nc & 3
    support += delta[cfg]


def pair_weighted_histograms(local, pi, pj, weight):
    n_pairs = len(pi)
    out = np.zeros((n_pairs, 16), dtype=np.int64)
    for p in range(n_pairs):
        cfg = 4 * local[pi[p]].astype(np.int64) + local[pj[p]]
        out[p] = np.bincount(cfg, weights=weight, minlength=16).astype(np.int64)
    return out
