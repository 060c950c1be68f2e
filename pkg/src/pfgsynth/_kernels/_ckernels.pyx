# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops of the greedy walk.

``local`` is qubit-major: ``local[q, t]`` is the 2-bit code of term ``t`` on
qubit ``q``.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def pair_histograms(const cnp.uint8_t[:, ::1] local,
                    const cnp.int64_t[::1] pi,
                    const cnp.int64_t[::1] pj):
    cdef Py_ssize_t n_pairs = pi.shape[0]
    cdef Py_ssize_t n_terms = local.shape[1]
    out = np.zeros((n_pairs, 16), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] hist = out
    cdef Py_ssize_t p, t
    cdef const cnp.uint8_t[::1] ci
    cdef const cnp.uint8_t[::1] cj
    for p in range(n_pairs):
        ci = local[pi[p]]
        cj = local[pj[p]]
        for t in range(n_terms):
            hist[p, 4 * ci[t] + cj[t]] += 1
    return out


def apply_tqe(cnp.uint8_t[:, ::1] local,
              cnp.int64_t[::1] support,
              Py_ssize_t i, Py_ssize_t j,
              const cnp.uint8_t[::1] new_cfg,
              const cnp.int8_t[::1] delta):
    cdef Py_ssize_t n_terms = local.shape[1]
    cdef Py_ssize_t t
    cdef int cfg, nc
    cdef cnp.uint8_t[::1] ci = local[i]
    cdef cnp.uint8_t[::1] cj = local[j]
    for t in range(n_terms):
        cfg = 4 * ci[t] + cj[t]
        if cfg:
            nc = new_cfg[cfg]
            ci[t] = nc >> 2
            cj[t] = nc & 3
            support[t] += delta[cfg]


def pair_weighted_histograms(const cnp.uint8_t[:, ::1] local,
                             const cnp.int64_t[::1] pi,
                             const cnp.int64_t[::1] pj,
                             const cnp.int64_t[::1] weight):
    """Like ``pair_histograms`` but each term adds ``weight[t]``."""
    cdef Py_ssize_t n_pairs = pi.shape[0]
    cdef Py_ssize_t n_terms = local.shape[1]
    out = np.zeros((n_pairs, 16), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] hist = out
    cdef Py_ssize_t p, t
    cdef const cnp.uint8_t[::1] ci
    cdef const cnp.uint8_t[::1] cj
    for p in range(n_pairs):
        ci = local[pi[p]]
        cj = local[pj[p]]
        for t in range(n_terms):
            hist[p, 4 * ci[t] + cj[t]] += weight[t]
    return out
