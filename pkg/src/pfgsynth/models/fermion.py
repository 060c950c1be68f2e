"""Fermion-to-qubit maps and the Fermi-Hubbard chain.

Both maps are linear encodings ``b = beta n (mod 2)`` of occupation vectors;
Jordan-Wigner has ``beta = I`` and Bravyi-Kitaev uses the Fenwick-tree
matrix.  For such an encoding

    a_j = X^{beta e_j} Z^{pi_j beta^-1} (I - Z^{e_j beta^-1}) / 2

where ``pi_j`` marks the modes below ``j`` (the parity string).
"""
from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .hamiltonian import DROP_THRESHOLD, PauliSum, PauliSumHamiltonian

__all__ = [
    "LadderTerm",
    "MAPPINGS",
    "encoding_matrix",
    "annihilation",
    "creation",
    "encode_ladder",
    "jordan_wigner",
    "bravyi_kitaev",
    "fermi_hubbard",
    "fermi_hubbard_sum",
    "fermi_hubbard_terms",
    "dense_fermionic",
    "hubbard_bonds",
]

MAPPINGS = ("jw", "bk")


@dataclass(frozen=True)
class LadderTerm:
    """``coefficient * prod(op)`` over ``factors``; ``(mode, True)`` is a creator."""

    coefficient: complex
    factors: tuple[tuple[int, bool], ...]


def _fenwick(n: int) -> np.ndarray:
    beta = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        low = (i + 1) & -(i + 1)
        beta[i, i + 1 - low : i + 1] = 1
    return beta


def _gf2_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    a = np.concatenate([m.copy() % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r, col])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        for r in range(n):
            if r != col and a[r, col]:
                a[r] ^= a[col]
    return a[:, n:]


@functools.cache
def encoding_matrix(n_modes: int, mapping: str) -> np.ndarray:
    """``beta`` with qubit state ``beta @ n mod 2``."""
    if mapping == "jw":
        beta = np.eye(n_modes, dtype=np.uint8)
    elif mapping == "bk":
        beta = _fenwick(n_modes)
    else:
        raise ValueError(f"unknown fermion mapping {mapping!r}")
    beta.setflags(write=False)
    return beta


@functools.cache
def _inverse(n_modes: int, mapping: str) -> np.ndarray:
    return _gf2_inverse(encoding_matrix(n_modes, mapping))


def _mask(bits) -> int:
    return sum(1 << q for q, b in enumerate(bits) if b)


def annihilation(j: int, n_modes: int, mapping: str) -> PauliSum:
    return _annihilation(j, n_modes, mapping).copy()


@functools.cache
def _annihilation(j: int, n_modes: int, mapping: str) -> PauliSum:
    if not 0 <= j < n_modes:
        raise ValueError(f"mode {j} out of range for {n_modes} modes")
    beta = encoding_matrix(n_modes, mapping)
    inv = _inverse(n_modes, mapping)
    flip = _mask(beta[:, j])
    parity = np.zeros(n_modes, dtype=np.uint8)
    parity[:j] = 1
    sign_z = _mask(parity @ inv % 2)
    occ_z = _mask(inv[j])
    flip_op = PauliSum(n_modes, {(flip, 0): 1.0})
    sign_op = PauliSum(n_modes, {(0, sign_z): 1.0})
    proj = PauliSum(n_modes, {(0, 0): 0.5})
    proj += PauliSum(n_modes, {(0, occ_z): -0.5})
    return (flip_op * sign_op * proj).simplify(1e-15)


def creation(j: int, n_modes: int, mapping: str) -> PauliSum:
    return annihilation(j, n_modes, mapping).adjoint()


def encode_ladder(term: LadderTerm, n_modes: int, mapping: str) -> PauliSum:
    out = PauliSum.identity(n_modes, term.coefficient)
    for mode, dagger in term.factors:
        op = creation(mode, n_modes, mapping) if dagger else annihilation(mode, n_modes, mapping)
        out = out * op
    return out.simplify(1e-15)


def jordan_wigner(term: LadderTerm, n_modes: int) -> PauliSum:
    return encode_ladder(term, n_modes, "jw")


def bravyi_kitaev(term: LadderTerm, n_modes: int) -> PauliSum:
    return encode_ladder(term, n_modes, "bk")


def hubbard_bonds(n_sites: int, periodic: bool) -> list[tuple[int, int]]:
    bonds = [(i, i + 1) for i in range(n_sites - 1)]
    if periodic and n_sites > 2:
        bonds.append((0, n_sites - 1))
    return bonds


def mode_index(site: int, spin: int) -> int:
    """Site-major, spin-minor: up is even, down is odd."""
    return 2 * site + spin


def fermi_hubbard_terms(n_sites: int, t: float, u: float, periodic: bool) -> list[LadderTerm]:
    terms = []
    for i, j in hubbard_bonds(n_sites, periodic):
        for s in (0, 1):
            p, q = mode_index(i, s), mode_index(j, s)
            terms.append(LadderTerm(-t, ((p, True), (q, False))))
            terms.append(LadderTerm(-t, ((q, True), (p, False))))
    for i in range(n_sites):
        up, dn = mode_index(i, 0), mode_index(i, 1)
        terms.append(LadderTerm(u, ((up, True), (up, False), (dn, True), (dn, False))))
    return terms


def fermi_hubbard_sum(
    n_sites: int, t: float = 1.0, u: float = 4.0, mapping: str = "jw", periodic: bool = True
) -> PauliSum:
    """Encoded operator including its identity component."""
    if n_sites < 2:
        raise ValueError("Fermi-Hubbard needs at least 2 sites")
    if mapping not in MAPPINGS:
        raise ValueError(f"unknown fermion mapping {mapping!r}")
    n = 2 * n_sites
    total = PauliSum(n)
    for term in fermi_hubbard_terms(n_sites, t, u, periodic):
        total += encode_ladder(term, n, mapping)
    return total


def fermi_hubbard(
    n_sites: int,
    t: float = 1.0,
    u: float = 4.0,
    mapping: str = "jw",
    periodic: bool = True,
    threshold: float = DROP_THRESHOLD,
) -> PauliSumHamiltonian:
    """Hopping on nearest-neighbour bonds plus on-site ``U n_up n_down``."""
    return PauliSumHamiltonian.from_pauli_sum(fermi_hubbard_sum(n_sites, t, u, mapping, periodic), threshold)


def dense_ladder_operators(n_modes: int) -> list[np.ndarray]:
    """Jordan-Wigner annihilators built directly from Kronecker products."""
    z = np.diag([1.0, -1.0]).astype(complex)
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    ops = []
    for j in range(n_modes):
        m = np.ones((1, 1), dtype=complex)
        for k in range(n_modes):
            m = np.kron(m, z if k < j else lower if k == j else np.eye(2))
        ops.append(m)
    return ops


def dense_fermionic(terms: Sequence[LadderTerm], n_modes: int) -> np.ndarray:
    ops = dense_ladder_operators(n_modes)
    out = np.zeros((2**n_modes, 2**n_modes), dtype=complex)
    for term in terms:
        m = term.coefficient * np.eye(2**n_modes, dtype=complex)
        for mode, dagger in term.factors:
            m = m @ (ops[mode].conj().T if dagger else ops[mode])
        out += m
    return out
