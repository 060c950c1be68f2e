"""Truncated bosonic modes on qubit blocks: Bose-Hubbard and vibronic models.

A mode with ``d`` levels occupies ``log2(d)`` contiguous qubits, most
significant bit first.  Level ``l`` is stored as ``l`` (standard binary) or
``l ^ (l >> 1)`` (Gray code).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import _matrices as mats
from .hamiltonian import DROP_THRESHOLD, IMAG_TOLERANCE, PauliSum, PauliSumHamiltonian

__all__ = [
    "ENCODINGS",
    "BosonEncoding",
    "annihilator",
    "position",
    "momentum",
    "encoded_matrix",
    "matrix_to_pauli_sum",
    "bosonic_matrix_to_paulis",
    "bose_hubbard",
    "bose_hubbard_sum",
    "VibronicParams",
    "vibronic_params",
    "vibronic",
    "vibronic_sum",
    "vibronic_dense",
]

ENCODINGS = ("std", "gray")


@dataclass(frozen=True)
class BosonEncoding:
    kind: str = "std"
    d: int = 4

    def __post_init__(self):
        if self.kind not in ENCODINGS:
            raise ValueError(f"unknown boson encoding {self.kind!r}")
        if self.d < 2 or self.d & (self.d - 1):
            raise ValueError(f"level count must be a power of two >= 2, got {self.d}")

    @property
    def n_qubits(self) -> int:
        return self.d.bit_length() - 1

    def code(self, level: int) -> int:
        return level ^ (level >> 1) if self.kind == "gray" else level


def annihilator(d: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1).astype(complex)


def position(d: int) -> np.ndarray:
    b = annihilator(d)
    return (b + b.conj().T) / np.sqrt(2)


def momentum(d: int) -> np.ndarray:
    b = annihilator(d)
    return 1j * (b.conj().T - b) / np.sqrt(2)


def encoded_matrix(op: np.ndarray, enc: BosonEncoding) -> np.ndarray:
    """``op`` in the qubit computational basis of its block."""
    perm = [enc.code(level) for level in range(enc.d)]
    out = np.zeros_like(op, dtype=complex)
    out[np.ix_(perm, perm)] = op
    return out


def matrix_to_pauli_sum(op: np.ndarray, enc: BosonEncoding) -> PauliSum:
    """Pauli expansion on ``log2 d`` qubits; coefficients ``Tr(P op~)/d``."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (enc.d, enc.d):
        raise ValueError(f"expected a {enc.d}x{enc.d} matrix")
    m = encoded_matrix(op, enc)
    k = enc.n_qubits
    coeffs = {}
    for bits in itertools.product((0, 1), repeat=2 * k):
        xs, zs = bits[:k], bits[k:]
        c = np.trace(mats.pauli_bits_matrix(xs, zs) @ m) / enc.d
        if abs(c) > 1e-15:
            x = sum(b << q for q, b in enumerate(xs))
            z = sum(b << q for q, b in enumerate(zs))
            coeffs[x, z] = complex(c)
    return PauliSum(k, coeffs)


def bosonic_matrix_to_paulis(
    op: np.ndarray, enc: BosonEncoding, threshold: float = DROP_THRESHOLD
) -> PauliSumHamiltonian:
    """Hermitian single-mode operator as a qubit Hamiltonian (identity dropped)."""
    op = np.asarray(op, dtype=complex)
    if np.abs(op - op.conj().T).max() > IMAG_TOLERANCE:
        raise ValueError("operator is not Hermitian")
    return PauliSumHamiltonian.from_pauli_sum(matrix_to_pauli_sum(op, enc), threshold)


def _mode_op(op: np.ndarray, mode: int, n_modes: int, enc: BosonEncoding) -> PauliSum:
    k = enc.n_qubits
    return matrix_to_pauli_sum(op, enc).embed(n_modes * k, mode * k)


def _chain_bonds(n_sites: int) -> list[tuple[int, int]]:
    bonds = [(i, i + 1) for i in range(n_sites - 1)]
    if n_sites > 2:
        bonds.append((0, n_sites - 1))
    return bonds


def bose_hubbard_sum(n_sites: int, t: float, u: float, enc: BosonEncoding) -> PauliSum:
    if n_sites < 2:
        raise ValueError("Bose-Hubbard needs at least 2 sites")
    d = enc.d
    b = annihilator(d)
    num = b.conj().T @ b
    onsite = num @ (num - np.eye(d))
    n = n_sites * enc.n_qubits
    total = PauliSum(n)
    for i, j in _chain_bonds(n_sites):
        bi_dag = _mode_op(b.conj().T, i, n_sites, enc)
        bj_dag = _mode_op(b.conj().T, j, n_sites, enc)
        bi = _mode_op(b, i, n_sites, enc)
        bj = _mode_op(b, j, n_sites, enc)
        total += (bi_dag * bj + bj_dag * bi) * (-t)
    for i in range(n_sites):
        total += _mode_op(onsite, i, n_sites, enc) * u
    return total


def bose_hubbard(
    n_sites: int,
    t: float = 1.0,
    u: float = 1.0,
    d: int = 4,
    encoding: str = "std",
    threshold: float = DROP_THRESHOLD,
) -> PauliSumHamiltonian:
    """Periodic chain, ``-t sum (b_i^dag b_j + h.c.) + U sum n_i (n_i - 1)``."""
    enc = BosonEncoding(encoding, d)
    return PauliSumHamiltonian.from_pauli_sum(bose_hubbard_sum(n_sites, t, u, enc), threshold)


@dataclass(frozen=True)
class VibronicParams:
    s: np.ndarray
    omega_a: np.ndarray
    omega_b: np.ndarray
    delta: np.ndarray

    @property
    def m_q(self) -> np.ndarray:
        """Coefficients of ``q_A`` in ``q_B`` (before the shift)."""
        return np.diag(np.sqrt(self.omega_b)) @ self.s @ np.diag(1 / np.sqrt(self.omega_a))

    @property
    def m_p(self) -> np.ndarray:
        return np.diag(1 / np.sqrt(self.omega_b)) @ self.s @ np.diag(np.sqrt(self.omega_a))


def vibronic_params(n_modes: int, seed: int, displacement: bool = True) -> VibronicParams:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n_modes, n_modes))
    q, r = np.linalg.qr(g)
    s = q * np.sign(np.diag(r))
    omega_a = rng.uniform(0.5, 1.5, n_modes)
    omega_b = rng.uniform(0.5, 1.5, n_modes)
    delta = rng.uniform(-0.1, 0.1, n_modes) if displacement else np.zeros(n_modes)
    return VibronicParams(s, omega_a, omega_b, delta)


def _quadratic_form(ops1, ops2, coef: np.ndarray, n_modes, enc, pair_ops) -> PauliSum:
    n = n_modes * enc.n_qubits
    out = PauliSum(n)
    for k in range(n_modes):
        for l in range(n_modes):
            c = coef[k, l]
            if c == 0:
                continue
            if k == l:
                out += _mode_op(pair_ops[k], k, n_modes, enc) * c
            else:
                out += (ops1[k] * ops2[l]) * c
    return out


def vibronic_sum(n_modes: int, d: int = 4, encoding: str = "std", seed: int = 0, displacement: bool = True) -> PauliSum:
    """``1/2 sum_j w_Bj (q_Bj^2 + p_Bj^2)`` in the surface-A mode basis."""
    if n_modes < 2:
        raise ValueError("vibronic model needs at least 2 modes")
    enc = BosonEncoding(encoding, d)
    par = vibronic_params(n_modes, seed, displacement)
    q, p = position(d), momentum(d)
    qs = [_mode_op(q, k, n_modes, enc) for k in range(n_modes)]
    ps = [_mode_op(p, k, n_modes, enc) for k in range(n_modes)]
    mq, mp, wb = par.m_q, par.m_p, par.omega_b
    hq = 0.5 * mq.T @ np.diag(wb) @ mq
    hp = 0.5 * mp.T @ np.diag(wb) @ mp
    total = _quadratic_form(qs, qs, hq, n_modes, enc, [q @ q] * n_modes)
    total += _quadratic_form(ps, ps, hp, n_modes, enc, [p @ p] * n_modes)
    lin = mq.T @ (wb * par.delta)
    for k in range(n_modes):
        if lin[k]:
            total += qs[k] * lin[k]
    total += PauliSum.identity(n_modes * enc.n_qubits, 0.5 * float(wb @ par.delta**2))
    return total


def vibronic(
    n_modes: int,
    d: int = 4,
    encoding: str = "std",
    seed: int = 0,
    displacement: bool = True,
    threshold: float = DROP_THRESHOLD,
) -> PauliSumHamiltonian:
    return PauliSumHamiltonian.from_pauli_sum(vibronic_sum(n_modes, d, encoding, seed, displacement), threshold)


def vibronic_dense(n_modes: int, d: int = 4, encoding: str = "std", seed: int = 0, displacement: bool = True) -> np.ndarray:
    """Direct matrix build of the vibronic model in the encoded qubit basis."""
    enc = BosonEncoding(encoding, d)
    par = vibronic_params(n_modes, seed, displacement)
    q = encoded_matrix(position(d), enc)
    p = encoded_matrix(momentum(d), enc)
    eye = np.eye(d)

    def on(op, k):
        m = np.ones((1, 1), dtype=complex)
        for j in range(n_modes):
            m = np.kron(m, op if j == k else eye)
        return m

    qa = [on(q, k) for k in range(n_modes)]
    pa = [on(p, k) for k in range(n_modes)]
    dim = d**n_modes
    h = np.zeros((dim, dim), dtype=complex)
    for j in range(n_modes):
        qb = sum(par.m_q[j, k] * qa[k] for k in range(n_modes)) + par.delta[j] * np.eye(dim)
        pb = sum(par.m_p[j, k] * pa[k] for k in range(n_modes))
        h += 0.5 * par.omega_b[j] * (qb @ qb + pb @ pb)
    return h
