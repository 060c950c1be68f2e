"""Dense-matrix oracles for small circuits."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _matrices as mats
from .circuit import Circuit, Gate, expand_tqe
from .frame import SignedFrame, clifford_circuit_of_frame, conjugate
from .models.hamiltonian import PauliSum, PauliSumHamiltonian
from .pauli import PauliString, SignedPauli

__all__ = [
    "MAX_DENSE_QUBITS",
    "SizeCapError",
    "dense_of_circuit",
    "dense_of_pauli",
    "dense_of_pauli_sum",
    "dense_of_rotation_product",
    "apply_pauli",
    "phase_aligned_distance",
    "equal_up_to_phase",
    "EquivalenceReport",
    "check_path_equivalence",
    "tableau_cross_check",
    "trotter_error",
]

MAX_DENSE_QUBITS = 12
PATH_CHECK_QUBITS = 10
DEFAULT_TOL = 1e-9

_ONE_QUBIT = {
    "H": mats.H,
    "P": mats.P,
    "PDG": mats.PDG,
    "X": mats.X,
    "Y": mats.Y,
    "Z": mats.Z,
}


class SizeCapError(ValueError):
    pass


def _cap(n: int, limit: int = MAX_DENSE_QUBITS) -> None:
    if n > limit:
        raise SizeCapError(f"dense oracle limited to {limit} qubits, got {n}")


def _apply(state: np.ndarray, m: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Left-multiply a (2**n, k) block by ``m`` acting on ``qubits``."""
    k = len(qubits)
    cols = state.shape[1]
    t = state.reshape((2,) * n + (cols,))
    t = np.moveaxis(t, list(qubits), list(range(k)))
    shape = t.shape
    t = (m @ t.reshape(2**k, -1)).reshape(shape)
    t = np.moveaxis(t, list(range(k)), list(qubits))
    return t.reshape(2**n, cols)


def _gate_dense(g: Gate) -> np.ndarray:
    if g.is_rotation:
        return mats.rotation(g.kind[1], g.angle)
    if g.kind == "CX":
        return mats.CX
    return _ONE_QUBIT[g.kind]


def dense_of_circuit(circuit: Circuit) -> np.ndarray:
    n = circuit.n_qubits
    _cap(n)
    u = np.eye(2**n, dtype=complex)
    for gate in circuit.gates:
        for g in expand_tqe(gate):
            u = _apply(u, _gate_dense(g), g.qubits, n)
    return u


def dense_of_pauli(p: PauliString | SignedPauli) -> np.ndarray:
    if isinstance(p, SignedPauli):
        return (1j**p.phase_exp) * dense_of_pauli(p.pauli)
    _cap(p.n_qubits)
    return mats.pauli_bits_matrix(p.x_bits, p.z_bits)


def dense_of_pauli_sum(ps: PauliSum | PauliSumHamiltonian) -> np.ndarray:
    if isinstance(ps, PauliSumHamiltonian):
        ps = ps.to_pauli_sum()
    n = ps.n_qubits
    _cap(n)
    out = np.zeros((2**n, 2**n), dtype=complex)
    for p, c in ps.items():
        out += c * dense_of_pauli(p)
    return out


def _index_mask(bits: int, n: int) -> int:
    # qubit q is bit n-1-q of the basis index
    return sum(1 << (n - 1 - q) for q in range(n) if (bits >> q) & 1)


def apply_pauli(p: PauliString, block: np.ndarray) -> np.ndarray:
    """``P @ block`` as a signed row permutation."""
    n = p.n_qubits
    xi, zi = _index_mask(p.x, n), _index_mask(p.z, n)
    rows = np.arange(2**n)
    parity = np.zeros(2**n, dtype=np.int64)
    m = rows & zi
    while m.any():
        parity ^= m & 1
        m >>= 1
    phase = (1j ** (p.x & p.z).bit_count()) * (1 - 2 * parity)
    out = np.empty_like(block)
    out[rows ^ xi] = phase[:, None] * block
    return out


def dense_of_rotation_product(rotations: Iterable[tuple[PauliString, float]], n_qubits: int) -> np.ndarray:
    """``R_M ... R_1`` for rotations given in time order, ``R = exp(-i angle/2 P)``."""
    _cap(n_qubits)
    u = np.eye(2**n_qubits, dtype=complex)
    for p, angle in rotations:
        u = np.cos(angle / 2) * u - 1j * np.sin(angle / 2) * apply_pauli(p, u)
    return u


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over global phases of the Frobenius norm of ``a - e^{i phi} b``."""
    ov = np.vdot(b, a)
    phase = ov / abs(ov) if abs(ov) > 1e-300 else 1.0
    return float(np.linalg.norm(a - phase * b))


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return phase_aligned_distance(a, b) <= tol


@dataclass(frozen=True)
class EquivalenceReport:
    passed: bool
    defect: float
    max_modulus_defect: float

    def __bool__(self):
        return self.passed


def check_path_equivalence(
    circuit: Circuit,
    rotations: Iterable[tuple[PauliString, float]] | Iterable,
    final_frame: SignedFrame,
    tol: float = DEFAULT_TOL,
) -> EquivalenceReport:
    """Circuit = (Clifford of ``final_frame``) x (logical rotation product)?

    ``rotations`` may hold ``(pauli, angle)`` pairs or objects with ``pauli``
    and ``angle`` attributes, in emission order.
    """
    n = circuit.n_qubits
    _cap(n, PATH_CHECK_QUBITS)
    rots = [(r.pauli, r.angle) if hasattr(r, "pauli") else tuple(r) for r in rotations]
    d = dense_of_circuit(circuit) @ dense_of_rotation_product(rots, n).conj().T
    back = dense_of_circuit(clifford_circuit_of_frame(final_frame.copy()))
    expected = back.conj().T
    ov = np.vdot(expected, d)
    phase = ov / abs(ov) if abs(ov) > 1e-300 else 1.0
    diff = d - phase * expected
    defect = float(np.linalg.norm(diff))
    return EquivalenceReport(defect <= tol, defect, float(np.abs(diff).max()))


def tableau_cross_check(circuit: Circuit, tol: float = 1e-10) -> bool:
    """Forward-conjugated generators agree with dense conjugation, signs included."""
    n = circuit.n_qubits
    _cap(n, 6)
    cliffords = Circuit(n, [g for g in circuit.gates if g.is_clifford])
    u = dense_of_circuit(cliffords)
    for q in range(n):
        for kind in ("Z", "X"):
            p = SignedPauli(PauliString.single(n, q, kind))
            img = p
            for g in cliffords.gates:
                img = conjugate(img, g)
            lhs = u @ dense_of_pauli(p) @ u.conj().T
            if np.linalg.norm(lhs - dense_of_pauli(img)) > tol:
                return False
    return True


def _expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def trotter_error(h: PauliSumHamiltonian, step, dts: Sequence[float]) -> tuple[np.ndarray, float]:
    """Spectral-norm error of ``step(dt)`` against ``exp(-i dt H)`` and the log-log slope.

    ``step`` maps a time step to a dense unitary (or a Circuit).
    """
    _cap(h.n_qubits, PATH_CHECK_QUBITS)
    hd = dense_of_pauli_sum(h)
    errs = []
    for dt in dts:
        u = step(dt)
        if isinstance(u, Circuit):
            u = dense_of_circuit(u)
        exact = _expm_hermitian(hd, dt)
        ov = np.vdot(exact, u)
        phase = ov / abs(ov) if abs(ov) > 1e-300 else 1.0
        errs.append(np.linalg.norm(u - phase * exact, 2))
    errs = np.asarray(errs)
    slope = float(np.polyfit(np.log(dts), np.log(np.maximum(errs, 1e-300)), 1)[0])
    return errs, slope
