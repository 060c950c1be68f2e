"""Small dense matrices for elementary gates (qubit 0 is the leftmost kron factor)."""
import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P = np.diag([1, 1j]).astype(complex)
PDG = P.conj().T
CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

PAULI_1Q = {"I": I2, "X": X, "Y": Y, "Z": Z}
BITS_1Q = {(0, 0): I2, (1, 0): X, (1, 1): Y, (0, 1): Z}


def rotation(axis: str, angle: float) -> np.ndarray:
    """exp(-i angle/2 sigma_axis)."""
    s = PAULI_1Q[axis]
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * s


def tqe_matrix(u: str, v: str) -> np.ndarray:
    """Two-qubit entangler (I + u_i + v_j - u_i v_j) / 2; (Z, X) is CX."""
    a = np.kron(PAULI_1Q[u], I2)
    b = np.kron(I2, PAULI_1Q[v])
    return (np.eye(4) + a + b - a @ b) / 2


def pauli_bits_matrix(xs, zs) -> np.ndarray:
    """Hermitian Pauli from per-qubit bit sequences."""
    out = np.ones((1, 1), dtype=complex)
    for bx, bz in zip(xs, zs):
        out = np.kron(out, BITS_1Q[(bx, bz)])
    return out


def identify_pauli(m: np.ndarray, n: int, atol: float = 1e-12):
    """Return (x_bits, z_bits, phase_exp) with m == i**phase_exp * P, else raise."""
    import itertools

    for bits in itertools.product((0, 1), repeat=2 * n):
        xs, zs = bits[:n], bits[n:]
        p = pauli_bits_matrix(xs, zs)
        c = np.trace(p @ m) / (2**n)
        if abs(abs(c) - 1) < atol and np.allclose(m, c * p, atol=atol):
            for e, val in enumerate((1, 1j, -1, -1j)):
                if abs(c - val) < atol:
                    return xs, zs, e
    raise ValueError("matrix is not a phased Pauli operator")
