"""Model Hamiltonians and the Pauli-sum container."""
from .boson import BosonEncoding, bose_hubbard, bosonic_matrix_to_paulis, vibronic
from .fermion import LadderTerm, bravyi_kitaev, fermi_hubbard, jordan_wigner
from .hamiltonian import (
    DROP_THRESHOLD,
    HamiltonianParseError,
    PauliSum,
    PauliSumHamiltonian,
    dumps_hamiltonian,
    load_hamiltonian,
    loads_hamiltonian,
    save_hamiltonian,
)

__all__ = [
    "BosonEncoding",
    "DROP_THRESHOLD",
    "HamiltonianParseError",
    "LadderTerm",
    "PauliSum",
    "PauliSumHamiltonian",
    "bose_hubbard",
    "bosonic_matrix_to_paulis",
    "bravyi_kitaev",
    "dumps_hamiltonian",
    "fermi_hubbard",
    "jordan_wigner",
    "load_hamiltonian",
    "loads_hamiltonian",
    "save_hamiltonian",
    "vibronic",
]
