"""Trotter-step circuit synthesis by greedy walks over Pauli frames."""
from ._kernels import BACKEND_NAME
from .circuit import Circuit, CircuitMetrics, Gate
from .frame import SignedFrame, clifford_circuit_of_frame, origin_frame
from .models.hamiltonian import PauliSum, PauliSumHamiltonian, load_hamiltonian, save_hamiltonian
from .pauli import PauliString, SignedPauli, format_pauli, parse_pauli
from .pfg import SynthConfig, SynthResult, retrace, synth

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "Circuit",
    "CircuitMetrics",
    "Gate",
    "PauliSum",
    "PauliSumHamiltonian",
    "PauliString",
    "SignedFrame",
    "SignedPauli",
    "SynthConfig",
    "SynthResult",
    "clifford_circuit_of_frame",
    "format_pauli",
    "load_hamiltonian",
    "origin_frame",
    "parse_pauli",
    "retrace",
    "save_hamiltonian",
    "synth",
]
