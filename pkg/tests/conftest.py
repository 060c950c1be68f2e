from __future__ import annotations

import random

import numpy as np
import pytest

from pfgsynth.circuit import TQE_NAMES, Circuit, Gate
from pfgsynth.frame import SignedFrame
from pfgsynth.models.hamiltonian import PauliSumHamiltonian
from pfgsynth.pauli import PauliString

FIXTURE_TEXT = """\
qubits 4
0.1 ZZII
0.2 IZZI
0.3 IIZZ
0.4 ZIIZ
0.5 ZZZZ
"""

CLIFFORD_1Q = ("H", "P", "PDG", "X", "Y", "Z")


def random_pauli(rng: random.Random, n: int, nonidentity: bool = True) -> PauliString:
    while True:
        p = PauliString(n, rng.getrandbits(n), rng.getrandbits(n))
        if not (nonidentity and p.is_identity):
            return p


def random_clifford_gate(rng: random.Random, n: int, two_qubit_share: float = 0.5) -> Gate:
    if n > 1 and rng.random() < two_qubit_share:
        i, j = rng.sample(range(n), 2)
        kind = rng.choice(TQE_NAMES + ("SWAP",))
        return Gate(kind, (i, j))
    return Gate(rng.choice(CLIFFORD_1Q), (rng.randrange(n),))


def random_clifford_circuit(rng: random.Random, n: int, length: int) -> Circuit:
    return Circuit(n, [random_clifford_gate(rng, n) for _ in range(length)])


def random_frame(rng: random.Random, n: int, length: int = 20) -> SignedFrame:
    f = SignedFrame.origin(n)
    for g in random_clifford_circuit(rng, n, length).gates:
        f.backward_apply(g)
    return f


def random_hamiltonian(rng: random.Random, n: int, n_terms: int) -> PauliSumHamiltonian:
    terms = {}
    while len(terms) < n_terms:
        p = random_pauli(rng, n)
        terms[p] = rng.uniform(-1, 1) or 0.5
    return PauliSumHamiltonian.from_terms(n, [(c, p) for p, c in terms.items()])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def fixture_hamiltonian() -> PauliSumHamiltonian:
    from pfgsynth.models.hamiltonian import loads_hamiltonian

    return loads_hamiltonian(FIXTURE_TEXT)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.VERDICTS:
            terminalreporter.write_line(line)
