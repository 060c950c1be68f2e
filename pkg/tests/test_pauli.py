import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfgsynth.pauli import (
    DimensionError,
    PauliString,
    SignedPauli,
    format_pauli,
    multiply,
    parse_pauli,
    symplectic_form,
)
from pfgsynth.verify import dense_of_pauli


@st.composite
def signed_paulis(draw, n=None):
    n = n or draw(st.integers(1, 4))
    x = draw(st.integers(0, 2**n - 1))
    z = draw(st.integers(0, 2**n - 1))
    return SignedPauli(PauliString(n, x, z), draw(st.integers(0, 3)))


@st.composite
def pauli_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(signed_paulis(n)), draw(signed_paulis(n))


def test_single_qubit_matrices():
    y = dense_of_pauli(parse_pauli("Y").pauli)
    assert np.allclose(y, [[0, -1j], [1j, 0]])


def test_label_ordering_puts_qubit_zero_first():
    p = parse_pauli("XIZ").pauli
    assert p.x == 0b001 and p.z == 0b100
    assert p.support() == [0, 2]


def test_product_of_zz_blocks():
    a, b = parse_pauli("ZZII"), parse_pauli("IIZZ")
    prod = multiply(a, b)
    assert prod.pauli.label() == "ZZZZ" and prod.phase_exp == 0


def test_xz_product_phase():
    assert multiply(parse_pauli("X"), parse_pauli("Z")).phase_exp == 3  # XZ = -iY
    assert multiply(parse_pauli("Z"), parse_pauli("X")).phase_exp == 1


@given(pauli_pairs())
def test_multiply_matches_dense(pair):
    a, b = pair
    got = dense_of_pauli(multiply(a, b))
    assert np.allclose(got, dense_of_pauli(a) @ dense_of_pauli(b))


@given(pauli_pairs())
def test_symplectic_form_is_commutation(pair):
    a, b = (s.pauli for s in pair)
    ma, mb = dense_of_pauli(a), dense_of_pauli(b)
    commute = np.allclose(ma @ mb, mb @ ma)
    assert symplectic_form(a, b) == (0 if commute else 1)
    assert symplectic_form(a, b) == symplectic_form(b, a)


@given(signed_paulis())
def test_dense_format_round_trip(p):
    assert parse_pauli(format_pauli(p), p.n_qubits) == p


@given(signed_paulis())
def test_sparse_format_round_trip(p):
    assert parse_pauli(format_pauli(p, sparse=True), p.n_qubits) == p


def test_sparse_parse():
    p = parse_pauli("-X0 Y2", 4)
    assert p.phase_exp == 2 and p.pauli.label() == "XIYI"


@pytest.mark.parametrize("bad", ["X0 X0", "Q1", "X9"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_pauli(bad, 3)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        symplectic_form(PauliString(2, 1, 0), PauliString(3, 1, 0))


def test_signbit_requires_hermitian():
    assert SignedPauli(PauliString(1, 1, 0), 2).signbit == 1
    with pytest.raises(ValueError):
        SignedPauli(PauliString(1, 1, 0), 1).signbit


def test_addition_is_bitwise_xor():
    labels = ["IX", "ZY", "YY"]
    ps = [parse_pauli(s).pauli for s in labels]
    for a, b in itertools.product(ps, repeat=2):
        assert (a + b) == multiply(SignedPauli(a), SignedPauli(b)).pauli
