import itertools
import random
from collections import Counter

import numpy as np
import pytest

from pfgsynth.circuit import CX, TQE_NAMES, Circuit, Gate, reversed_circuit
from pfgsynth.frame import (
    CoordinateVector,
    FrameError,
    SignedFrame,
    backward_apply,
    clifford_circuit_of_frame,
    conjugate,
    conjugation_table,
    coord_update,
    expand,
    forward_apply,
    frame_of_circuit,
    origin_frame,
    reduction_table,
    relative_support,
    residual_pauli,
    tqe_action_table,
)
from pfgsynth.pauli import PauliString, SignedPauli, multiply, parse_pauli, symplectic_form
from pfgsynth.verify import dense_of_circuit, dense_of_pauli, equal_up_to_phase, tableau_cross_check

from .conftest import random_clifford_circuit, random_clifford_gate, random_frame, random_pauli

ALL_CLIFFORD_KINDS = TQE_NAMES + ("SWAP", "H", "P", "PDG", "X", "Y", "Z")


def sp(label: str) -> SignedPauli:
    return parse_pauli(label)


def is_pauli_up_to_phase(m: np.ndarray, n: int) -> bool:
    for x, z in itertools.product(range(2**n), repeat=2):
        p = dense_of_pauli(PauliString(n, x, z))
        if equal_up_to_phase(m, p):
            return True
    return False


def gate_on(kind: str) -> Gate:
    return Gate(kind, (0, 1)) if kind in TQE_NAMES or kind == "SWAP" else Gate(kind, (0,))


@pytest.mark.parametrize("kind", ALL_CLIFFORD_KINDS)
@pytest.mark.parametrize("backward", [False, True])
def test_conjugation_matches_dense(kind, backward):
    g = gate_on(kind)
    n = len(g.qubits)
    v = dense_of_circuit(Circuit(n, [g]))
    for x, z in itertools.product(range(2**n), repeat=2):
        p = SignedPauli.from_bits(n, x, z)
        m = dense_of_pauli(p)
        expect = v.conj().T @ m @ v if backward else v @ m @ v.conj().T
        assert np.allclose(dense_of_pauli(conjugate(p, g, backward)), expect)


def test_forward_cx_images():
    cx = CX(0, 1)
    assert conjugate(sp("XI"), cx) == sp("XX")
    assert conjugate(sp("IZ"), cx) == sp("ZZ")


def test_cx_and_cz_differ_on_target_z():
    assert conjugate(sp("IZ"), Gate("CX", (0, 1))) != conjugate(sp("IZ"), Gate("CZ", (0, 1)))


def test_table_layout_for_cx():
    table = conjugation_table("CX", False)
    # input index packs x bits low, z bits high
    assert table[0b01][:2] == (0b11, 0)


def test_backward_cx_on_origin():
    f = backward_apply(origin_frame(2), CX(0, 1))
    assert f.unsigned() == [(sp("ZI").pauli, sp("XX").pauli), (sp("ZZ").pauli, sp("IX").pauli)]
    assert f.sign_s == [0, 0] and f.sign_st == [0, 0]


def test_backward_rows_match_dense(rng):
    for _ in range(40):
        n = rng.randint(1, 4)
        c = random_clifford_circuit(rng, n, 15)
        w = dense_of_circuit(c)
        f = frame_of_circuit(c)
        for q in range(n):
            for row, kind in ((f.s[q], "Z"), (f.st[q], "X")):
                target = dense_of_pauli(PauliString.single(n, q, kind))
                assert np.allclose(dense_of_pauli(row), w.conj().T @ target @ w)


def test_forward_apply_is_conjugation(rng):
    n = 3
    c = random_clifford_circuit(rng, n, 20)
    f = origin_frame(n)
    for g in c.gates:
        forward_apply(f, g)
    w = dense_of_circuit(c)
    for q in range(n):
        assert np.allclose(dense_of_pauli(f.s[q]), w @ dense_of_pauli(PauliString.single(n, q, "Z")) @ w.conj().T)


def test_frame_invariants_survive_many_gates():
    r = random.Random(7)
    n = 16
    f = origin_frame(n)
    for k in range(10_000):
        g = random_clifford_gate(r, n)
        if k % 2:
            backward_apply(f, g)
        else:
            forward_apply(f, g)
        if k % 250 == 0:
            f.check()
    f.check()


def test_invalid_frame_detected():
    f = origin_frame(2)
    f.s[1] = f.s[0]
    assert not f.is_valid()
    with pytest.raises(FrameError):
        clifford_circuit_of_frame(f)


def test_rotation_gate_rejected():
    with pytest.raises(ValueError):
        backward_apply(origin_frame(1), Gate("RZ", (0,), 0.1))


def test_expand_reconstructs(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        f = random_frame(rng, n)
        p = random_pauli(rng, n, nonidentity=False)
        assert expand(p, f).reconstruct(f) == p


def test_coord_update_tracks_backward_action(rng):
    for _ in range(300):
        n = rng.randint(2, 5)
        f = random_frame(rng, n)
        p = random_pauli(rng, n)
        g = random_clifford_gate(rng, n)
        before = expand(p, f)
        f.backward_apply(g)
        assert coord_update(before, g) == expand(p, f)


def _coord_form(u: CoordinateVector, v: CoordinateVector) -> int:
    return ((u.a & v.b).bit_count() + (u.b & v.a).bit_count()) & 1


def test_coordinate_maps_preserve_symplectic_form(rng):
    for _ in range(300):
        n = rng.randint(2, 5)
        f = random_frame(rng, n)
        p, q = random_pauli(rng, n), random_pauli(rng, n)
        cp, cq = expand(p, f), expand(q, f)
        assert _coord_form(cp, cq) == symplectic_form(p, q)
        g = random_clifford_gate(rng, n)
        assert _coord_form(coord_update(cp, g), coord_update(cq, g)) == symplectic_form(p, q)


def test_expansion_after_first_block():
    f = origin_frame(4)
    for g in (CX(0, 1), CX(2, 3)):
        f.backward_apply(g)
    assert relative_support(expand(sp("ZZZZ").pauli, f)) == 2
    assert relative_support(expand(sp("IZZI").pauli, f)) == 3
    assert relative_support(expand(sp("ZZII").pauli, f)) == 1


def test_single_cx_computes_zz():
    f = backward_apply(origin_frame(2), CX(0, 1))
    assert relative_support(expand(sp("ZZ").pauli, f)) == 1


def test_residual_pauli_is_the_sign_defect(rng):
    for _ in range(50):
        n = rng.randint(1, 4)
        c = random_clifford_circuit(rng, n, 25)
        f = frame_of_circuit(c)
        back = clifford_circuit_of_frame(f, include_residual=False)
        g = f.copy()
        for gate in back.gates:
            g.backward_apply(gate)
        assert g.is_origin(signed=False)
        res = residual_pauli(g)
        # W V = p, with W V the unsigned-origin Clifford
        assert equal_up_to_phase(dense_of_circuit(c + back), dense_of_pauli(res))


def test_return_path_examples():
    assert clifford_circuit_of_frame(origin_frame(3)).gates == ()
    f = backward_apply(origin_frame(2), CX(0, 1))
    assert clifford_circuit_of_frame(f).gates == (CX(0, 1),)


def test_return_path_restores_signed_origin(rng):
    for _ in range(30):
        c = random_clifford_circuit(rng, 5, 30)
        f = frame_of_circuit(c)
        for g in clifford_circuit_of_frame(f.copy()).gates:
            f.backward_apply(g)
        assert f.is_origin(signed=True)


def test_transport_unique_up_to_pauli(rng):
    n = 3
    for _ in range(20):
        c1 = random_clifford_circuit(rng, n, 20)
        c2 = random_clifford_circuit(rng, n, 20)
        target = frame_of_circuit(c2)
        # route 1: via the elimination circuit; route 2: undo c1 gate by gate
        via_origin = clifford_circuit_of_frame(frame_of_circuit(c1), include_residual=False) + c2
        undo = reversed_circuit(c1) + c2
        for route in (via_origin, undo):
            assert frame_of_circuit(c1 + route).same_unsigned(target)
        diff = dense_of_circuit(via_origin).conj().T @ dense_of_circuit(undo)
        assert is_pauli_up_to_phase(diff, n)


def test_tableau_cross_check_examples(rng):
    assert tableau_cross_check(Circuit(2))
    assert conjugate(sp("X"), Gate("P", (0,))) == sp("Y")
    assert tableau_cross_check(random_clifford_circuit(rng, 5, 200))


class TestActionTable:
    def test_involution(self):
        new_cfg, delta = tqe_action_table()
        for g in range(9):
            assert (new_cfg[g][new_cfg[g]] == np.arange(16)).all()
            assert (delta[g][new_cfg[g]] == -delta[g]).all()

    def test_identity_fixed(self):
        new_cfg, delta = tqe_action_table()
        assert (new_cfg[:, 0] == 0).all() and (delta[:, 0] == 0).all()

    def test_agrees_with_frames(self, rng):
        new_cfg, delta = tqe_action_table()
        for _ in range(300):
            n = rng.randint(2, 5)
            f = random_frame(rng, n)
            p = random_pauli(rng, n)
            i, j = sorted(rng.sample(range(n), 2))
            gi = rng.randrange(9)
            before = expand(p, f)
            cfg = 4 * before.local_code(i) + before.local_code(j)
            f.backward_apply(Gate(TQE_NAMES[gi], (i, j)))
            after = expand(p, f)
            assert 4 * after.local_code(i) + after.local_code(j) == new_cfg[gi, cfg]
            assert relative_support(after) - relative_support(before) == delta[gi, cfg]

    def test_four_reducers_per_configuration(self):
        table = reduction_table()
        assert sorted(table) == [4 * a + b for a in range(1, 4) for b in range(1, 4)]
        assert all(len(v) == 4 for v in table.values())


def support_fingerprint(frame: SignedFrame) -> tuple[int, ...]:
    """Relative support of every nonzero Pauli, in a fixed order.

    The bare multiset of these values is the same for every 2-qubit frame,
    so the Pauli-indexed vector is what carries the information.
    """
    n = frame.n_qubits
    return tuple(
        relative_support(expand(PauliString(n, x, z), frame))
        for x, z in itertools.product(range(2**n), repeat=2)
        if x or z
    )


def test_fingerprint_is_eef_invariant(rng):
    for _ in range(20):
        f = random_frame(rng, 2, 10)
        before = support_fingerprint(f)
        for _ in range(5):
            f.backward_apply(random_free_gate(rng, 2))
        assert support_fingerprint(f) == before


def random_free_gate(rng, n):
    kind = rng.choice(["H", "P", "PDG", "SWAP"])
    if kind == "SWAP":
        return Gate(kind, tuple(rng.sample(range(n), 2)))
    return Gate(kind, (rng.randrange(n),))


def test_multiset_of_supports_is_uninformative():
    for name in TQE_NAMES:
        f = backward_apply(origin_frame(2), Gate(name, (0, 1)))
        assert sorted(Counter(support_fingerprint(f)).items()) == [(1, 6), (2, 9)]


def test_tqe_images_in_distinct_classes():
    prints = {support_fingerprint(origin_frame(2))}
    for name in TQE_NAMES:
        prints.add(support_fingerprint(backward_apply(origin_frame(2), Gate(name, (0, 1)))))
    assert len(prints) == 10


def test_supp_anchor_cx_vs_cz():
    z1 = sp("IZ").pauli
    assert relative_support(expand(z1, backward_apply(origin_frame(2), CX(0, 1)))) == 2
    assert relative_support(expand(z1, backward_apply(origin_frame(2), Gate("CZ", (0, 1))))) == 1


def test_frame_contains_products_of_pairs():
    f = backward_apply(origin_frame(2), CX(0, 1))
    assert multiply(f.s[0], f.st[0]).pauli == parse_pauli("YX").pauli
