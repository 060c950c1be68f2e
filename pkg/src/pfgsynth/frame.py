"""Signed Pauli frames and the Clifford actions on them.

A frame after a Clifford circuit ``W`` (gates applied left to right in time)
holds rows ``s_q = W^dag Z_q W`` and ``st_q = W^dag X_q W`` as signed Paulis.
Appending a gate ``g`` is the *backward* action: each row becomes a product of
old rows, read off from ``V_g^dag Z_q V_g`` / ``V_g^dag X_q V_g``.  Phases are
carried exactly through those products, so the frame signs never need separate
update rules.  The *forward* action conjugates each row by ``V_g`` directly;
it is what a stabilizer tableau simulator does.

Per-term coordinates ``a_q = lambda(s_q, p)`` and ``b_q = lambda(st_q, p)`` are
packed into one local code ``2*a_q + b_q`` per qubit; a TQE gate on (i, j)
then acts on the 4-bit configuration ``4*code_i + code_j`` by table lookup.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _matrices as mats
from .circuit import TQE_NAMES, Circuit, Gate, tqe_types
from .pauli import PauliString, SignedPauli, multiply, symplectic_form

__all__ = [
    "SignedFrame",
    "TQEGate",
    "CoordinateVector",
    "origin_frame",
    "backward_apply",
    "forward_apply",
    "expand",
    "coord_update",
    "relative_support",
    "residual_pauli",
    "tqe_action_table",
    "reduction_table",
    "clifford_circuit_of_frame",
    "frame_of_circuit",
    "FrameError",
]


class FrameError(ValueError):
    """Frame relations violated (not a symplectic basis)."""


def _gate_matrix(kind: str) -> np.ndarray:
    if kind in TQE_NAMES:
        return mats.tqe_matrix(*tqe_types(kind))
    return {
        "SWAP": mats.SWAP,
        "H": mats.H,
        "P": mats.P,
        "PDG": mats.PDG,
        "X": mats.X,
        "Y": mats.Y,
        "Z": mats.Z,
    }[kind]


@functools.cache
def conjugation_table(kind: str, backward: bool) -> tuple[tuple[int, int, int], ...]:
    """Images of every local Pauli under the gate, by exact dense conjugation.

    Entry ``xl | (zl << k)`` (``k`` gate qubits, bit 0 = first gate qubit)
    holds ``(x', z', phase_exp)``.  ``backward`` uses ``U^dag P U``,
    otherwise ``U P U^dag``.
    """
    u = _gate_matrix(kind)
    k = 1 if u.shape[0] == 2 else 2
    out = []
    for idx in range(4**k):
        xl, zl = idx & ((1 << k) - 1), idx >> k
        xs = [(xl >> b) & 1 for b in range(k)]
        zs = [(zl >> b) & 1 for b in range(k)]
        p = mats.pauli_bits_matrix(xs, zs)
        img = u.conj().T @ p @ u if backward else u @ p @ u.conj().T
        nx, nz, ph = mats.identify_pauli(img, k)
        out.append(
            (sum(b << i for i, b in enumerate(nx)), sum(b << i for i, b in enumerate(nz)), ph)
        )
    return tuple(out)


def _local(x: int, z: int, qubits) -> tuple[int, int]:
    xl = zl = 0
    for b, q in enumerate(qubits):
        xl |= ((x >> q) & 1) << b
        zl |= ((z >> q) & 1) << b
    return xl, zl


def conjugate(p: SignedPauli, gate: Gate, backward: bool = False) -> SignedPauli:
    """``U p U^dag`` (or ``U^dag p U`` when ``backward``) for a Clifford gate."""
    qs = gate.qubits
    k = len(qs)
    xl, zl = _local(p.x, p.z, qs)
    nx, nz, ph = conjugation_table(gate.kind, backward)[xl | (zl << k)]
    x, z = p.x, p.z
    for b, q in enumerate(qs):
        m = 1 << q
        x = (x & ~m) | (((nx >> b) & 1) << q)
        z = (z & ~m) | (((nz >> b) & 1) << q)
    return SignedPauli.from_bits(p.n_qubits, x, z, p.phase_exp + ph)


class TQEGate(NamedTuple):
    """One of the nine entanglers on ``qubit_i < qubit_j``; CX is (Z, X)."""

    qubit_i: int
    qubit_j: int
    type_i: str
    type_j: str

    @classmethod
    def from_index(cls, i: int, j: int, g: int) -> TQEGate:
        return cls(i, j, *tqe_types(TQE_NAMES[g]))

    @property
    def index(self) -> int:
        return 3 * "XYZ".index(self.type_i) + "XYZ".index(self.type_j)

    @property
    def name(self) -> str:
        return TQE_NAMES[self.index]

    def to_gate(self) -> Gate:
        return Gate(self.name, (self.qubit_i, self.qubit_j))


class SignedFrame:
    """N pairs of signed rows ``(s_q, st_q)``; mutable walk state."""

    __slots__ = ("n_qubits", "s", "st")

    def __init__(self, n_qubits: int, s: list[SignedPauli], st: list[SignedPauli]):
        if len(s) != n_qubits or len(st) != n_qubits:
            raise FrameError("frame needs exactly n_qubits row pairs")
        self.n_qubits = n_qubits
        self.s = list(s)
        self.st = list(st)

    @classmethod
    def origin(cls, n_qubits: int) -> SignedFrame:
        s = [SignedPauli(PauliString.single(n_qubits, q, "Z")) for q in range(n_qubits)]
        st = [SignedPauli(PauliString.single(n_qubits, q, "X")) for q in range(n_qubits)]
        return cls(n_qubits, s, st)

    def copy(self) -> SignedFrame:
        return SignedFrame(self.n_qubits, self.s, self.st)

    @property
    def sign_s(self) -> list[int]:
        return [r.signbit for r in self.s]

    @property
    def sign_st(self) -> list[int]:
        return [r.signbit for r in self.st]

    def unsigned(self) -> list[tuple[PauliString, PauliString]]:
        return [(a.pauli, b.pauli) for a, b in zip(self.s, self.st)]

    def __eq__(self, other):
        return (
            isinstance(other, SignedFrame)
            and self.s == other.s
            and self.st == other.st
        )

    def same_unsigned(self, other: SignedFrame) -> bool:
        return self.unsigned() == other.unsigned()

    def is_origin(self, signed: bool = True) -> bool:
        o = SignedFrame.origin(self.n_qubits)
        return self == o if signed else self.same_unsigned(o)

    def check(self) -> None:
        """Raise FrameError unless the rows form a symplectic basis of Hermitian Paulis."""
        n = self.n_qubits
        rows = self.s + self.st
        if any(not r.is_hermitian for r in rows):
            raise FrameError("frame rows must be Hermitian")
        for i in range(n):
            for j in range(n):
                if symplectic_form(self.s[i].pauli, self.s[j].pauli):
                    raise FrameError(f"s_{i}, s_{j} anticommute")
                if symplectic_form(self.st[i].pauli, self.st[j].pauli):
                    raise FrameError(f"st_{i}, st_{j} anticommute")
                if symplectic_form(self.s[i].pauli, self.st[j].pauli) != (i == j):
                    raise FrameError(f"lambda(s_{i}, st_{j}) != delta")

    def is_valid(self) -> bool:
        try:
            self.check()
        except FrameError:
            return False
        return True

    def backward_apply(self, gate: Gate) -> SignedFrame:
        qs = gate.qubits
        k = len(qs)
        table = conjugation_table(gate.kind, True)
        new = {}
        for b, q in enumerate(qs):
            for which, idx in (("s", (1 << b) << k), ("st", 1 << b)):
                nx, nz, ph = table[idx]
                row = None
                for bb, qq in enumerate(qs):
                    if (nx >> bb) & 1:
                        row = self.st[qq] if row is None else multiply(row, self.st[qq])
                    if (nz >> bb) & 1:
                        row = self.s[qq] if row is None else multiply(row, self.s[qq])
                # P(x, z) = i**|x & z| X**x Z**z
                extra = ph + (nx & nz).bit_count()
                new[which, q] = SignedPauli(row.pauli, row.phase_exp + extra)
        for (which, q), row in new.items():
            getattr(self, which)[q] = row
        return self

    def forward_apply(self, gate: Gate) -> SignedFrame:
        self.s = [conjugate(r, gate) for r in self.s]
        self.st = [conjugate(r, gate) for r in self.st]
        return self

    def __repr__(self):
        rows = ", ".join(f"({a}, {b})" for a, b in zip(self.s, self.st))
        return f"SignedFrame({rows})"


def origin_frame(n_qubits: int) -> SignedFrame:
    if n_qubits < 1:
        raise ValueError("n_qubits must be positive")
    return SignedFrame.origin(n_qubits)


def backward_apply(frame: SignedFrame, gate: Gate) -> SignedFrame:
    """Append ``gate`` to the circuit the frame encodes (in place)."""
    if not gate.is_clifford:
        raise ValueError("only Clifford gates act on frames")
    return frame.backward_apply(gate)


def forward_apply(frame: SignedFrame, gate: Gate) -> SignedFrame:
    """Conjugate every row by the gate (in place)."""
    if not gate.is_clifford:
        raise ValueError("only Clifford gates act on frames")
    return frame.forward_apply(gate)


def frame_of_circuit(circuit: Circuit) -> SignedFrame:
    """Backward-apply the Clifford gates of ``circuit``; rotations are skipped."""
    f = SignedFrame.origin(circuit.n_qubits)
    for g in circuit.gates:
        if g.is_clifford:
            f.backward_apply(g)
    return f


@dataclass(frozen=True)
class CoordinateVector:
    """``p = sum_q a_q st_q + b_q s_q`` with ``a``/``b`` packed as ints."""

    n_qubits: int
    a: int
    b: int

    def local_code(self, q: int) -> int:
        return (((self.a >> q) & 1) << 1) | ((self.b >> q) & 1)

    def reconstruct(self, frame: SignedFrame) -> PauliString:
        x = z = 0
        for q in range(self.n_qubits):
            if (self.a >> q) & 1:
                x ^= frame.st[q].x
                z ^= frame.st[q].z
            if (self.b >> q) & 1:
                x ^= frame.s[q].x
                z ^= frame.s[q].z
        return PauliString(self.n_qubits, x, z)


def expand(p: PauliString, frame: SignedFrame) -> CoordinateVector:
    a = b = 0
    for q in range(frame.n_qubits):
        a |= symplectic_form(frame.s[q].pauli, p) << q
        b |= symplectic_form(frame.st[q].pauli, p) << q
    return CoordinateVector(frame.n_qubits, a, b)


def coord_update(coords: CoordinateVector, gate: Gate) -> CoordinateVector:
    """Coordinates of the same Pauli after backward-applying ``gate``."""
    qs = gate.qubits
    k = len(qs)
    table = conjugation_table(gate.kind, True)
    a, b = coords.a, coords.b
    na, nb = a, b
    for bit, q in enumerate(qs):
        for is_a, idx in ((True, (1 << bit) << k), (False, 1 << bit)):
            nx, nz, _ = table[idx]
            v = 0
            for bb, qq in enumerate(qs):
                if (nx >> bb) & 1:
                    v ^= (b >> qq) & 1
                if (nz >> bb) & 1:
                    v ^= (a >> qq) & 1
            if is_a:
                na = (na & ~(1 << q)) | (v << q)
            else:
                nb = (nb & ~(1 << q)) | (v << q)
    return CoordinateVector(coords.n_qubits, na, nb)


def relative_support(coords: CoordinateVector) -> int:
    return (coords.a | coords.b).bit_count()


def residual_pauli(frame: SignedFrame) -> SignedPauli:
    """Pauli ``p`` with ``W = V_B p``, where ``V_B`` gives the all-positive frame."""
    x = z = 0
    for q in range(frame.n_qubits):
        if frame.s[q].signbit:
            x ^= frame.st[q].x
            z ^= frame.st[q].z
        if frame.st[q].signbit:
            x ^= frame.s[q].x
            z ^= frame.s[q].z
    return SignedPauli.from_bits(frame.n_qubits, x, z)


def _nz(code: int) -> int:
    return int(code != 0)


@functools.cache
def _action_tables():
    new_cfg = np.zeros((9, 16), dtype=np.uint8)
    delta = np.zeros((9, 16), dtype=np.int8)
    for g, name in enumerate(TQE_NAMES):
        gate = Gate(name, (0, 1))
        for cfg in range(16):
            ci, cj = cfg >> 2, cfg & 3
            cv = CoordinateVector(2, (ci >> 1) | ((cj >> 1) << 1), (ci & 1) | ((cj & 1) << 1))
            out = coord_update(cv, gate)
            ni, nj = out.local_code(0), out.local_code(1)
            new_cfg[g, cfg] = 4 * ni + nj
            delta[g, cfg] = _nz(ni) + _nz(nj) - _nz(ci) - _nz(cj)
    new_cfg.setflags(write=False)
    delta.setflags(write=False)
    return new_cfg, delta


def tqe_action_table() -> tuple[np.ndarray, np.ndarray]:
    """``(new_cfg, delta)``, each indexed ``[gate, 4*code_i + code_j]``.

    Gate index is the position in ``TQE_NAMES``; ``delta`` is the change in
    relative support.
    """
    return _action_tables()


@functools.cache
def _reduction():
    new_cfg, delta = _action_tables()
    table = {}
    for ci, cj in itertools.product(range(1, 4), repeat=2):
        cfg = 4 * ci + cj
        table[cfg] = tuple(
            g for g in range(9) if delta[g, cfg] == -1 and (new_cfg[g, cfg] >> 2 == 0 or new_cfg[g, cfg] & 3 == 0)
        )
    return table


def reduction_table() -> dict[int, tuple[int, ...]]:
    """For each config with both codes nonzero, the TQE gates that clear one qubit."""
    return _reduction()


def forward_tableau(frame: SignedFrame) -> tuple[list[SignedPauli], list[SignedPauli]]:
    """Signed images ``W Z_q W^dag`` and ``W X_q W^dag`` of the encoded Clifford."""
    n = frame.n_qubits
    tz, tx = [], []
    for q in range(n):
        for target, out, attr in (("Z", tz, "x"), ("X", tx, "z")):
            # unsigned inverse map: sum_k lambda(s_k, e) X_k + lambda(st_k, e) Z_k
            x = z = 0
            for k in range(n):
                x |= ((getattr(frame.s[k], attr) >> q) & 1) << k
                z |= ((getattr(frame.st[k], attr) >> q) & 1) << k
            prod = SignedPauli(PauliString.identity(n), (x & z).bit_count())
            for k in range(n):
                if (x >> k) & 1:
                    prod = multiply(prod, frame.st[k])
                if (z >> k) & 1:
                    prod = multiply(prod, frame.s[k])
            expect = PauliString.single(n, q, target)
            if prod.pauli != expect or not prod.is_hermitian:
                raise FrameError("frame is not a symplectic basis")
            out.append(SignedPauli.from_bits(n, x, z, prod.phase_exp))
    return tz, tx


class _Reducer:
    def __init__(self, tz, tx):
        self.tz, self.tx = tz, tx
        self.gates: list[Gate] = []

    def apply(self, kind, *qs):
        g = Gate(kind, qs)
        self.tz = [conjugate(r, g) for r in self.tz]
        self.tx = [conjugate(r, g) for r in self.tx]
        self.gates.append(g)


def _bits_from(v: int, k: int):
    v >>= k
    q = k
    while v:
        if v & 1:
            yield q
        v >>= 1
        q += 1


def _eliminate(tz, tx, n) -> list[Gate]:
    red = _Reducer(tz, tx)
    for k in range(n):
        r = red.tx[k]
        if (r.x >> k) == 0:
            m = next(_bits_from(r.z, k))
            red.apply("H", m)
        r = red.tx[k]
        if not (r.x >> k) & 1:
            m = next(_bits_from(r.x, k))
            red.apply("CX", m, k)
        for q in list(_bits_from(red.tx[k].x, k + 1)):
            red.apply("CX", k, q)
        if red.tx[k].z >> (k + 1):
            if not (red.tx[k].z >> k) & 1:
                red.apply("P", k)
            for q in list(_bits_from(red.tx[k].z, k + 1)):
                red.apply("CX", q, k)
        if (red.tx[k].z >> k) & 1:
            red.apply("P", k)
        for q in range(k + 1, n):
            r = red.tz[k]
            xq, zq = (r.x >> q) & 1, (r.z >> q) & 1
            if xq and zq:
                red.apply("P", q)
                xq, zq = 1, 0
            if xq:
                red.apply("H", q)
            if xq or zq:
                red.apply("CX", q, k)
        if (red.tz[k].x >> k) & 1:
            red.apply("H", k)
            red.apply("P", k)
            red.apply("H", k)
    return red.gates


def _permute_bits(v: int, perm) -> int:
    return sum(((v >> old) & 1) << new for new, old in enumerate(perm))


def _elimination_orders(n: int, exhaustive_up_to: int):
    if n <= exhaustive_up_to:
        yield from itertools.permutations(range(n))
        return
    base = list(range(n))
    for shift in range(n):
        rot = base[shift:] + base[:shift]
        yield tuple(rot)
        yield tuple(reversed(rot))


def _eliminate_in_order(tz, tx, n, perm) -> list[Gate]:
    def relabel(r):
        return SignedPauli.from_bits(n, _permute_bits(r.x, perm), _permute_bits(r.z, perm), r.phase_exp)

    gates = _eliminate([relabel(tz[q]) for q in perm], [relabel(tx[q]) for q in perm], n)
    return [Gate(g.kind, tuple(perm[q] for q in g.qubits)) for g in gates]


def _tqe_depth(gates: list[Gate], n: int) -> int:
    finish = [0] * n
    for g in gates:
        if g.is_tqe:
            t = max(finish[q] for q in g.qubits) + 1
            for q in g.qubits:
                finish[q] = t
    return max(finish, default=0)


def clifford_circuit_of_frame(
    frame: SignedFrame, include_residual: bool = True, exhaustive_up_to: int = 5
) -> Circuit:
    """Gates whose backward action takes ``frame`` to the origin.

    The Clifford part uses CX/H/P from tableau elimination, repeated over
    several pivot orders (all of them for ``n <= exhaustive_up_to``) keeping
    the fewest TQE gates, then the lowest TQE depth.  With
    ``include_residual`` the remaining signs are cleared by appending the
    residual Pauli as single-qubit Pauli gates.
    """
    n = frame.n_qubits
    frame.check()
    tz, tx = forward_tableau(frame)
    best = None
    for perm in _elimination_orders(n, exhaustive_up_to):
        gates = _eliminate_in_order(tz, tx, n, perm)
        key = (sum(g.is_tqe for g in gates), _tqe_depth(gates, n), len(gates))
        if best is None or key < best[0]:
            best = (key, gates)
    gates = best[1]
    if include_residual:
        f = frame.copy()
        for g in gates:
            f.backward_apply(g)
        if not f.is_origin(signed=False):
            raise FrameError("elimination did not reach the origin frame")
        res = residual_pauli(f).pauli
        for q in range(n):
            ch = res.char(q)
            if ch != "I":
                gates.append(Gate(ch, (q,)))
    return Circuit(n, gates)
