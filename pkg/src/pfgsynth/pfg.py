"""Ultra-greedy walk over Pauli frames.

Each Hamiltonian term is tracked by its 2-bit local codes in the current
frame (``local[q, t]``).  A round first rotates every term whose relative
support is one, then picks the cheapest TQE gate among those that shrink a
minimum-support term.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._kernels import apply_tqe, pair_histograms, pair_weighted_histograms
from .circuit import Circuit, CircuitMetrics, Gate, metrics, reversed_circuit
from .frame import (
    CoordinateVector,
    SignedFrame,
    TQEGate,
    clifford_circuit_of_frame,
    reduction_table,
    tqe_action_table,
)
from .models.hamiltonian import PauliSumHamiltonian
from .pauli import PauliString, SignedPauli, multiply

__all__ = [
    "SynthConfig",
    "TermState",
    "SchedulerState",
    "RotationRecord",
    "SynthResult",
    "PFGWalk",
    "synth",
    "retrace",
    "candidate_gates",
    "cost",
]

TIE_BREAK_LEX = "lex"
TIE_BREAK_SPREAD = "spread"
TIE_BREAKS = (TIE_BREAK_SPREAD, TIE_BREAK_LEX)
# costs closer than this are treated as equal before tie-breaking
COST_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SynthConfig:
    credit: float = 0.1
    close_cycle: bool = False
    retrace: bool = False
    dt: float = 1.0
    tie_break: str = TIE_BREAK_SPREAD

    def __post_init__(self):
        if self.credit < 0:
            raise ValueError("credit must be non-negative")
        if self.close_cycle and self.retrace:
            raise ValueError("retrace and close_cycle are mutually exclusive")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"unknown tie-break policy {self.tie_break!r}")


@dataclass(frozen=True)
class TermState:
    term_id: int
    coords: CoordinateVector
    active: bool


@dataclass
class SchedulerState:
    """Per-qubit ASAP finish times; every gate lasts one unit."""

    last_finish: np.ndarray
    leading_edge: int = 0

    @classmethod
    def empty(cls, n_qubits: int) -> SchedulerState:
        return cls(np.zeros(n_qubits, dtype=np.int64), 0)

    def pace(self, i: int, j: int) -> int:
        return int(max(self.last_finish[i], self.last_finish[j])) - self.leading_edge

    def place(self, *qubits: int) -> None:
        t = int(max(self.last_finish[q] for q in qubits)) + 1
        for q in qubits:
            self.last_finish[q] = t
        self.leading_edge = max(self.leading_edge, t)


@dataclass(frozen=True)
class RotationRecord:
    """One emitted rotation: ``exp(-i angle/2 pauli)`` on the original term."""

    term_id: int
    pauli: PauliString
    angle: float
    gate_index: int


@dataclass
class SynthResult:
    circuit: Circuit
    final_frame: SignedFrame
    metrics: CircuitMetrics
    rotations: list[RotationRecord] = field(default_factory=list)


_AXIS = {1: "RZ", 2: "RX", 3: "RY"}


class PFGWalk:
    """Mutable state of one greedy synthesis run."""

    def __init__(self, h: PauliSumHamiltonian, cfg: SynthConfig | None = None):
        if len(h) == 0:
            raise ValueError("Hamiltonian has no terms")
        self.cfg = cfg or SynthConfig()
        self.h = h
        n, t = h.n_qubits, len(h)
        self.n_qubits = n
        self.coefs = np.array([c for c, _ in h.terms], dtype=float)
        self.paulis = [p for _, p in h.terms]
        local = np.zeros((n, t), dtype=np.uint8)
        for k, p in enumerate(self.paulis):
            for q in p.support():
                local[q, k] = 2 * ((p.x >> q) & 1) + ((p.z >> q) & 1)
        self.local = local
        self.support = np.count_nonzero(local, axis=0).astype(np.int64)
        self.active = np.ones(t, dtype=bool)
        self.n_active = t
        self.frame = SignedFrame.origin(n)
        self.sched = SchedulerState.empty(n)
        self.gates: list[Gate] = []
        self.rotations: list[RotationRecord] = []
        self.new_cfg, self.delta = tqe_action_table()
        self._reducers = reduction_table()

    @property
    def done(self) -> bool:
        return self.n_active == 0

    def term_state(self, t: int) -> TermState:
        a = b = 0
        for q in range(self.n_qubits):
            code = int(self.local[q, t])
            a |= (code >> 1) << q
            b |= (code & 1) << q
        return TermState(t, CoordinateVector(self.n_qubits, a, b), bool(self.active[t]))

    def emit_rotation(self, t: int) -> Gate:
        if not self.active[t] or self.support[t] != 1:
            raise ValueError(f"term {t} does not have relative support 1")
        q = int(np.flatnonzero(self.local[:, t])[0])
        code = int(self.local[q, t])
        if code == 1:
            sigma = self.frame.s[q]
        elif code == 2:
            sigma = self.frame.st[q]
        else:
            sigma = multiply(SignedPauli(self.frame.st[q].pauli, self.frame.st[q].phase_exp + 1), self.frame.s[q])
        if sigma.pauli != self.paulis[t] or not sigma.is_hermitian:
            raise AssertionError("frame coordinates out of sync with the frame")
        logical = 2.0 * float(self.coefs[t]) * self.cfg.dt
        sign = -1.0 if sigma.signbit else 1.0
        gate = Gate(_AXIS[code], (q,), sign * logical, t)
        self.rotations.append(RotationRecord(t, self.paulis[t], logical, len(self.gates)))
        self.gates.append(gate)
        self.sched.place(q)
        self.local[q, t] = 0
        self.support[t] = 0
        self.active[t] = False
        self.n_active -= 1
        return gate

    def emit_ready(self) -> list[Gate]:
        ready = np.flatnonzero(self.active & (self.support == 1))
        return [self.emit_rotation(int(t)) for t in ready]

    def min_support_terms(self) -> np.ndarray:
        sup = np.where(self.active, self.support, np.iinfo(np.int64).max)
        m = sup.min()
        return np.flatnonzero(sup == m)

    def candidate_gates(self, terms=None) -> np.ndarray:
        """Rows ``(i, j, g)`` sorted lexicographically, deduplicated."""
        if terms is None:
            terms = self.min_support_terms()
        keys = set()
        n = self.n_qubits
        for t in terms:
            qs = np.flatnonzero(self.local[:, t])
            if len(qs) < 2:
                raise ValueError(f"term {t} has support below 2")
            codes = self.local[qs, t]
            for (a, ca), (b, cb) in itertools.combinations(zip(qs.tolist(), codes.tolist()), 2):
                base = (a * n + b) * 9
                for g in self._reducers[4 * ca + cb]:
                    keys.add(base + g)
        k = np.fromiter(sorted(keys), dtype=np.int64, count=len(keys))
        g = k % 9
        pair = k // 9
        return np.stack([pair // n, pair % n, g], axis=1)

    def support_change(self, cands: np.ndarray) -> np.ndarray:
        """Total support change over active terms for each candidate row."""
        pairs, inv = np.unique(cands[:, 0] * self.n_qubits + cands[:, 1], return_inverse=True)
        pi = np.ascontiguousarray(pairs // self.n_qubits)
        pj = np.ascontiguousarray(pairs % self.n_qubits)
        hist = pair_histograms(self.local, pi, pj)
        delta = self.delta.astype(np.int64)
        return np.einsum("ck,ck->c", hist[inv.ravel()], delta[cands[:, 2]])

    def costs(self, cands: np.ndarray) -> np.ndarray:
        mean = self.support_change(cands) / self.n_active
        fin = self.sched.last_finish
        pace = np.maximum(fin[cands[:, 0]], fin[cands[:, 1]]) - self.sched.leading_edge
        return mean - self.cfg.credit * np.abs(pace)

    def spread_gain(self, cands: np.ndarray) -> np.ndarray:
        """Change in the sum of squared supports over active terms."""
        pairs, inv = np.unique(cands[:, 0] * self.n_qubits + cands[:, 1], return_inverse=True)
        pi = np.ascontiguousarray(pairs // self.n_qubits)
        pj = np.ascontiguousarray(pairs % self.n_qubits)
        counts = pair_histograms(self.local, pi, pj)[inv.ravel()]
        weighted = pair_weighted_histograms(self.local, pi, pj, self.support)[inv.ravel()]
        d = self.delta.astype(np.int64)[cands[:, 2]]
        return np.einsum("ck,ck->c", 2 * weighted + d * counts, d)

    def choose(self) -> TQEGate:
        cands = self.candidate_gates()
        c = self.costs(cands)
        tied = np.flatnonzero(c <= c.min() + COST_TOLERANCE)
        if len(tied) > 1 and self.cfg.tie_break == TIE_BREAK_SPREAD:
            gain = self.spread_gain(cands[tied])
            tied = tied[gain == gain.max()]
        # candidate rows are sorted by (i, j, g), so the first survivor is lexicographically least
        best = cands[tied[0]]
        return TQEGate.from_index(int(best[0]), int(best[1]), int(best[2]))

    def apply(self, tg: TQEGate) -> Gate:
        i, j, g = tg.qubit_i, tg.qubit_j, tg.index
        apply_tqe(self.local, self.support, i, j, self.new_cfg[g], self.delta[g])
        gate = tg.to_gate()
        self.frame.backward_apply(gate)
        self.sched.place(i, j)
        self.gates.append(gate)
        return gate

    def step(self) -> Gate | None:
        self.emit_ready()
        if self.done:
            return None
        return self.apply(self.choose())

    def run(self) -> None:
        while not self.done:
            self.step()

    def circuit(self) -> Circuit:
        return Circuit(self.n_qubits, self.gates)


def candidate_gates(walk: PFGWalk, terms=None) -> set[TQEGate]:
    return {TQEGate.from_index(int(i), int(j), int(g)) for i, j, g in walk.candidate_gates(terms)}


def cost(g: TQEGate, walk: PFGWalk) -> float:
    return float(walk.costs(np.array([[g.qubit_i, g.qubit_j, g.index]], dtype=np.int64))[0])


def retrace(circuit: Circuit) -> Circuit:
    """Append the mirrored circuit; rotation angles keep their sign."""
    return circuit + reversed_circuit(circuit)


def synth(h: PauliSumHamiltonian, cfg: SynthConfig | None = None) -> SynthResult:
    cfg = cfg or SynthConfig()
    walk = PFGWalk(h, cfg)
    walk.run()
    circ = walk.circuit()
    frame = walk.frame
    rotations = list(walk.rotations)
    if cfg.close_cycle:
        back = clifford_circuit_of_frame(frame)
        for g in back.gates:
            frame.backward_apply(g)
        circ = circ + back
    elif cfg.retrace:
        m = len(circ.gates)
        circ = retrace(circ)
        rotations += [
            RotationRecord(r.term_id, r.pauli, r.angle, 2 * m - 1 - r.gate_index)
            for r in reversed(walk.rotations)
        ]
        frame = SignedFrame.origin(h.n_qubits)
    return SynthResult(circ, frame, metrics(circ, len(h)), rotations)
