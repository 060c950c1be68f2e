"""Reference pipeline: commuting groups, CX staircases, adjacent-gate cancellation."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .circuit import CX, Circuit, CircuitMetrics, Gate, metrics
from .models.hamiltonian import PauliSumHamiltonian
from .pauli import PauliString, symplectic_form
from .pfg import RotationRecord

__all__ = [
    "CancelConfig",
    "BaselineResult",
    "commuting_groups",
    "staircase",
    "cancel_adjacent",
    "synth_baseline",
]


@dataclass(frozen=True)
class CancelConfig:
    time_limit: float = 60.0
    passes: int | None = None


@dataclass
class BaselineResult:
    circuit: Circuit
    metrics: CircuitMetrics
    rotations: list[RotationRecord]
    groups: list[list[int]]
    pre_cancel_tqe: int


def commuting_groups(h: PauliSumHamiltonian) -> list[list[int]]:
    """First-fit partition of term indices into mutually commuting groups."""
    groups: list[list[int]] = []
    for t, (_, p) in enumerate(h.terms):
        for grp in groups:
            if all(symplectic_form(p, h.terms[u][1]) == 0 for u in grp):
                grp.append(t)
                break
        else:
            groups.append([t])
    return groups


_BASIS_IN = {"Z": (), "X": ("H",), "Y": ("PDG", "H")}
_BASIS_OUT = {"Z": (), "X": ("H",), "Y": ("H", "P")}


def staircase(term: PauliString, angle: float, term_id: int | None = None) -> list[Gate]:
    """exp(-i angle/2 term) as basis change, CX ladder onto the top qubit, RZ, mirror."""
    qs = term.support()
    if not qs:
        raise ValueError("identity term has no staircase")
    pre = [Gate(k, (q,)) for q in qs for k in _BASIS_IN[term.char(q)]]
    ladder = [CX(a, b) for a, b in zip(qs, qs[1:])]
    post = [Gate(k, (q,)) for q in qs for k in _BASIS_OUT[term.char(q)]]
    return pre + ladder + [Gate("RZ", (qs[-1],), angle, term_id)] + ladder[::-1] + post


def _inverse_pair(a: Gate, b: Gate) -> bool:
    if a.qubits != b.qubits or a.is_rotation or b.is_rotation:
        return False
    return a.inverse() == b


def _cancel_pass(gates: list[Gate | None], n_qubits: int) -> bool:
    """One sweep over the dependency graph; returns whether anything changed."""
    # for each qubit, the index of the latest surviving gate on it
    last: list[int | None] = [None] * n_qubits
    changed = False
    for k, g in enumerate(gates):
        if g is None:
            continue
        prev = {last[q] for q in g.qubits}
        if len(prev) == 1 and None not in prev:
            p = prev.pop()
            h = gates[p]
            if h.qubits == g.qubits:
                if _inverse_pair(h, g):
                    gates[p] = gates[k] = None
                    changed = True
                    _rewind(gates, last, g.qubits, p)
                    continue
                if g.is_rotation and h.kind == g.kind:
                    theta = h.angle + g.angle
                    gates[k] = None
                    tid = h.term_id if h.term_id == g.term_id else None
                    gates[p] = Gate(h.kind, h.qubits, theta, tid)
                    if abs(gates[p].angle) < 1e-12:
                        gates[p] = None
                        _rewind(gates, last, g.qubits, p)
                    changed = True
                    continue
        for q in g.qubits:
            last[q] = k
    return changed


def _rewind(gates, last, qubits, before):
    for q in qubits:
        last[q] = None
        for k in range(before - 1, -1, -1):
            g = gates[k]
            if g is not None and q in g.qubits:
                last[q] = k
                break


def cancel_adjacent(circuit: Circuit, cfg: CancelConfig | None = None) -> Circuit:
    """Remove dependency-adjacent inverse pairs and merge same-axis rotations."""
    cfg = cfg or CancelConfig()
    deadline = time.monotonic() + cfg.time_limit
    gates: list[Gate | None] = list(circuit.gates)
    sweeps = 0
    while time.monotonic() < deadline and (cfg.passes is None or sweeps < cfg.passes):
        sweeps += 1
        if not _cancel_pass(gates, circuit.n_qubits):
            break
        gates = [g for g in gates if g is not None]
    return Circuit(circuit.n_qubits, [g for g in gates if g is not None])


def synth_baseline(
    h: PauliSumHamiltonian, dt: float = 1.0, cfg: CancelConfig | None = None
) -> BaselineResult:
    if len(h) == 0:
        raise ValueError("Hamiltonian has no terms")
    groups = commuting_groups(h)
    gates: list[Gate] = []
    rotations = []
    for grp in groups:
        for t in grp:
            c, p = h.terms[t]
            angle = 2.0 * c * dt
            rotations.append(RotationRecord(t, p, angle, len(gates)))
            gates += staircase(p, angle, t)
    raw = Circuit(h.n_qubits, gates)
    out = cancel_adjacent(raw, cfg)
    # merged rotations keep emission order; gate indices refer to the raw circuit
    return BaselineResult(out, metrics(out, len(h)), rotations, groups, raw.tqe_count)
