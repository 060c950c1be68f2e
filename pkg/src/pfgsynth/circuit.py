"""Circuit IR over the Clifford+RZ gate set with TQE gates as first-class kinds.

TQE gates are named by row letter (type on the lower qubit: A=X, B=Y, C=Z)
and column letter (type on the higher qubit), so ``CX`` is the usual CNOT
and ``AZ`` on (0, 1) is a CNOT controlled by qubit 1.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

__all__ = [
    "PAULI_TYPES",
    "TQE_NAMES",
    "Gate",
    "Circuit",
    "CircuitMetrics",
    "tqe_name",
    "tqe_types",
    "wrap_angle",
    "expand_tqe",
    "asap_schedule",
    "metrics",
    "export_text",
    "import_text",
    "CircuitParseError",
]

PAULI_TYPES = ("X", "Y", "Z")
_ROW = "ABC"
TQE_NAMES = tuple(_ROW[a] + PAULI_TYPES[b] for a in range(3) for b in range(3))
ROTATIONS = ("RX", "RY", "RZ")
ONE_QUBIT_CLIFFORDS = ("H", "P", "PDG", "X", "Y", "Z")
_INVERSE_1Q = {"H": "H", "P": "PDG", "PDG": "P", "X": "X", "Y": "Y", "Z": "Z"}
KINDS = frozenset(TQE_NAMES) | {"SWAP"} | set(ONE_QUBIT_CLIFFORDS) | set(ROTATIONS)


def tqe_name(u: str, v: str) -> str:
    return _ROW[PAULI_TYPES.index(u)] + v


def tqe_types(name: str) -> tuple[str, str]:
    return PAULI_TYPES[_ROW.index(name[0])], name[1]


def wrap_angle(theta: float) -> float:
    """Map into (-pi, pi]; changes the rotation by at most a global sign."""
    t = math.remainder(theta, 2 * math.pi)
    if t <= -math.pi:
        t += 2 * math.pi
    return t


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    term_id: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qs = tuple(int(q) for q in self.qubits)
        two = self.kind in TQE_NAMES or self.kind == "SWAP"
        if len(qs) != (2 if two else 1):
            raise ValueError(f"{self.kind} takes {2 if two else 1} qubit(s), got {qs}")
        if two:
            if qs[0] == qs[1]:
                raise ValueError(f"{self.kind} needs distinct qubits")
            if qs[0] > qs[1]:
                qs = (qs[1], qs[0])
                if self.kind != "SWAP":
                    u, v = tqe_types(self.kind)
                    object.__setattr__(self, "kind", tqe_name(v, u))
        object.__setattr__(self, "qubits", qs)
        if self.kind in ROTATIONS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError("rotation gates need a finite angle")
            object.__setattr__(self, "angle", wrap_angle(float(self.angle)))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    @property
    def is_tqe(self) -> bool:
        return self.kind in TQE_NAMES

    @property
    def is_rotation(self) -> bool:
        return self.kind in ROTATIONS

    @property
    def is_clifford(self) -> bool:
        return self.kind not in ROTATIONS

    @property
    def tqe_count(self) -> int:
        if self.kind in TQE_NAMES:
            return 1
        return 3 if self.kind == "SWAP" else 0

    def inverse(self) -> Gate:
        if self.kind in _INVERSE_1Q:
            return Gate(_INVERSE_1Q[self.kind], self.qubits)
        if self.is_rotation:
            return Gate(self.kind, self.qubits, -self.angle, self.term_id)
        return self


def CX(i: int, j: int) -> Gate:
    return Gate("CX", (i, j))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits or min(g.qubits) < 0:
                raise ValueError(f"gate {g} outside {self.n_qubits} qubits")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    @property
    def tqe_count(self) -> int:
        return sum(g.tqe_count for g in self.gates)

    def rotations(self) -> list[Gate]:
        return [g for g in self.gates if g.is_rotation]


# basis changes taking type u to Z on the lower qubit / type v to X on the higher
_PRE_I = {"Z": (), "X": ("H",), "Y": ("PDG", "H")}
_POST_I = {"Z": (), "X": ("H",), "Y": ("H", "P")}
_PRE_J = {"X": (), "Z": ("H",), "Y": ("PDG",)}
_POST_J = {"X": (), "Z": ("H",), "Y": ("P",)}


def expand_tqe(gate: Gate) -> list[Gate]:
    """Standard-gate sequence (single-qubit Cliffords around one CX)."""
    if gate.kind == "SWAP":
        i, j = gate.qubits
        return [e for g in (CX(i, j), Gate("AZ", (i, j)), CX(i, j)) for e in expand_tqe(g)]
    if not gate.is_tqe:
        return [gate]
    i, j = gate.qubits
    u, v = tqe_types(gate.kind)
    out = [Gate(k, (i,)) for k in _PRE_I[u]] + [Gate(k, (j,)) for k in _PRE_J[v]]
    out.append(CX(i, j))
    out += [Gate(k, (i,)) for k in _POST_I[u]] + [Gate(k, (j,)) for k in _POST_J[v]]
    return out


def expand_circuit(circuit: Circuit) -> Circuit:
    return Circuit(circuit.n_qubits, [e for g in circuit.gates for e in expand_tqe(g)])


def asap_schedule(
    circuit: Circuit,
    cost_model: Callable[[Gate], float] | dict[str, float] | None = None,
) -> tuple[list[float], float]:
    """ASAP start time for every gate, and total depth."""
    if cost_model is None:
        duration = lambda g: 1  # noqa: E731
    elif isinstance(cost_model, dict):
        duration = lambda g: cost_model.get(g.kind, 1)  # noqa: E731
    else:
        duration = cost_model
    finish = [0] * circuit.n_qubits
    starts = []
    depth = 0
    for g in circuit.gates:
        t0 = max(finish[q] for q in g.qubits)
        t1 = t0 + duration(g)
        for q in g.qubits:
            finish[q] = t1
        starts.append(t0)
        depth = max(depth, t1)
    return starts, depth


@dataclass(frozen=True)
class CircuitMetrics:
    n_terms: int
    tqe_count: int
    tqe_per_term: float
    depth_all_gates: int
    depth_tqe_only: int
    rotation_count: int

    FIELDS = (
        "n_terms",
        "tqe_count",
        "tqe_per_term",
        "depth_all_gates",
        "depth_tqe_only",
        "rotation_count",
    )

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    def to_csv(self) -> str:
        vals = [repr(v) if isinstance(v, float) else str(v) for v in self.as_dict().values()]
        return ",".join(self.FIELDS) + "\n" + ",".join(vals) + "\n"


def metrics(circuit: Circuit, n_terms: int) -> CircuitMetrics:
    if n_terms <= 0:
        raise ValueError("n_terms must be positive")
    tqe = circuit.tqe_count
    _, depth_all = asap_schedule(circuit)
    tqe_only = Circuit(circuit.n_qubits, [g for g in circuit.gates if g.tqe_count])
    _, depth_tqe = asap_schedule(tqe_only, lambda g: g.tqe_count)
    return CircuitMetrics(
        n_terms=n_terms,
        tqe_count=tqe,
        tqe_per_term=tqe / n_terms,
        depth_all_gates=int(depth_all),
        depth_tqe_only=int(depth_tqe),
        rotation_count=sum(1 for g in circuit.gates if g.is_rotation),
    )


class CircuitParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _gate_line(g: Gate) -> str:
    s = f"{g.kind} {','.join(map(str, g.qubits))}"
    if g.angle is not None:
        s += f" {g.angle!r}"
    if g.term_id is not None:
        s += f" @{g.term_id}"
    return s


def export_text(circuit: Circuit, expand: bool = False) -> str:
    """One gate per line after a ``qubits N`` header.

    ``expand`` rewrites TQE gates as H/P/PDG around CX so the output uses
    the plain Clifford+RZ set.
    """
    gates: Iterable[Gate] = expand_circuit(circuit).gates if expand else circuit.gates
    lines = [f"qubits {circuit.n_qubits}"]
    lines += [_gate_line(g) for g in gates]
    return "\n".join(lines) + "\n"


def import_text(text: str) -> Circuit:
    n_qubits = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n_qubits is None:
            if parts[0] != "qubits" or len(parts) != 2:
                raise CircuitParseError(lineno, "expected 'qubits N' header")
            try:
                n_qubits = int(parts[1])
            except ValueError:
                raise CircuitParseError(lineno, f"bad qubit count {parts[1]!r}") from None
            continue
        term_id = None
        if parts[-1].startswith("@"):
            try:
                term_id = int(parts.pop()[1:])
            except ValueError:
                raise CircuitParseError(lineno, "bad term id") from None
        if len(parts) not in (2, 3):
            raise CircuitParseError(lineno, f"cannot parse {raw!r}")
        try:
            qubits = tuple(int(q) for q in parts[1].split(","))
            angle = float(parts[2]) if len(parts) == 3 else None
            g = Gate(parts[0], qubits, angle, term_id)
        except ValueError as exc:
            raise CircuitParseError(lineno, str(exc)) from None
        if max(g.qubits) >= n_qubits:
            raise CircuitParseError(lineno, f"qubit index out of range for {n_qubits} qubits")
        gates.append(g)
    if n_qubits is None:
        raise CircuitParseError(0, "empty circuit file")
    return Circuit(n_qubits, gates)


def reversed_circuit(circuit: Circuit) -> Circuit:
    """Gate-reversed circuit; Cliffords inverted, rotation angles kept."""
    out = []
    for g in reversed(circuit.gates):
        out.append(g if g.is_rotation else g.inverse())
    return Circuit(circuit.n_qubits, out)
