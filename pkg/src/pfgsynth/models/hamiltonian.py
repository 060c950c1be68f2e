"""Pauli-sum operators and the Hamiltonian file format."""
from __future__ import annotations

import os
from collections.abc import Iterable
from dataclasses import dataclass

from ..pauli import PauliString, parse_pauli, product_phase

__all__ = [
    "DROP_THRESHOLD",
    "PauliSum",
    "PauliSumHamiltonian",
    "HamiltonianParseError",
    "load_hamiltonian",
    "save_hamiltonian",
    "dumps_hamiltonian",
    "loads_hamiltonian",
]

DROP_THRESHOLD = 1e-8
IMAG_TOLERANCE = 1e-12
_IPOW = (1, 1j, -1, -1j)


class PauliSum:
    """Complex linear combination of Hermitian Pauli strings, keyed by (x, z)."""

    __slots__ = ("n_qubits", "coeffs")

    def __init__(self, n_qubits: int, coeffs: dict[tuple[int, int], complex] | None = None):
        self.n_qubits = n_qubits
        self.coeffs = dict(coeffs or {})

    @classmethod
    def identity(cls, n_qubits: int, c: complex = 1.0) -> PauliSum:
        return cls(n_qubits, {(0, 0): complex(c)})

    @classmethod
    def from_pauli(cls, p: PauliString, c: complex = 1.0) -> PauliSum:
        return cls(p.n_qubits, {(p.x, p.z): complex(c)})

    def copy(self) -> PauliSum:
        return PauliSum(self.n_qubits, self.coeffs)

    def _check(self, other):
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")

    def __add__(self, other: PauliSum) -> PauliSum:
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return PauliSum(self.n_qubits, out)

    def __iadd__(self, other: PauliSum) -> PauliSum:
        self._check(other)
        for k, c in other.coeffs.items():
            self.coeffs[k] = self.coeffs.get(k, 0) + c
        return self

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self + other * -1

    def __mul__(self, other) -> PauliSum:
        if isinstance(other, PauliSum):
            self._check(other)
            out: dict[tuple[int, int], complex] = {}
            for (x1, z1), c1 in self.coeffs.items():
                for (x2, z2), c2 in other.coeffs.items():
                    k = (x1 ^ x2, z1 ^ z2)
                    out[k] = out.get(k, 0) + c1 * c2 * _IPOW[product_phase(x1, z1, x2, z2)]
            return PauliSum(self.n_qubits, out)
        return PauliSum(self.n_qubits, {k: c * other for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def adjoint(self) -> PauliSum:
        return PauliSum(self.n_qubits, {k: c.conjugate() for k, c in self.coeffs.items()})

    def embed(self, n_qubits: int, offset: int) -> PauliSum:
        """Place this operator on qubits ``offset ..`` of a larger register."""
        if offset + self.n_qubits > n_qubits:
            raise ValueError("embedding exceeds register")
        return PauliSum(n_qubits, {(x << offset, z << offset): c for (x, z), c in self.coeffs.items()})

    def simplify(self, tol: float = 0.0) -> PauliSum:
        return PauliSum(self.n_qubits, {k: c for k, c in self.coeffs.items() if abs(c) > tol})

    def __len__(self):
        return len(self.coeffs)

    def items(self):
        for (x, z), c in self.coeffs.items():
            yield PauliString(self.n_qubits, x, z), c


@dataclass(frozen=True)
class PauliSumHamiltonian:
    """Real Pauli expansion; no identity, no duplicates, no negligible terms."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        seen = set()
        for c, p in self.terms:
            if p.n_qubits != self.n_qubits:
                raise ValueError("term qubit count mismatch")
            if p.is_identity:
                raise ValueError("identity term in Hamiltonian")
            if p in seen:
                raise ValueError(f"duplicate term {p}")
            seen.add(p)

    @classmethod
    def from_pauli_sum(cls, ps: PauliSum, threshold: float = DROP_THRESHOLD) -> PauliSumHamiltonian:
        terms = []
        for (x, z), c in ps.coeffs.items():
            if x == 0 and z == 0:
                continue
            if abs(c.imag if isinstance(c, complex) else 0.0) > IMAG_TOLERANCE:
                raise ValueError(
                    f"non-Hermitian coefficient {c} on {PauliString(ps.n_qubits, x, z)}"
                )
            r = float(c.real)
            if abs(r) < threshold:
                continue
            terms.append((r, PauliString(ps.n_qubits, x, z)))
        terms.sort(key=lambda t: t[1].label())
        return cls(ps.n_qubits, tuple(terms))

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[tuple[float, PauliString | str]], threshold: float = DROP_THRESHOLD
    ) -> PauliSumHamiltonian:
        """Merge raw (coefficient, Pauli) pairs; strings are parsed with ``parse_pauli``."""
        ps = PauliSum(n_qubits)
        for c, p in terms:
            if isinstance(p, str):
                sp = parse_pauli(p, n_qubits)
                c = c * _IPOW[sp.phase_exp]
                p = sp.pauli
            ps += PauliSum.from_pauli(p, c)
        return cls.from_pauli_sum(ps, threshold)

    def __len__(self):
        return len(self.terms)

    @property
    def paulis(self) -> list[PauliString]:
        return [p for _, p in self.terms]

    def to_pauli_sum(self) -> PauliSum:
        return PauliSum(self.n_qubits, {(p.x, p.z): complex(c) for c, p in self.terms})


class HamiltonianParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def dumps_hamiltonian(h: PauliSumHamiltonian) -> str:
    lines = [f"qubits {h.n_qubits}"]
    for c, p in sorted(h.terms, key=lambda t: t[1].label()):
        lines.append(f"{c:.17g} {p.label()}")
    return "\n".join(lines) + "\n"


def loads_hamiltonian(text: str, threshold: float = DROP_THRESHOLD) -> PauliSumHamiltonian:
    n_qubits = None
    raw: list[tuple[float, PauliString]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if n_qubits is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "qubits":
                raise HamiltonianParseError(lineno, "expected 'qubits N' header")
            try:
                n_qubits = int(parts[1])
            except ValueError:
                raise HamiltonianParseError(lineno, f"bad qubit count {parts[1]!r}") from None
            if n_qubits < 1:
                raise HamiltonianParseError(lineno, "qubit count must be positive")
            continue
        coef, _, rest = line.partition(" ")
        try:
            c = float(coef)
        except ValueError:
            raise HamiltonianParseError(lineno, f"bad coefficient {coef!r}") from None
        try:
            sp = parse_pauli(rest.strip(), n_qubits)
        except ValueError as exc:
            raise HamiltonianParseError(lineno, str(exc)) from None
        if sp.phase_exp % 2:
            raise HamiltonianParseError(lineno, "imaginary sign prefix on a Hamiltonian term")
        raw.append((-c if sp.phase_exp == 2 else c, sp.pauli))
    if n_qubits is None:
        raise HamiltonianParseError(0, "missing 'qubits N' header")
    return PauliSumHamiltonian.from_terms(n_qubits, raw, threshold)


def save_hamiltonian(h: PauliSumHamiltonian, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_hamiltonian(h))


def load_hamiltonian(path: str | os.PathLike, threshold: float = DROP_THRESHOLD) -> PauliSumHamiltonian:
    with open(path) as fh:
        return loads_hamiltonian(fh.read(), threshold)
