"""Pauli strings as packed GF(2) bit vectors, with phase bookkeeping.

A Pauli string on ``n`` qubits is stored as two Python ints ``x`` and ``z``;
bit ``q`` of each is the X/Z component on qubit ``q``.  Per qubit the
Hermitian convention applies: ``(x, z) = (1, 0) -> X``, ``(0, 1) -> Z``,
``(1, 1) -> Y``.  ``SignedPauli`` adds a power of ``i`` relative to that
Hermitian operator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "DimensionError",
    "PauliString",
    "SignedPauli",
    "symplectic_form",
    "multiply",
    "parse_pauli",
    "format_pauli",
]

_CHAR_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_CHAR = {v: k for k, v in _CHAR_BITS.items()}
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


@dataclass(frozen=True, slots=True)
class PauliString:
    """Tensor-product Pauli operator modulo phase."""

    n_qubits: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        limit = 1 << self.n_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("bit vector wider than n_qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits, 0, 0)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, kind: str) -> PauliString:
        if not 0 <= qubit < n_qubits:
            raise ValueError(f"qubit {qubit} out of range")
        bx, bz = _CHAR_BITS[kind]
        return cls(n_qubits, bx << qubit, bz << qubit)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> q) & 1 for q in range(self.n_qubits))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> q) & 1 for q in range(self.n_qubits))

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> list[int]:
        mask = self.x | self.z
        return [q for q in range(self.n_qubits) if (mask >> q) & 1]

    def char(self, qubit: int) -> str:
        return _BITS_CHAR[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def label(self) -> str:
        return "".join(self.char(q) for q in range(self.n_qubits))

    def __add__(self, other: PauliString) -> PauliString:
        _check_dims(self, other)
        return PauliString(self.n_qubits, self.x ^ other.x, self.z ^ other.z)

    def commutes(self, other: PauliString) -> bool:
        return symplectic_form(self, other) == 0

    def __str__(self):
        return self.label()


@dataclass(frozen=True, slots=True)
class SignedPauli:
    """``i**phase_exp`` times the Hermitian Pauli operator ``pauli``."""

    pauli: PauliString
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def from_bits(cls, n_qubits: int, x: int, z: int, phase_exp: int = 0) -> SignedPauli:
        return cls(PauliString(n_qubits, x, z), phase_exp)

    @property
    def n_qubits(self) -> int:
        return self.pauli.n_qubits

    @property
    def x(self) -> int:
        return self.pauli.x

    @property
    def z(self) -> int:
        return self.pauli.z

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def signbit(self) -> int:
        if not self.is_hermitian:
            raise ValueError("signbit is only defined for Hermitian elements")
        return self.phase_exp >> 1

    def __mul__(self, other: SignedPauli) -> SignedPauli:
        return multiply(self, other)

    def __neg__(self) -> SignedPauli:
        return SignedPauli(self.pauli, self.phase_exp + 2)

    def equal_mod_phase(self, other: SignedPauli) -> bool:
        return self.pauli == other.pauli

    def __str__(self):
        return format_pauli(self)


def _check_dims(p, q):
    if p.n_qubits != q.n_qubits:
        raise DimensionError(f"{p.n_qubits} vs {q.n_qubits} qubits")


def symplectic_form(p: PauliString, q: PauliString) -> int:
    """0 if ``p`` and ``q`` commute, 1 otherwise."""
    _check_dims(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i picked up by P(x1,z1) * P(x2,z2) in the Hermitian convention.

    With ``P(x, z) = i**|x&z| X**x Z**z`` the product reorders one ``Z**z1``
    past ``X**x2``.
    """
    x3, z3 = x1 ^ x2, z1 ^ z2
    return (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (z1 & x2).bit_count()
    ) & 3


def multiply(a: SignedPauli, b: SignedPauli) -> SignedPauli:
    """Operator product ``a @ b`` with exact phase."""
    _check_dims(a, b)
    ph = a.phase_exp + b.phase_exp + product_phase(a.x, a.z, b.x, b.z)
    return SignedPauli(PauliString(a.n_qubits, a.x ^ b.x, a.z ^ b.z), ph)


_SIGN_RE = re.compile(r"^\s*([+-]?i?)\s*")
_SPARSE_TOKEN = re.compile(r"^([XYZ])(\d+)$")


def parse_pauli(text: str, n_qubits: int | None = None) -> SignedPauli:
    """Parse ``"IXYZ"``, ``"X0 Y2 Z5"`` or either with a sign prefix.

    Sparse strings need ``n_qubits`` unless the highest index should set it.
    """
    m = _SIGN_RE.match(text)
    prefix = m.group(1)
    body = text[m.end():].strip()
    phase = _PREFIX_PHASE[prefix]
    if body and set(body) <= set("IXYZ") and " " not in body:
        if body == "I" and n_qubits is not None and n_qubits != 1:
            return SignedPauli(PauliString.identity(n_qubits), phase)
        if n_qubits is not None and len(body) != n_qubits:
            raise ValueError(f"dense Pauli {body!r} has {len(body)} qubits, expected {n_qubits}")
        x = z = 0
        for q, ch in enumerate(body):
            bx, bz = _CHAR_BITS[ch]
            x |= bx << q
            z |= bz << q
        return SignedPauli(PauliString(len(body), x, z), phase)
    if not body:
        if n_qubits is None:
            raise ValueError("empty Pauli string needs n_qubits")
        return SignedPauli(PauliString.identity(n_qubits), phase)
    entries = []
    for tok in body.split():
        t = _SPARSE_TOKEN.match(tok)
        if t is None:
            raise ValueError(f"bad Pauli token {tok!r}")
        entries.append((t.group(1), int(t.group(2))))
    qubits = [q for _, q in entries]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit index in {text!r}")
    if n_qubits is None:
        n_qubits = max(qubits) + 1
    x = z = 0
    for ch, q in entries:
        if q >= n_qubits:
            raise ValueError(f"qubit index {q} >= n_qubits={n_qubits}")
        bx, bz = _CHAR_BITS[ch]
        x |= bx << q
        z |= bz << q
    return SignedPauli(PauliString(n_qubits, x, z), phase)


def format_pauli(p: SignedPauli | PauliString, sparse: bool = False) -> str:
    if isinstance(p, PauliString):
        p = SignedPauli(p, 0)
    prefix = _PHASE_PREFIX[p.phase_exp]
    if not sparse:
        return prefix + p.pauli.label()
    if p.pauli.is_identity:
        return prefix + "I"
    return prefix + " ".join(f"{p.pauli.char(q)}{q}" for q in p.pauli.support())
