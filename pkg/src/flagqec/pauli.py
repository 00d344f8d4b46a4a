"""Phase-free n-qubit Pauli algebra in symplectic (X-bits, Z-bits) form.

Operators are stored as a pair of integer bitmasks: bit i (from 0) of
``x_bits`` is set when qubit i+1 carries an X or Y factor, bit i of
``z_bits`` when it carries a Z or Y factor.  Global phases are discarded
everywhere; syndromes, degeneracy and logical-failure classification are
insensitive to them.  Qubits are labelled 1..n in all I/O, 0..n-1
internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_KIND_FROM_XZ = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_XZ_FROM_KIND = {v: k for k, v in _KIND_FROM_XZ.items()}

_SPARSE_TERM = re.compile(r"([IXYZ])(\d+)$")


@dataclass(frozen=True)
class PauliOp:
    """An n-qubit Pauli operator, phase-free."""

    n: int
    x_bits: int = 0
    z_bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"qubit count must be non-negative, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit vectors extend past qubit count")

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, 0, 0)

    @classmethod
    def single(cls, n: int, kind: str, qubit: int) -> "PauliOp":
        """Single-qubit Pauli ``kind`` on 1-based ``qubit``."""
        if not 1 <= qubit <= n:
            raise ValueError(f"qubit {qubit} out of range 1..{n}")
        x, z = _XZ_FROM_KIND[kind]
        bit = 1 << (qubit - 1)
        return cls(n, x * bit, z * bit)

    def kind_at(self, qubit: int) -> str:
        """Pauli letter on 1-based ``qubit``."""
        bit = 1 << (qubit - 1)
        return _KIND_FROM_XZ[(int(bool(self.x_bits & bit)), int(bool(self.z_bits & bit)))]

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def support(self) -> tuple[int, ...]:
        """1-based qubits carrying a non-identity factor."""
        bits = self.x_bits | self.z_bits
        return tuple(i + 1 for i in range(self.n) if bits >> i & 1)

    def to_dense(self) -> str:
        return "".join(self.kind_at(q) for q in range(1, self.n + 1))

    def to_sparse(self) -> str:
        terms = [f"{self.kind_at(q)}{q}" for q in self.support()]
        return " ".join(terms) if terms else "I"

    @classmethod
    def from_dense(cls, text: str, n: int | None = None) -> "PauliOp":
        """Parse dense form like ``"XZZXI"`` (canonical file format)."""
        text = text.strip().upper()
        if n is None:
            n = len(text)
        if len(text) != n:
            raise ValueError(f"dense Pauli {text!r} has length {len(text)}, expected {n}")
        x = z = 0
        for i, ch in enumerate(text):
            if ch not in _XZ_FROM_KIND:
                raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
            xb, zb = _XZ_FROM_KIND[ch]
            x |= xb << i
            z |= zb << i
        return cls(n, x, z)

    @classmethod
    def from_sparse(cls, text: str, n: int) -> "PauliOp":
        """Parse sparse form like ``"X1 Z2 Z3 X4"`` on n qubits."""
        x = z = 0
        text = text.strip()
        if text in ("", "I"):
            return cls(n, 0, 0)
        for term in text.split():
            m = _SPARSE_TERM.match(term.upper())
            if not m:
                raise ValueError(f"bad sparse Pauli term {term!r}")
            kind, qubit = m.group(1), int(m.group(2))
            if not 1 <= qubit <= n:
                raise ValueError(f"qubit {qubit} out of range 1..{n}")
            xb, zb = _XZ_FROM_KIND[kind]
            bit = 1 << (qubit - 1)
            # repeated labels multiply (XOR), matching the group product
            x ^= xb * bit
            z ^= zb * bit
        return cls(n, x, z)

    @classmethod
    def parse(cls, text: str, n: int) -> "PauliOp":
        """Accept either dense or sparse textual form."""
        stripped = text.strip()
        if re.fullmatch(r"[IXYZixyz]+", stripped) and len(stripped) == n:
            return cls.from_dense(stripped, n)
        return cls.from_sparse(stripped, n)

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        return multiply(self, other)

    def __str__(self) -> str:
        return self.to_dense()


def weight(a: PauliOp) -> int:
    """Number of non-identity tensor factors."""
    return (a.x_bits | a.z_bits).bit_count()


def commutes(a: PauliOp, b: PauliOp) -> int:
    """Symplectic inner product: 0 when a and b commute, 1 when they anticommute."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    return ((a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()) & 1


def multiply(a: PauliOp, b: PauliOp) -> PauliOp:
    """Group product with the global phase discarded (componentwise XOR)."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    return PauliOp(a.n, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


# Raw bitmask transforms used by the hot propagation loops.  `x`/`z` are the
# frame's bitmasks over all circuit qubits, `a`/`b` are 0-based bit positions.

def cnot_frame(x: int, z: int, control: int, target: int) -> tuple[int, int]:
    # X on control copies to target; Z on target copies to control.
    if x >> control & 1:
        x ^= 1 << target
    if z >> target & 1:
        z ^= 1 << control
    return x, z


def cz_frame(x: int, z: int, a: int, b: int) -> tuple[int, int]:
    # X on either qubit deposits Z on the partner.
    if x >> a & 1:
        z ^= 1 << b
    if x >> b & 1:
        z ^= 1 << a
    return x, z


def conjugate_through_gate(gate, frame: PauliOp) -> PauliOp:
    """Propagate ``frame`` through a CNOT or CZ: returns U frame U† (phase-free).

    ``gate`` needs ``kind`` ("CNOT"/"CZ") and ``qubits`` (1-based pair,
    control first for CNOT).
    """
    kind = str(getattr(gate, "kind", gate[0] if isinstance(gate, tuple) else gate))
    qubits = getattr(gate, "qubits", gate[1] if isinstance(gate, tuple) else None)
    if qubits is None or len(qubits) != 2:
        raise ValueError("conjugation needs a two-qubit gate")
    a, b = (q - 1 for q in qubits)
    if not (0 <= a < frame.n and 0 <= b < frame.n and a != b):
        raise ValueError(f"gate qubits {qubits} out of frame range 1..{frame.n}")
    if kind == "CNOT":
        x, z = cnot_frame(frame.x_bits, frame.z_bits, a, b)
    elif kind == "CZ":
        x, z = cz_frame(frame.x_bits, frame.z_bits, a, b)
    else:
        raise ValueError(f"unsupported gate kind for frame conjugation: {kind}")
    return PauliOp(frame.n, x, z)
