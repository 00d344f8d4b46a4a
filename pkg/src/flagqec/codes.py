"""Stabilizer code definitions, syndromes, degeneracy and logical-class oracles.

Built-ins: the [[5,1,3]] cyclic code, the [[17,1,5]] and [[19,1,5]] CSS
codes.  Generator lists keep the source numbering g_1, g_2, ... (1-based)
because scheme definitions reference those indices directly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .pauli import PauliOp, commutes, multiply, weight


@dataclass(frozen=True)
class StabilizerCode:
    name: str
    n: int
    k: int
    d: int
    generators: tuple[PauliOp, ...]
    logical_x: tuple[PauliOp, ...]
    logical_z: tuple[PauliOp, ...]
    css: bool = field(default=False)
    # dependent generators kept because scheme definitions reference their
    # indices (the [[5,1,3]] code lists five generators, four independent)
    extra_generators: tuple[PauliOp, ...] = field(default=())

    def __post_init__(self):
        _check_code(self)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def defining_generators(self) -> tuple[PauliOp, ...]:
        return self.generators + self.extra_generators

    def generator(self, index: int) -> PauliOp:
        """Generator g_index, 1-based as in the code's defining list."""
        gens = self.defining_generators
        if not 1 <= index <= len(gens):
            raise ValueError(f"generator index {index} out of range 1..{len(gens)}")
        return gens[index - 1]

    def z_type_indices(self) -> tuple[int, ...]:
        """1-based indices of pure-Z generators (CSS codes)."""
        return tuple(i + 1 for i, g in enumerate(self.generators) if g.x_bits == 0)

    def x_type_indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, g in enumerate(self.generators) if g.z_bits == 0)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "generators": [g.to_dense() for g in self.generators],
            "logical_x": [g.to_dense() for g in self.logical_x],
            "logical_z": [g.to_dense() for g in self.logical_z],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "StabilizerCode":
        n = int(data["n"])
        gens = tuple(PauliOp.parse(s, n) for s in data["generators"])
        return cls(
            name=str(data["name"]),
            n=n,
            k=int(data["k"]),
            d=int(data["d"]),
            generators=gens,
            logical_x=tuple(PauliOp.parse(s, n) for s in data["logical_x"]),
            logical_z=tuple(PauliOp.parse(s, n) for s in data["logical_z"]),
            css=all(g.x_bits == 0 or g.z_bits == 0 for g in gens),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "StabilizerCode":
        return cls.from_json_dict(json.loads(text))


def gf2_rank(rows: list[int]) -> int:
    """Rank of bit-vector rows over GF(2)."""
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            rank += 1
    return rank


def _check_code(code: StabilizerCode) -> None:
    gens = code.generators
    if len(gens) != code.n - code.k:
        raise ValueError(
            f"{code.name}: expected {code.n - code.k} generators, got {len(gens)}"
        )
    for a, b in itertools.combinations(range(len(gens)), 2):
        if commutes(gens[a], gens[b]):
            raise ValueError(f"{code.name}: generators g{a + 1} and g{b + 1} anticommute")
    sympl = [(g.x_bits << code.n) | g.z_bits for g in gens]
    if gf2_rank(sympl) != code.n - code.k:
        raise ValueError(f"{code.name}: generators are not independent")
    if len(code.logical_x) != code.k or len(code.logical_z) != code.k:
        raise ValueError(f"{code.name}: need {code.k} logical X and Z operators")
    for i, (lx, lz) in enumerate(zip(code.logical_x, code.logical_z)):
        if not commutes(lx, lz):
            raise ValueError(f"{code.name}: logical X{i} must anticommute with Z{i}")
        for j, g in enumerate(gens):
            if commutes(lx, g) or commutes(lz, g):
                raise ValueError(f"{code.name}: logicals must commute with g{j + 1}")
    for i, j in itertools.permutations(range(code.k), 2):
        if commutes(code.logical_x[i], code.logical_z[j]):
            raise ValueError(f"{code.name}: logical X{i} anticommutes with Z{j}")


def syndrome(code: StabilizerCode, error: PauliOp, subset: tuple[int, ...] | None = None) -> str:
    """Syndrome bitstring of ``error``: bit i is 1 iff it anticommutes with the i-th
    generator of ``subset`` (1-based generator indices; defaults to the
    independent set)."""
    if error.n != code.n:
        raise ValueError(f"error acts on {error.n} qubits, code has {code.n}")
    indices = subset if subset is not None else tuple(range(1, len(code.generators) + 1))
    return "".join(str(commutes(error, code.generator(i))) for i in indices)


def syndrome_int(code: StabilizerCode, error: PauliOp, subset: tuple[int, ...] | None = None) -> int:
    """Syndrome packed into an int, bit j (from 0) = j-th subset entry."""
    indices = subset if subset is not None else tuple(range(1, len(code.generators) + 1))
    out = 0
    for j, i in enumerate(indices):
        out |= commutes(error, code.generator(i)) << j
    return out


def is_stabilizer(code: StabilizerCode, op: PauliOp) -> bool:
    """Phase-free membership in the stabilizer group: zero syndrome and
    commuting with every logical operator."""
    if op.n != code.n:
        raise ValueError("length mismatch")
    if any(commutes(op, g) for g in code.generators):
        return False
    return not any(
        commutes(op, l) for l in itertools.chain(code.logical_x, code.logical_z)
    )


def degenerate(code: StabilizerCode, e1: PauliOp, e2: PauliOp) -> bool:
    """True when the two errors act identically on the code space."""
    return is_stabilizer(code, multiply(e1, e2))


LOGICAL_CLASSES = ("I", "X", "Z", "Y")


def logical_class(code: StabilizerCode, residual: PauliOp) -> str:
    """Classify a residual operator: I/X/Z/Y for syndrome-free operators,
    "NONZERO_SYNDROME" otherwise.  k=1 codes only."""
    if code.k != 1:
        raise ValueError("logical_class supports k=1 codes only")
    if residual.n != code.n:
        raise ValueError("length mismatch")
    if any(commutes(residual, g) for g in code.generators):
        return "NONZERO_SYNDROME"
    a = commutes(residual, code.logical_z[0])  # 1 => X-type logical action
    b = commutes(residual, code.logical_x[0])  # 1 => Z-type logical action
    return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(a, b)]


class IdealDecoder:
    """Minimum-weight lookup decoder over the full syndrome space.

    Breadth-first search over the syndrome Cayley graph whose edges are
    single-qubit Paulis: the layer at which a syndrome is first reached is
    the minimum error weight realizing it, and the recorded product of
    singles is such a minimum-weight representative.  Deterministic.
    """

    def __init__(self, code: StabilizerCode):
        import numpy as np

        self.code = code
        n = code.n
        gens = code.generators
        n_syn = 1 << len(gens)
        # syndrome of each of the 3n single-qubit Paulis (X, Z, Y per qubit)
        x_syn = [0] * n
        z_syn = [0] * n
        for q in range(n):
            for j, g in enumerate(gens):
                if g.z_bits >> q & 1:
                    x_syn[q] |= 1 << j
                if g.x_bits >> q & 1:
                    z_syn[q] |= 1 << j
        sing_s, sing_x, sing_z = [], [], []
        for q in range(n):
            for x, z in ((1, 0), (0, 1), (1, 1)):
                sing_s.append((x_syn[q] if x else 0) ^ (z_syn[q] if z else 0))
                sing_x.append(x << q)
                sing_z.append(z << q)
        ss = np.array(sing_s, dtype=np.int64)
        sx = np.array(sing_x, dtype=np.int64)
        sz = np.array(sing_z, dtype=np.int64)

        rep_x = np.full(n_syn, -1, dtype=np.int64)
        rep_z = np.full(n_syn, -1, dtype=np.int64)
        rep_x[0] = rep_z[0] = 0
        frontier = np.array([0], dtype=np.int64)
        filled = 1
        while filled < n_syn and frontier.size:
            next_syn_parts, next_x_parts, next_z_parts = [], [], []
            for lo in range(0, frontier.size, 1 << 14):
                chunk = frontier[lo : lo + (1 << 14)]
                cs = (chunk[:, None] ^ ss[None, :]).ravel()
                cx = (rep_x[chunk][:, None] ^ sx[None, :]).ravel()
                cz = (rep_z[chunk][:, None] ^ sz[None, :]).ravel()
                new = rep_x[cs] == -1
                next_syn_parts.append(cs[new])
                next_x_parts.append(cx[new])
                next_z_parts.append(cz[new])
            cs = np.concatenate(next_syn_parts)
            cx = np.concatenate(next_x_parts)
            cz = np.concatenate(next_z_parts)
            uniq, first = np.unique(cs, return_index=True)
            still_new = rep_x[uniq] == -1
            uniq, first = uniq[still_new], first[still_new]
            rep_x[uniq] = cx[first]
            rep_z[uniq] = cz[first]
            filled += uniq.size
            frontier = uniq
        self._rep_x = rep_x
        self._rep_z = rep_z

    def correction_bits(self, syn: int) -> tuple[int, int]:
        x = int(self._rep_x[syn])
        if x < 0:
            raise KeyError(f"syndrome {syn:#x} unreachable")
        return x, int(self._rep_z[syn])

    def correction_for(self, syn: int) -> PauliOp:
        x, z = self.correction_bits(syn)
        return PauliOp(self.code.n, x, z)


def _cyclic_513() -> StabilizerCode:
    # g_i = XZZX on cyclically consecutive qubits starting at i
    gens = []
    for i in range(5):
        x = z = 0
        pattern = ("X", "Z", "Z", "X")
        for off, kind in enumerate(pattern):
            q = (i + off) % 5
            if kind == "X":
                x |= 1 << q
            else:
                z |= 1 << q
        gens.append(PauliOp(5, x, z))
    return StabilizerCode(
        name="c513",
        n=5,
        k=1,
        d=3,
        generators=tuple(gens[:4]),
        logical_x=(PauliOp.from_dense("XXXXX"),),
        logical_z=(PauliOp.from_dense("ZZZZZ"),),
        css=False,
        extra_generators=(gens[4],),
    )


def _css_code(name: str, n: int, d: int, z_supports: list[tuple[int, ...]]) -> StabilizerCode:
    z_gens = []
    x_gens = []
    for supp in z_supports:
        bits = 0
        for q in supp:
            bits |= 1 << (q - 1)
        z_gens.append(PauliOp(n, 0, bits))
        x_gens.append(PauliOp(n, bits, 0))
    all_ones = (1 << n) - 1
    return StabilizerCode(
        name=name,
        n=n,
        k=1,
        d=d,
        generators=tuple(z_gens + x_gens),
        logical_x=(PauliOp(n, all_ones, 0),),
        logical_z=(PauliOp(n, 0, all_ones),),
        css=True,
    )


_Z_SUPPORTS_1715 = [
    (1, 2, 3, 4),
    (1, 3, 5, 6),
    (5, 6, 9, 10),
    (7, 8, 11, 12),
    (9, 10, 13, 14),
    (11, 12, 15, 16),
    (8, 12, 16, 17),
    (3, 4, 6, 7, 10, 11, 14, 15),
]

_Z_SUPPORTS_1915 = [
    (1, 2, 3, 4),
    (1, 3, 5, 7),
    (12, 13, 14, 15),
    (1, 2, 5, 6, 8, 9),
    (6, 9, 16, 19),
    (16, 17, 18, 19),
    (10, 11, 12, 15),
    (8, 9, 10, 11, 16, 17),
    (5, 7, 8, 11, 12, 13),
]

BUILTIN_IDS = ("c513", "c1715", "c1915")


@lru_cache(maxsize=None)
def make_builtin(code_id: str) -> StabilizerCode:
    """Construct one of the built-in codes: c513, c1715 or c1915."""
    if code_id == "c513":
        return _cyclic_513()
    if code_id == "c1715":
        return _css_code("c1715", 17, 5, _Z_SUPPORTS_1715)
    if code_id == "c1915":
        # X-type generators mirror the Z-type supports qubit for qubit
        return _css_code("c1915", 19, 5, _Z_SUPPORTS_1915)
    raise ValueError(f"unknown builtin code id {code_id!r} (expected one of {BUILTIN_IDS})")


_IDEAL_DECODERS: dict[int, IdealDecoder] = {}


def ideal_decoder(code: StabilizerCode) -> IdealDecoder:
    """Shared min-weight decoder instance for ``code`` (built on first use)."""
    key = id(code)
    dec = _IDEAL_DECODERS.get(key)
    if dec is None:
        dec = _IDEAL_DECODERS[key] = IdealDecoder(code)
    return dec
