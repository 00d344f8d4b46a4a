"""Fault enumeration, Pauli-frame propagation, lookup tables, FT verification.

Everything here exploits that the circuits are Clifford with deterministic
ideal outcomes: a fault event's effect is a Pauli frame, frames compose by
XOR in symplectic form, and measurement flips are linear functionals of
the frame.  Each circuit therefore gets a precomputed *signature* per
(location, Pauli) — the outcome-bit mask plus the data residual — and
multi-fault events are XOR combinations of signatures.

A carried-over data frame entering a circuit is invariant under it (data
qubits are never gate targets of other data qubits) and flips exactly the
measurement-qubit bits whose stabilizer it anticommutes with; flags are
never triggered by input frames.  Both facts are asserted at engine build.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .circuit import (
    CNOT,
    CZ,
    FLAG,
    IDLE,
    MEAS_KINDS,
    MEAS_X,
    MEAS_Z,
    MEASUREMENT,
    PREP_KINDS,
    PREP_X,
    PREP_Z,
    TWO_QUBIT_KINDS,
    Circuit,
    Location,
    enumerate_locations,
)
from .codes import StabilizerCode, ideal_decoder, syndrome_int
from .pauli import PauliOp, cnot_frame, cz_frame, commutes
from .schemes import SchemeCircuitSet

LocalPauli = tuple[tuple[int, int], ...]  # (x, z) per location qubit

_ONE_QUBIT_PAULIS: tuple[LocalPauli, ...] = (((1, 0),), ((1, 1),), ((0, 1),))  # X, Y, Z
_TWO_QUBIT_PAULIS: tuple[LocalPauli, ...] = tuple(
    (a, b)
    for a in ((0, 0), (1, 0), (1, 1), (0, 1))
    for b in ((0, 0), (1, 0), (1, 1), (0, 1))
    if (a, b) != ((0, 0), (0, 0))
)

_KIND_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def local_pauli_from_letters(letters: str) -> LocalPauli:
    """Letters in location-qubit order, e.g. "XY" for a two-qubit site."""
    return tuple(_KIND_XZ[ch] for ch in letters.upper())


def location_fault_options(loc: Location) -> tuple[LocalPauli, ...]:
    """The Pauli choices the noise model allows at a location."""
    if loc.kind in TWO_QUBIT_KINDS:
        return _TWO_QUBIT_PAULIS
    if loc.kind == PREP_Z:
        return (((1, 0),),)  # flip of |0> shows up as an X frame
    if loc.kind == PREP_X:
        return (((0, 1),),)
    if loc.kind == IDLE or loc.kind in MEAS_KINDS:
        return _ONE_QUBIT_PAULIS
    raise ValueError(f"location kind {loc.kind} has no fault channel")


@dataclass(frozen=True)
class FaultRef:
    """One located fault: which execution (round key), which subround
    circuit, which location, which Pauli."""

    round: str  # "r1", "r2", "r3" (flagged executions) or "raw"
    subround: int
    location: int
    pauli: LocalPauli


@dataclass(frozen=True)
class FaultEvent:
    faults: tuple[FaultRef, ...]

    @property
    def order(self) -> int:
        return len(self.faults)


@dataclass(frozen=True)
class OutcomeRecord:
    """Measurement bits gathered along a decision path.

    ``rounds`` holds one (m_bits, f_bits) pair per executed flagged round;
    ``raw_m`` the raw-round bits when one ran.  Bit j of an m field is the
    j-th measured generator, bit j of an f field the j-th flag qubit.
    """

    rounds: tuple[tuple[int, int], ...]
    raw_m: int | None
    leaf: str
    m_width: int
    f_width: int

    def m_string(self, round_index: int) -> str:
        return format_bits(self.rounds[round_index][0], self.m_width)

    def f_string(self, round_index: int) -> str:
        return format_bits(self.rounds[round_index][1], self.f_width)

    def raw_string(self) -> str:
        if self.raw_m is None:
            raise ValueError("no raw round on this path")
        return format_bits(self.raw_m, self.m_width)


def format_bits(value: int, width: int) -> str:
    return "".join(str(value >> j & 1) for j in range(width))


@dataclass(frozen=True)
class GeneralizedSyndrome:
    """Path-tagged concatenation of the outcome fields; the lookup key."""

    tag: str
    fields: tuple[int, ...]

    def key(self) -> tuple:
        return (self.tag,) + self.fields


def generalized_syndrome(record: OutcomeRecord) -> GeneralizedSyndrome:
    fields: list[int] = []
    for m, f in record.rounds:
        fields += [m, f]
    if record.raw_m is not None:
        fields.append(record.raw_m)
    return GeneralizedSyndrome(record.leaf, tuple(fields))


class RoundEngine:
    """Frame propagation for one subround circuit."""

    def __init__(self, circuit: Circuit, generators: tuple[PauliOp, ...], code: StabilizerCode):
        self.circuit = circuit
        self.code = code
        self.generators = generators
        self.locations = enumerate_locations(circuit)
        self._ops = [(loc.kind, loc.qubits) for loc in self.locations]
        roles = [q.role for q in circuit.qubits]
        self._n_data = circuit.n_data

        m_meas: list[tuple[int, int, int]] = []
        f_meas: list[tuple[int, int, int]] = []
        for i, loc in enumerate(self.locations):
            if loc.kind in MEAS_KINDS:
                q = loc.qubits[0]
                entry = (loc.t, circuit.qubits[q].label, i)
                if roles[q] == MEASUREMENT:
                    m_meas.append(entry)
                elif roles[q] == FLAG:
                    f_meas.append(entry)
        m_meas.sort()
        f_meas.sort()
        self.n_m_bits = len(m_meas)
        self.n_f_bits = len(f_meas)
        if self.n_m_bits != len(generators):
            raise ValueError(
                f"{self.n_m_bits} syndrome measurements but {len(generators)} generators"
            )
        self._out_slot: dict[int, tuple[str, int]] = {}
        for bit, (_, _, i) in enumerate(m_meas):
            self._out_slot[i] = ("m", bit)
        for bit, (_, _, i) in enumerate(f_meas):
            self._out_slot[i] = ("f", bit)

        self._check_determinism()
        self._input_m_sigs = self._build_input_signatures()

    # -- frame walk ---------------------------------------------------------

    def walk(self, start: int, x: int, z: int) -> tuple[int, int, int, int]:
        """Propagate a frame injected just after op index ``start``;
        returns (m_bits, f_bits, residual_x, residual_z) on data qubits."""
        m_bits = 0
        f_bits = 0
        ops = self._ops
        slot = self._out_slot
        for i in range(start + 1, len(ops)):
            kind, qs = ops[i]
            if kind == CNOT:
                x, z = cnot_frame(x, z, qs[0], qs[1])
            elif kind == CZ:
                x, z = cz_frame(x, z, qs[0], qs[1])
            elif kind in PREP_KINDS:
                q = qs[0]
                keep = ~(1 << q)
                x &= keep
                z &= keep
            elif kind == MEAS_X:
                if z >> qs[0] & 1:
                    field_, bit = slot[i]
                    if field_ == "m":
                        m_bits ^= 1 << bit
                    else:
                        f_bits ^= 1 << bit
            elif kind == MEAS_Z:
                if x >> qs[0] & 1:
                    field_, bit = slot[i]
                    if field_ == "m":
                        m_bits ^= 1 << bit
                    else:
                        f_bits ^= 1 << bit
        mask = (1 << self._n_data) - 1
        return m_bits, f_bits, x & mask, z & mask

    def fault_signature(self, loc_index: int, pauli: LocalPauli) -> tuple[int, int, int, int]:
        loc = self.locations[loc_index]
        if len(pauli) != len(loc.qubits):
            raise ValueError("local Pauli length does not match location")
        if loc.kind in MEAS_KINDS:
            # pre-measurement error: outcome flip only
            (px, pz) = pauli[0]
            flips = pz if loc.kind == MEAS_X else px
            m_bits = f_bits = 0
            if flips:
                field_, bit = self._out_slot[loc_index]
                if field_ == "m":
                    m_bits = 1 << bit
                else:
                    f_bits = 1 << bit
            return m_bits, f_bits, 0, 0
        x = z = 0
        for (px, pz), q in zip(pauli, loc.qubits):
            x |= px << q
            z |= pz << q
        return self.walk(loc_index, x, z)

    def iter_signatures(self):
        """Yield (loc_index, pauli, signature) over every fault option."""
        for i, loc in enumerate(self.locations):
            for pauli in location_fault_options(loc):
                yield i, pauli, self.fault_signature(i, pauli)

    # -- carried-over input frames ------------------------------------------

    def _build_input_signatures(self) -> list[tuple[int, int]]:
        """(sig for X_q, sig for Z_q) m-bit masks per data qubit; asserts the
        syndrome-map property used by the composition rules."""
        sigs = []
        for q in range(self._n_data):
            per_axis = []
            for x, z in ((1 << q, 0), (0, 1 << q)):
                m, f, rx, rz = self.walk(-1, x, z)
                if f:
                    raise AssertionError(f"input frame on data qubit {q + 1} raised a flag")
                if (rx, rz) != (x, z):
                    raise AssertionError(f"data frame not invariant on qubit {q + 1}")
                expect = 0
                probe = PauliOp(self.code.n, x, z)
                for j, g in enumerate(self.generators):
                    expect |= commutes(probe, g) << j
                if m != expect:
                    raise AssertionError(
                        f"input frame syndrome map mismatch on qubit {q + 1}"
                    )
                per_axis.append(m)
            sigs.append((per_axis[0], per_axis[1]))
        return sigs

    def input_m_bits(self, rx: int, rz: int) -> int:
        """m-bit flips a clean execution reports for an input data frame."""
        out = 0
        for j, g in enumerate(self.generators):
            par = (rx & g.z_bits).bit_count() + (rz & g.x_bits).bit_count()
            out |= (par & 1) << j
        return out

    # -- construction-time validation ----------------------------------------

    def _check_determinism(self) -> None:
        """Heisenberg pullback of every measurement operator.

        Hard requirement: the data part of a syndrome measurement's
        pullback equals the intended generator (flag measurements: data
        identity).  Ancilla cross factors that anticommute with a
        preparation are recorded in ``baseline_caveats``: schemes that
        interleave CNOT with CZ couplings on a shared data qubit carry
        correlated ancilla randomness in their raw outcomes, and all
        outcome bits here follow the frame convention — values relative to
        the fault-free reference run, which is what the published lookup
        tables tabulate.  Purely CSS rounds and serial rounds come out
        caveat-free.
        """
        self.baseline_caveats: list[str] = []
        for i, loc in enumerate(self.locations):
            if loc.kind not in MEAS_KINDS:
                continue
            q = loc.qubits[0]
            x = (1 << q) if loc.kind == MEAS_X else 0
            z = (1 << q) if loc.kind == MEAS_Z else 0
            for j in range(i - 1, -1, -1):
                kind, qs = self._ops[j]
                if kind == CNOT:
                    x, z = cnot_frame(x, z, qs[0], qs[1])  # self-inverse
                elif kind == CZ:
                    x, z = cz_frame(x, z, qs[0], qs[1])
                elif kind in PREP_KINDS:
                    pq = qs[0]
                    bit = 1 << pq
                    if (kind == PREP_Z and (x & bit)) or (kind == PREP_X and (z & bit)):
                        self.baseline_caveats.append(
                            f"measurement t={loc.t} q{q} correlated with ancilla {pq} preparation"
                        )
                    x &= ~bit
                    z &= ~bit
                elif kind in MEAS_KINDS and j < i:
                    pq = qs[0]
                    bit = 1 << pq
                    bad = (kind == MEAS_X and (z & bit)) or (kind == MEAS_Z and (x & bit))
                    if bad:
                        self.baseline_caveats.append(
                            f"measurement t={loc.t} q{q} correlated with measurement at t={self.locations[j].t}"
                        )
            mask = (1 << self._n_data) - 1
            data_part = PauliOp(self.code.n, x & mask, z & mask)
            slot = self._out_slot.get(i)
            if slot is None:
                continue
            field_, bit = slot
            if field_ == "m":
                want = self.generators[bit]
                if (data_part.x_bits, data_part.z_bits) != (want.x_bits, want.z_bits):
                    raise AssertionError(
                        f"syndrome measurement {bit} measures {data_part} not {want}"
                    )
            else:
                if not data_part.is_identity:
                    raise AssertionError(f"flag measurement {bit} measures data operator")


@dataclass(frozen=True)
class Signature:
    """Combined single-fault effect over one full round (all subrounds)."""

    m: int
    f: int
    rx: int
    rz: int

    def __xor__(self, other: "Signature") -> "Signature":
        return Signature(self.m ^ other.m, self.f ^ other.f, self.rx ^ other.rx, self.rz ^ other.rz)

    @property
    def record(self) -> int:
        return self.m | self.f


ZERO_SIG = Signature(0, 0, 0, 0)


class SchemeEngine:
    """Signature algebra for a whole scheme: combined flagged-round and
    raw-round outcome layouts, with intra-round carry between subrounds."""

    def __init__(self, scheme: SchemeCircuitSet):
        self.scheme = scheme
        self.code = scheme.code
        gens_per_sub = self._generators_per_subround()
        self.flag_engines = [
            RoundEngine(c, gens, self.code) for c, gens in zip(scheme.flagged, gens_per_sub)
        ]
        self.raw_engines = [
            RoundEngine(c, gens, self.code) for c, gens in zip(scheme.raw, gens_per_sub)
        ]
        self.m_offsets: list[int] = []
        self.f_offsets: list[int] = []
        off_m = off_f = 0
        for eng in self.flag_engines:
            self.m_offsets.append(off_m)
            self.f_offsets.append(off_f)
            off_m += eng.n_m_bits
            off_f += eng.n_f_bits
        self.n_m_bits = off_m
        self.n_f_bits = off_f
        for eng, raw in zip(self.flag_engines, self.raw_engines):
            if raw.n_m_bits != eng.n_m_bits or raw.n_f_bits != 0:
                raise ValueError("raw round layout must match flagged syndrome bits, no flags")
        self._ideal = ideal_decoder(self.code)
        self._flagged_sigs: list[tuple[FaultRef, Signature]] | None = None
        self._raw_sigs: list[tuple[FaultRef, Signature]] | None = None

    def _generators_per_subround(self) -> list[tuple[PauliOp, ...]]:
        gens = [self.code.generator(i) for i in self.scheme.measured_generators]
        out = []
        pos = 0
        for circ in self.scheme.flagged:
            k = sum(1 for q in circ.qubits if q.role == MEASUREMENT)
            if len(self.scheme.flagged) == 1:
                k = len(gens)
            out.append(tuple(gens[pos : pos + k]))
            pos += k
        if pos != len(gens):
            raise ValueError("measured generator list does not split across subrounds")
        return out

    # -- combined signatures --------------------------------------------------

    def input_m_bits(self, rx: int, rz: int) -> int:
        out = 0
        for eng, off in zip(self.flag_engines, self.m_offsets):
            out |= eng.input_m_bits(rx, rz) << off
        return out

    def combined_signature(self, kind: str, subround: int, loc: int, pauli: LocalPauli) -> Signature:
        """Effect of one fault over a whole flagged or raw round, including
        the carry of its residual into later subrounds of the same round."""
        engines = self.flag_engines if kind == "flagged" else self.raw_engines
        m, f, rx, rz = engines[subround].fault_signature(loc, pauli)
        M = m << self.m_offsets[subround]
        F = f << self.f_offsets[subround]
        for j in range(subround + 1, len(engines)):
            M ^= engines[j].input_m_bits(rx, rz) << self.m_offsets[j]
        return Signature(M, F, rx, rz)

    def flagged_signatures(self) -> list[tuple[FaultRef, Signature]]:
        if self._flagged_sigs is None:
            self._flagged_sigs = self._collect("flagged")
        return self._flagged_sigs

    def raw_signatures(self) -> list[tuple[FaultRef, Signature]]:
        if self._raw_sigs is None:
            self._raw_sigs = self._collect("raw")
        return self._raw_sigs

    def _collect(self, kind: str) -> list[tuple[FaultRef, Signature]]:
        engines = self.flag_engines if kind == "flagged" else self.raw_engines
        out = []
        for sub, eng in enumerate(engines):
            for loc, pauli, _ in eng.iter_signatures():
                sig = self.combined_signature(kind, sub, loc, pauli)
                out.append((FaultRef("r1" if kind == "flagged" else "raw", sub, loc, pauli), sig))
        return out

    def deduped_flagged(self) -> list[tuple[Signature, int, FaultRef]]:
        """Distinct signatures with multiplicities and one witness each."""
        seen: dict[tuple[int, int, int, int], list] = {}
        for ref, sig in self.flagged_signatures():
            key = (sig.m, sig.f, sig.rx, sig.rz)
            if key in seen:
                seen[key][1] += 1
            else:
                seen[key] = [sig, 1, ref]
        return [(v[0], v[1], v[2]) for v in seen.values()]

    # -- end checks -----------------------------------------------------------

    def final_class_ok(self, rx: int, rz: int) -> bool:
        """True when a perfect final EC round maps the remainder to class I."""
        syn = syndrome_int(self.code, PauliOp(self.code.n, rx, rz))
        cx, cz = self._ideal.correction_bits(syn)
        rx ^= cx
        rz ^= cz
        lx = self.code.logical_x[0]
        lz = self.code.logical_z[0]
        anti_zbar = ((rx & lz.z_bits).bit_count() + (rz & lz.x_bits).bit_count()) & 1
        anti_xbar = ((rx & lx.z_bits).bit_count() + (rz & lx.x_bits).bit_count()) & 1
        return not (anti_zbar or anti_xbar)

    def true_syndrome(self, rx: int, rz: int) -> int:
        return syndrome_int(self.code, PauliOp(self.code.n, rx, rz))


# --------------------------------------------------------------------------
# Reference event propagation (Table V semantics)
# --------------------------------------------------------------------------

def propagate_event(
    scheme: SchemeCircuitSet,
    event: FaultEvent,
    run_raw: bool = True,
    engine: SchemeEngine | None = None,
) -> tuple[PauliOp, OutcomeRecord]:
    """Noiseless execution of one flagged round with ``event`` injected,
    optionally followed by a clean raw round (the distance-3 path).

    Returns the data residual after the flagged round and the outcome
    record (m, f, raw m')."""
    eng = engine or SchemeEngine(scheme)
    total = ZERO_SIG
    for fault in event.faults:
        if fault.round != "r1":
            raise ValueError("reference propagation covers round-1 events")
        total ^= eng.combined_signature("flagged", fault.subround, fault.location, fault.pauli)
    residual = PauliOp(scheme.code.n, total.rx, total.rz)
    raw_m = eng.input_m_bits(total.rx, total.rz) if run_raw else None
    record = OutcomeRecord(
        rounds=((total.m, total.f),),
        raw_m=raw_m,
        leaf="raw" if run_raw else "r1",
        m_width=eng.n_m_bits,
        f_width=eng.n_f_bits,
    )
    return residual, record


def enumerate_fault_sets(scheme: SchemeCircuitSet, w: int, engine: SchemeEngine | None = None):
    """Stream the order-w fault events of one flagged round (w = 1) or the
    reachable two-round combinations (w = 2), in deterministic order."""
    if w not in (1, 2):
        raise ValueError("fault enumeration supports w in {1, 2}")
    eng = engine or SchemeEngine(scheme)
    singles = eng.flagged_signatures()
    if w == 1:
        for ref, _ in singles:
            yield FaultEvent((ref,))
        return
    for i, (ref_a, sig_a) in enumerate(singles):
        for ref_b, _ in singles[i + 1 :]:
            yield FaultEvent((ref_a, ref_b))
        if sig_a.record == 0:
            # an all-zero first round stops the procedure; later rounds
            # never execute, so cross-round pairs are unreachable
            continue
        for ref_b, _ in singles:
            yield FaultEvent((ref_a, FaultRef("r2", ref_b.subround, ref_b.location, ref_b.pauli)))
        for ref_b, _ in singles:
            yield FaultEvent((ref_a, FaultRef("r3", ref_b.subround, ref_b.location, ref_b.pauli)))


# --------------------------------------------------------------------------
# Lookup-table construction and FT verification
# --------------------------------------------------------------------------

@dataclass
class LookupTable:
    scheme_name: str
    tree: str  # "d3" | "d5"
    t: int
    m_bits: int
    f_bits: int
    entries: dict[tuple, tuple[int, int]] = field(default_factory=dict)
    unresolved_keys: int = 0

    def lookup(self, key: tuple) -> tuple[int, int] | None:
        return self.entries.get(key)

    def dumps(self) -> str:
        lines = [
            "# flagqec lookup table v1",
            f"scheme: {self.scheme_name}",
            f"tree: {self.tree}",
            f"t: {self.t}",
            f"m_bits: {self.m_bits}",
            f"f_bits: {self.f_bits}",
        ]
        for key in sorted(self.entries, key=lambda k: (k[0],) + tuple(k[1:])):
            rx, rz = self.entries[key]
            fields = ",".join(f"{v:x}" for v in key[1:])
            lines.append(f"{key[0]} {fields} {rx:x} {rz:x}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "LookupTable":
        header: dict[str, str] = {}
        entries: dict[tuple, tuple[int, int]] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if ":" in line and line.split(":", 1)[0] in ("scheme", "tree", "t", "m_bits", "f_bits"):
                k, v = line.split(":", 1)
                header[k.strip()] = v.strip()
                continue
            tag, fields, rx, rz = line.split()
            key = (tag,) + tuple(int(v, 16) for v in fields.split(",")) if fields else (tag,)
            entries[key] = (int(rx, 16), int(rz, 16))
        return cls(
            scheme_name=header["scheme"],
            tree=header["tree"],
            t=int(header["t"]),
            m_bits=int(header["m_bits"]),
            f_bits=int(header["f_bits"]),
            entries=entries,
        )


@dataclass
class FTReport:
    passed: bool
    t: int
    tree: str
    event_counts: dict[int, int]
    table_size: int
    counterexample: tuple | None = None

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"w={w}: {c}" for w, c in sorted(self.event_counts.items()))
        out = f"{status} (t={self.t}, {self.tree}); events checked: {counts}; table entries: {self.table_size}"
        if self.counterexample:
            out += f"\ncounterexample: {self.counterexample}"
        return out


class CollisionError(ValueError):
    def __init__(self, message: str, details: tuple):
        super().__init__(message)
        self.details = details


class _TableBuilder:
    def __init__(self, engine: SchemeEngine, tree: str, t: int):
        self.engine = engine
        self.tree = tree
        self.t = t
        self.cands: dict[tuple, dict[tuple[int, int], tuple]] = {}
        self.zero_record_fail: tuple | None = None
        self.event_counts = {1: 0, 2: 0}

    def _add(self, key: tuple, sig: Signature, witness: tuple) -> None:
        bucket = self.cands.setdefault(key, {})
        bucket.setdefault((sig.rx, sig.rz), witness)

    def _zero_record(self, sig: Signature, witness: tuple) -> None:
        # the procedure stops after an all-zero first round; the remaining
        # frame must be curable by perfect EC
        if not self.engine.final_class_ok(sig.rx, sig.rz):
            if self.zero_record_fail is None:
                self.zero_record_fail = ("zero-record residual not correctable", witness)

    def _route_one_round(self, sig: Signature, witness: tuple) -> None:
        if sig.record == 0:
            self._zero_record(sig, witness)
            return
        if self.tree == "d3":
            mp = self.engine.input_m_bits(sig.rx, sig.rz)
            self._add(("mfm", sig.m, sig.f, mp), sig, witness)
        else:
            syn = self.engine.input_m_bits(sig.rx, sig.rz)
            self._add(("b3", sig.m, sig.f, syn), sig, witness)

    def collect(self) -> None:
        eng = self.engine
        singles = eng.deduped_flagged()
        for sig, count, ref in singles:
            self.event_counts[1] += count
            self._route_one_round(sig, (ref,))
        if self.t < 2:
            return
        if self.tree != "d5":
            raise ValueError("t=2 tables use the distance-5 tree")
        n = len(singles)
        for i in range(n):
            sig_a, count_a, ref_a = singles[i]
            # both faults in round 1
            for j in range(i, n):
                sig_b, count_b, ref_b = singles[j]
                if i == j and count_a < 2:
                    continue
                pairs = count_a * count_b if i != j else count_a * (count_a - 1) // 2
                self.event_counts[2] += pairs
                self._route_one_round(sig_a ^ sig_b, (ref_a, ref_b))
            if sig_a.record == 0:
                # an all-zero first round stops the procedure before any
                # later-round fault can occur
                continue
            syn_a = eng.input_m_bits(sig_a.rx, sig_a.rz)
            for sig_b, count_b, ref_b in singles:
                self.event_counts[2] += 2 * count_a * count_b
                rx = sig_a.rx ^ sig_b.rx
                rz = sig_a.rz ^ sig_b.rz
                syn_ab = eng.input_m_bits(rx, rz)
                # second fault in round 2
                m2 = sig_b.m ^ syn_a
                f2 = sig_b.f
                witness = (ref_a, ("r2", ref_b))
                if f2:
                    key = ("b2", sig_a.m, sig_a.f, m2, f2, syn_ab)
                    self._add(key, Signature(0, 0, rx, rz), witness)
                elif syn_ab == m2:
                    self._add(("b3", sig_a.m, sig_a.f, m2), Signature(0, 0, rx, rz), witness)
                else:
                    key = ("b4", sig_a.m, sig_a.f, m2, syn_ab, 0, syn_ab)
                    self._add(key, Signature(0, 0, rx, rz), witness)
                # second fault in round 3 (reached because f2 = 0)
                m3 = sig_b.m ^ syn_a
                f3 = sig_b.f
                witness = (ref_a, ("r3", ref_b))
                if f3 == 0 and m3 == syn_a:
                    self._add(("b3", sig_a.m, sig_a.f, syn_a), Signature(0, 0, rx, rz), witness)
                else:
                    key = ("b4", sig_a.m, sig_a.f, syn_a, m3, f3, syn_ab)
                    self._add(key, Signature(0, 0, rx, rz), witness)

    def resolve(self) -> tuple[LookupTable, tuple | None]:
        table = LookupTable(
            scheme_name=self.engine.scheme.name,
            tree=self.tree,
            t=self.t,
            m_bits=self.engine.n_m_bits,
            f_bits=self.engine.n_f_bits,
        )
        failure = self.zero_record_fail
        for key in sorted(self.cands, key=lambda k: (k[0],) + tuple(k[1:])):
            residuals = sorted(self.cands[key])
            chosen = None
            for cand in residuals:
                if all(
                    self.engine.final_class_ok(rx ^ cand[0], rz ^ cand[1])
                    for rx, rz in residuals
                ):
                    chosen = cand
                    break
            if chosen is None:
                table.unresolved_keys += 1
                if failure is None:
                    r0, r1 = residuals[0], residuals[-1]
                    failure = (
                        "irreconcilable syndrome collision",
                        key,
                        (r0, self.cands[key][r0]),
                        (r1, self.cands[key][r1]),
                    )
                chosen = residuals[0]
            table.entries[key] = chosen
        return table, failure


def build_lookup_table(
    scheme: SchemeCircuitSet,
    tree: str,
    t: int,
    engine: SchemeEngine | None = None,
    strict: bool = True,
) -> LookupTable:
    """Exhaustive <=t-fault table.

    With ``strict`` (default) a non-reconcilable syndrome collision raises
    CollisionError with the witness pair; with ``strict=False`` such keys
    keep the lexicographically smallest candidate correction and are
    tallied in ``unresolved_keys`` (simulation then pays the corresponding
    logical-error rate, mirroring a decoder built from the published
    table)."""
    eng = engine or SchemeEngine(scheme)
    builder = _TableBuilder(eng, tree, t)
    builder.collect()
    table, failure = builder.resolve()
    if strict and failure is not None:
        raise CollisionError(failure[0], failure)
    return table


def verify_ft(
    scheme: SchemeCircuitSet, tree: str, t: int, engine: SchemeEngine | None = None
) -> FTReport:
    """Fault-tolerance check: every <=t-fault event must end, after its
    decision-tree correction plus a perfect final EC round, in logical
    class I."""
    eng = engine or SchemeEngine(scheme)
    builder = _TableBuilder(eng, tree, t)
    builder.collect()
    table, failure = builder.resolve()
    return FTReport(
        passed=failure is None,
        t=t,
        tree=tree,
        event_counts=dict(builder.event_counts),
        table_size=len(table.entries),
        counterexample=failure,
    )
