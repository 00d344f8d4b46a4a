"""Construction of syndrome-extraction scheme circuits.

A scheme is described by an integer matrix M: entry M[i][j] says how many
stabilizers are measured with the i-th set of flag qubits at sequential
stage j.  An all-ones row vector is the serial scheme, an all-ones column
the fully parallel one, and mixed shapes are sequential flag-sharing
schemes.

Circuit conventions per family (forced by which errors must flip which
measurements, see the stage builders):

* non-CSS codes: measurement qubits are prepared in |+> and X-measured;
  an X factor couples via CNOT(m -> data), a Z factor via CZ.  Per-stage
  flags use CNOT(m -> flag) pairs on |0>-prepared, Z-measured flags;
  shared flags use CZ(m -> flag) pairs on |+>-prepared, X-measured flags.
* CSS Z-type rounds: measurement qubits are |0>-prepared and Z-measured,
  coupled by CNOT(data -> m); flags are |+>-prepared, X-measured, coupled
  by CNOT(flag -> m) pairs.
* CSS X-type rounds are the qubit-wise dual of the Z-type rounds.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

from .circuit import (
    CNOT,
    CZ,
    DATA,
    FLAG,
    IDLE,
    MEAS_X,
    MEAS_Z,
    MEASUREMENT,
    PREP_X,
    PREP_Z,
    Circuit,
    GateInstance,
    QubitRole,
    depth,
    validate,
)
from .codes import StabilizerCode, make_builtin
from .pauli import PauliOp

# Flag wiring styles
FLAG_CNOT_MF = "cnot_mf"  # CNOT(m -> f), flag |0>, Z-measured
FLAG_CNOT_FM = "cnot_fm"  # CNOT(f -> m), flag |+>, X-measured
FLAG_CZ = "cz"            # CZ(m, f),    flag |+>, X-measured


@dataclass(frozen=True)
class Conventions:
    family: str  # "noncss" | "css_z" | "css_x"
    flag_style: str

    @property
    def m_prep(self) -> str:
        return PREP_Z if self.family == "css_z" else PREP_X

    @property
    def m_meas(self) -> str:
        return MEAS_Z if self.family == "css_z" else MEAS_X

    @property
    def flag_prep(self) -> str:
        return PREP_Z if self.flag_style == FLAG_CNOT_MF else PREP_X

    @property
    def flag_meas(self) -> str:
        return MEAS_Z if self.flag_style == FLAG_CNOT_MF else MEAS_X

    def coupling(self, factor: str, m: int, d: int) -> tuple[str, tuple[int, int]]:
        """Gate kind and (ordered) qubit pair coupling data qubit d with
        factor `factor` to measurement qubit m (circuit indices)."""
        if self.family == "css_z":
            if factor != "Z":
                raise ValueError("Z-type round coupling needs a Z factor")
            return CNOT, (d, m)
        if factor == "X":
            return CNOT, (m, d)
        if factor == "Z":
            return CZ, (m, d)
        raise ValueError(f"cannot couple factor {factor!r}")

    def flag_gate(self, m: int, f: int) -> tuple[str, tuple[int, int]]:
        if self.flag_style == FLAG_CNOT_MF:
            return CNOT, (m, f)
        if self.flag_style == FLAG_CNOT_FM:
            return CNOT, (f, m)
        return CZ, (m, f)


NONCSS_STD = Conventions("noncss", FLAG_CNOT_MF)
NONCSS_SHARED = Conventions("noncss", FLAG_CZ)
CSS_Z = Conventions("css_z", FLAG_CNOT_FM)
CSS_X = Conventions("css_x", FLAG_CNOT_MF)


# Op tokens: ("c", i) = i-th coupling; ("fo", j) / ("fc", j) = opening /
# closing flag gate on the stage's j-th flag.  Sequences are the gate order
# on the measurement qubit; actual timesteps come from the schedule.

def stage_pattern(w: int, v: int) -> tuple[tuple[str, int], ...]:
    """Gate order on the measurement qubit for a weight-w stage with v flags.

    The built-in patterns follow the one/two/three-flag circuits for
    weights 4, 6 and 8 (stage depths 6, 10 and 14); other weights fall
    back to the trivial construction with a flag pair around every inner
    coupling.
    """
    # Flag spans are staggered so that every window whose propagated tail is
    # >= 3-equivalent sits inside at least two flag pairs: a single flag
    # preparation or readout fault can cancel only one flag bit, and a
    # cancelled-flag window must leave an ideally-correctable remainder.
    if (w, v) == (4, 1):
        return (("c", 0), ("fo", 0), ("c", 1), ("c", 2), ("fc", 0), ("c", 3))
    if (w, v) == (6, 2):
        return (
            ("c", 0), ("fo", 0), ("c", 1), ("fo", 1), ("c", 2),
            ("c", 3), ("fc", 0), ("c", 4), ("fc", 1), ("c", 5),
        )
    if (w, v) == (8, 3):
        return (
            ("c", 0), ("fo", 0), ("c", 1), ("fo", 1), ("c", 2), ("fo", 2),
            ("c", 3), ("c", 4), ("fc", 0), ("c", 5), ("fc", 1), ("c", 6),
            ("fc", 2), ("c", 7),
        )
    if v == max(0, w - 2):
        # trivial construction: flag pair around each coupling after the
        # first and before the last
        ops: list[tuple[str, int]] = [("c", 0)]
        for j in range(w - 2):
            ops += [("fo", j), ("c", j + 1), ("fc", j)]
        ops.append(("c", w - 1))
        return tuple(ops)
    raise ValueError(f"no built-in stage pattern for weight {w} with {v} flags")


def flags_for_weight(w: int) -> int:
    if w in (4, 6, 8):
        return w // 2 - 1
    return max(0, w - 2)


@dataclass(frozen=True)
class StageSpec:
    """One stabilizer measurement: which generator, its coupling order
    (data labels), and which flag ids it uses."""

    gen_index: int
    couplings: tuple[int, ...]
    flag_ids: tuple[int, ...]
    pattern: tuple[tuple[str, int], ...] = field(default=())

    def ops(self) -> tuple[tuple[str, int], ...]:
        if self.pattern:
            return self.pattern
        return stage_pattern(len(self.couplings), len(self.flag_ids))


@dataclass(frozen=True)
class SchemeMatrix:
    """Rows are flag sets, columns sequential stages."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or len({len(r) for r in self.rows}) != 1:
            raise ValueError("matrix rows must be non-empty and equal length")

    @property
    def n_stages(self) -> int:
        return len(self.rows[0])

    @property
    def total(self) -> int:
        return sum(sum(r) for r in self.rows)

    def groups(self) -> list[tuple[int, int, int]]:
        """(row, stage, count) cells in column-major order, zeros skipped."""
        out = []
        for j in range(self.n_stages):
            for i, row in enumerate(self.rows):
                if row[j]:
                    out.append((i, j, row[j]))
        return out

    def text(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in row) for row in self.rows) + "]"


def parse_matrix(text: str) -> SchemeMatrix:
    """Parse the bracket notation: spaces separate sequential stages,
    semicolons separate flag-set rows.  "[2;2]" is two parallel shared-flag
    pairs; "[1 1 1 1]" is the serial scheme; "1" / "1T" expand per code."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    rows = []
    for part in body.split(";"):
        entries = [int(tok) for tok in re.split(r"[,\s]+", part.strip()) if tok]
        if not entries:
            raise ValueError(f"empty row in scheme matrix {text!r}")
        rows.append(tuple(entries))
    return SchemeMatrix(tuple(rows))


def serial_matrix(s: int) -> SchemeMatrix:
    return SchemeMatrix(((1,) * s,))


def parallel_matrix(s: int) -> SchemeMatrix:
    return SchemeMatrix(tuple((1,) for _ in range(s)))


@dataclass
class SchemeCircuitSet:
    """A full flagged SE round plus the matching raw round.

    ``flagged`` and ``raw`` hold one circuit per subround: a single entry
    for non-CSS codes, [Z-type, X-type] for CSS codes.  Measurement-qubit
    outcome bits across subrounds are ordered by ``measured_generators``.
    """

    code: StabilizerCode
    name: str
    matrix: SchemeMatrix
    flagged: tuple[Circuit, ...]
    raw: tuple[Circuit, ...]
    measured_generators: tuple[int, ...]
    flag_count_per_set: tuple[int, ...]
    extra_cnots_per_stage: tuple[int, ...]
    stage_specs: tuple[tuple[StageSpec, ...], ...] = ()

    @property
    def flagged_round(self) -> Circuit:
        if len(self.flagged) != 1:
            raise ValueError("CSS schemes have one circuit per subround; use .flagged")
        return self.flagged[0]

    @property
    def raw_round(self) -> Circuit:
        if len(self.raw) != 1:
            raise ValueError("CSS schemes have one circuit per subround; use .raw")
        return self.raw[0]

    def n_measurement_bits(self) -> int:
        return len(self.measured_generators)

    def n_flag_bits(self) -> int:
        return sum(
            sum(1 for q in c.qubits if q.role == FLAG) for c in self.flagged
        )


class ScheduleError(ValueError):
    pass


def _asap_schedule(
    stages: list[StageSpec],
    flag_order: dict[int, list[tuple[int, int]]] | None = None,
) -> dict[tuple[int, int], int]:
    """Earliest-fit schedule of stage ops processed in serial order.

    Per-data-qubit gate order therefore equals the serial order.  When
    ``flag_order`` lists (stage_idx, op_idx) sequences per flag id, those
    ops are additionally forced into that order on the flag wire.
    """
    qubit_free: dict[object, int] = {}
    times: dict[tuple[int, int], int] = {}
    flag_rank: dict[tuple[int, int], int] = {}
    flag_done: dict[int, int] = {}
    if flag_order:
        for fid, seq in flag_order.items():
            for rank, key in enumerate(seq):
                flag_rank[key] = rank
            flag_done[fid] = -1

    order: list[tuple[int, int]] = []
    for s_idx, stage in enumerate(stages):
        for o_idx in range(len(stage.ops())):
            order.append((s_idx, o_idx))
    if flag_order:
        # interleave group stages so shared-flag op order is satisfiable:
        # sort by (stage, op) but hoist flag ops to respect their rank
        pass

    m_free = [0] * len(stages)
    remaining = set(order)
    progress = True
    while remaining and progress:
        progress = False
        for key in order:
            if key not in remaining:
                continue
            s_idx, o_idx = key
            stage = stages[s_idx]
            if o_idx > 0 and (s_idx, o_idx - 1) in remaining:
                continue
            op, arg = stage.ops()[o_idx]
            if op == "c":
                res: object = ("d", stage.couplings[arg])
            else:
                fid = stage.flag_ids[arg]
                res = ("f", fid)
                if key in flag_rank:
                    rank = flag_rank[key]
                    if rank != flag_done[fid] + 1:
                        continue
            t = max(m_free[s_idx], qubit_free.get(res, 0))
            times[key] = t
            m_free[s_idx] = t + 1
            qubit_free[res] = t + 1
            if op == "c":
                pass
            elif key in flag_rank:
                flag_done[stage.flag_ids[arg]] += 1
            remaining.discard(key)
            progress = True
    if remaining:
        raise ScheduleError(f"unschedulable ops: {sorted(remaining)[:4]}")
    return times


def _emit_round(
    code: StabilizerCode,
    stages: list[StageSpec],
    n_flags: int,
    conv: Conventions,
    times: dict[tuple[int, int], int],
    serial_blocks: list[list[int]] | None = None,
) -> Circuit:
    """Emit one subround circuit from scheduled stage ops.

    Gate timesteps are 1 + scheduled slot; preps sit at t=0 and
    measurements after the last gate, except for serial reuse where
    ``serial_blocks`` lists per-block stage indices measured and
    re-prepared between blocks on shared ancilla slots.
    """
    n = code.n
    qubits = [QubitRole(DATA, q) for q in range(1, n + 1)]
    m_index: dict[int, int] = {}
    for s_idx in range(len(stages)):
        m_index[s_idx] = len(qubits)
        qubits.append(QubitRole(MEASUREMENT, s_idx + 1))
    f_index: dict[int, int] = {}
    for fid in range(n_flags):
        f_index[fid] = len(qubits)
        qubits.append(QubitRole(FLAG, fid + 1))

    gates: list[GateInstance] = []
    max_t = 0
    for s_idx, stage in enumerate(stages):
        gen = code.generator(stage.gen_index)
        for o_idx, (op, arg) in enumerate(stage.ops()):
            t = 1 + times[(s_idx, o_idx)]
            max_t = max(max_t, t)
            if op == "c":
                d_label = stage.couplings[arg]
                factor = gen.kind_at(d_label)
                kind, pair = conv.coupling(factor, m_index[s_idx], d_label - 1)
            else:
                kind, pair = conv.flag_gate(m_index[s_idx], f_index[stage.flag_ids[arg]])
            gates.append(GateInstance(kind, pair, t))

    if serial_blocks is None:
        for s_idx in range(len(stages)):
            gates.append(GateInstance(conv.m_prep, (m_index[s_idx],), 0))
            gates.append(GateInstance(conv.m_meas, (m_index[s_idx],), max_t + 1))
        for fid in range(n_flags):
            gates.append(GateInstance(conv.flag_prep, (f_index[fid],), 0))
            gates.append(GateInstance(conv.flag_meas, (f_index[fid],), max_t + 1))
    else:
        for block in serial_blocks:
            span = [
                1 + times[(s_idx, o_idx)]
                for s_idx in block
                for o_idx in range(len(stages[s_idx].ops()))
            ]
            t0, t1 = min(span), max(span)
            done_flags = set()
            for s_idx in block:
                gates.append(GateInstance(conv.m_prep, (m_index[s_idx],), t0 - 1))
                gates.append(GateInstance(conv.m_meas, (m_index[s_idx],), t1 + 1))
                for fid in stages[s_idx].flag_ids:
                    if fid not in done_flags:
                        done_flags.add(fid)
                        gates.append(GateInstance(conv.flag_prep, (f_index[fid],), t0 - 1))
                        gates.append(GateInstance(conv.flag_meas, (f_index[fid],), t1 + 1))

    circ = Circuit(tuple(qubits), tuple(gates), n).with_idles_filled()
    problems = validate(circ)
    if problems:
        raise ScheduleError("; ".join(problems))
    return circ


def _raw_stages(stages: list[StageSpec]) -> list[StageSpec]:
    return [
        StageSpec(s.gen_index, s.couplings, (), tuple(("c", i) for i in range(len(s.couplings))))
        for s in stages
    ]


def check_merge_criterion(
    t: int, s: int, r: int, v_max: int, u: list[int], w: list[int]
) -> bool:
    """Shared-flag merge feasibility: 2^(s+r+v_max) >= 8^t * C(sum(u+w)-2r, t).

    Exact integer arithmetic; lists u (extra CNOTs) and w (stabilizer
    weights) describe the r merged stages.
    """
    if len(u) != r or len(w) != r:
        raise ValueError("u and w must list one entry per merged stage")
    m = sum(ui + wi for ui, wi in zip(u, w)) - 2 * r
    lhs = 1 << (s + r + v_max)
    rhs = 8**t * math.comb(m, t)
    return lhs >= rhs


# --------------------------------------------------------------------------
# Built-in layouts
# --------------------------------------------------------------------------
# The [[5,1,3]] flag-sharing layout is pinned bit-for-bit by the published
# 128-row lookup table; the other layouts are pinned by fault-tolerance
# verification plus exact resource counts.

# (gen, couplings, flags, explicit per-op slots)
_C513_22_STAGES = [
    # measured order m_1, m_5, m_3, m_4; flags f1 <-> (g1, g3), f2 <-> (g5, g4)
    (1, (2, 3, 4, 1), (0,), (0, 1, 2, 3, 4, 5)),
    (5, (1, 2, 3, 5), (1,), (0, 1, 2, 3, 4, 5)),
    (3, (3, 5, 1, 4), (0,), (0, 2, 3, 4, 5, 6)),
    (4, (4, 1, 2, 5), (1,), (0, 2, 3, 4, 5, 6)),
]

_C513_CYCLIC_ORDER = {k: tuple((k - 1 + off) % 5 + 1 for off in range(4)) for k in range(1, 6)}


def _c513_flag_sharing() -> SchemeCircuitSet:
    code = make_builtin("c513")
    stages = []
    times: dict[tuple[int, int], int] = {}
    for s_idx, (gen, coup, flags, slots) in enumerate(_C513_22_STAGES):
        stages.append(StageSpec(gen, coup, flags))
        for o_idx, slot in enumerate(slots):
            times[(s_idx, o_idx)] = slot
    flagged = _emit_round(code, stages, 2, NONCSS_SHARED, times)
    raw = _c513_raw((1, 5, 3, 4))
    return SchemeCircuitSet(
        code=code,
        name="c513:[2;2]",
        matrix=parse_matrix("[2;2]"),
        flagged=(flagged,),
        raw=(raw,),
        measured_generators=(1, 5, 3, 4),
        flag_count_per_set=(1, 1),
        extra_cnots_per_stage=(2, 2, 2, 2),
        stage_specs=(tuple(stages),),
    )


def _c513_raw(gen_order: tuple[int, ...]) -> Circuit:
    code = make_builtin("c513")
    stages = [
        StageSpec(g, _C513_CYCLIC_ORDER[g], (), tuple(("c", i) for i in range(4)))
        for g in gen_order
    ]
    # cyclic diagonal: stage with shift s couples qubit s+i at slot i
    times = {
        (s_idx, o_idx): o_idx for s_idx in range(len(stages)) for o_idx in range(4)
    }
    return _emit_round(code, stages, 0, NONCSS_STD, times)


def _c513_parallel() -> SchemeCircuitSet:
    code = make_builtin("c513")
    stages = [StageSpec(g, _C513_CYCLIC_ORDER[g], (g - 1,)) for g in (1, 2, 3, 4)]
    times: dict[tuple[int, int], int] = {}
    for s_idx in range(4):
        for o_idx in range(6):
            times[(s_idx, o_idx)] = o_idx
    flagged = _emit_round(code, stages, 4, NONCSS_STD, times)
    return SchemeCircuitSet(
        code=code,
        name="c513:1",
        matrix=parallel_matrix(4),
        flagged=(flagged,),
        raw=(_c513_raw((1, 2, 3, 4)),),
        measured_generators=(1, 2, 3, 4),
        flag_count_per_set=(1, 1, 1, 1),
        extra_cnots_per_stage=(2, 2, 2, 2),
        stage_specs=(tuple(stages),),
    )


def _c513_serial() -> SchemeCircuitSet:
    code = make_builtin("c513")
    stages = [StageSpec(g, _C513_CYCLIC_ORDER[g], (0,)) for g in (1, 2, 3, 4)]
    times: dict[tuple[int, int], int] = {}
    for s_idx in range(4):
        for o_idx in range(6):
            times[(s_idx, o_idx)] = 8 * s_idx + o_idx
    # shared ancilla slots: one measurement qubit, one flag, re-prepared
    stages_one_slot = stages
    flagged = _emit_serial_reused(code, stages_one_slot, NONCSS_STD, times)
    return SchemeCircuitSet(
        code=code,
        name="c513:1T",
        matrix=serial_matrix(4),
        flagged=(flagged,),
        raw=(_c513_raw((1, 2, 3, 4)),),
        measured_generators=(1, 2, 3, 4),
        flag_count_per_set=(1,),
        extra_cnots_per_stage=(2, 2, 2, 2),
        stage_specs=(tuple(stages),),
    )


def _emit_serial_reused(
    code: StabilizerCode,
    stages: list[StageSpec],
    conv: Conventions,
    times: dict[tuple[int, int], int],
) -> Circuit:
    """Serial scheme on reused ancilla slots: one measurement slot plus
    max-over-stages flag slots, re-prepared per stage."""
    n = code.n
    n_flag_slots = max(len(s.flag_ids) for s in stages)
    qubits = [QubitRole(DATA, q) for q in range(1, n + 1)]
    m_slot = len(qubits)
    qubits.append(QubitRole(MEASUREMENT, 1))
    f_slots = []
    for j in range(n_flag_slots):
        f_slots.append(len(qubits))
        qubits.append(QubitRole(FLAG, j + 1))

    gates: list[GateInstance] = []
    for s_idx, stage in enumerate(stages):
        gen = code.generator(stage.gen_index)
        slot_ts = [1 + times[(s_idx, o)] for o in range(len(stage.ops()))]
        t0, t1 = min(slot_ts), max(slot_ts)
        gates.append(GateInstance(conv.m_prep, (m_slot,), t0 - 1))
        gates.append(GateInstance(conv.m_meas, (m_slot,), t1 + 1))
        for j in range(len(stage.flag_ids)):
            gates.append(GateInstance(conv.flag_prep, (f_slots[j],), t0 - 1))
            gates.append(GateInstance(conv.flag_meas, (f_slots[j],), t1 + 1))
        for o_idx, (op, arg) in enumerate(stage.ops()):
            t = 1 + times[(s_idx, o_idx)]
            if op == "c":
                d_label = stage.couplings[arg]
                kind, pair = conv.coupling(gen.kind_at(d_label), m_slot, d_label - 1)
            else:
                kind, pair = conv.flag_gate(m_slot, f_slots[arg])
            gates.append(GateInstance(kind, pair, t))

    circ = Circuit(tuple(qubits), tuple(gates), n).with_idles_filled()
    problems = validate(circ)
    if problems:
        raise ScheduleError("; ".join(problems))
    return circ


# --------------------------------------------------------------------------
# CSS scheme construction (Z-type round + Hadamard-dual X-type round)
# --------------------------------------------------------------------------

def _dual_index(code: StabilizerCode, z_index: int) -> int:
    """X-type generator with the same support as Z-type generator z_index."""
    target = code.generator(z_index).z_bits
    for i in code.x_type_indices():
        if code.generator(i).x_bits == target:
            return i
    raise ValueError(f"no X-type mirror for generator {z_index}")


def _stage_specs(
    couplings: dict[int, tuple[int, ...]],
    groups: list[tuple[int, ...]],
) -> tuple[list[StageSpec], list[list[tuple[int, int]]], int]:
    """Stages plus per-flag op order for shared groups.

    ``groups`` lists generator indices per flag-sharing group in serial
    order; singletons get their own weight-matched flag set, pairs share
    one flag with the opening/closing gates interleaved (oA oB cA cB).
    """
    stages: list[StageSpec] = []
    flag_order: dict[int, list[tuple[int, int]]] = {}
    next_flag = 0
    for group in groups:
        if len(group) == 1:
            g = group[0]
            w = len(couplings[g])
            v = flags_for_weight(w)
            stages.append(StageSpec(g, couplings[g], tuple(range(next_flag, next_flag + v))))
            next_flag += v
        elif len(group) == 2:
            fid = next_flag
            next_flag += 1
            idx_a = len(stages)
            for g in group:
                stages.append(StageSpec(g, couplings[g], (fid,)))
            idx_b = idx_a + 1
            pat = stages[idx_a].ops()
            fo = next(i for i, (op, _) in enumerate(pat) if op == "fo")
            fc = next(i for i, (op, _) in enumerate(pat) if op == "fc")
            flag_order[fid] = [(idx_a, fo), (idx_b, fo), (idx_a, fc), (idx_b, fc)]
        else:
            raise ValueError("flag-sharing groups of size > 2 are not built in")
    return stages, flag_order, next_flag


def _css_round_pair(
    code: StabilizerCode,
    stages: list[StageSpec],
    n_flags: int,
    times: dict[tuple[int, int], int],
    serial_blocks: list[list[int]] | None = None,
) -> tuple[Circuit, Circuit, tuple[int, ...]]:
    """Emit the Z-type subround and its X-type dual on the same schedule."""
    if serial_blocks is not None:
        z_circ = _emit_serial_reused(code, stages, CSS_Z, times)
    else:
        z_circ = _emit_round(code, stages, n_flags, CSS_Z, times)
    x_stages = [
        StageSpec(_dual_index(code, s.gen_index), s.couplings, s.flag_ids, s.pattern)
        for s in stages
    ]
    if serial_blocks is not None:
        x_circ = _emit_serial_reused(code, x_stages, CSS_X, times)
    else:
        x_circ = _emit_round(code, x_stages, n_flags, CSS_X, times)
    order = tuple(s.gen_index for s in stages) + tuple(s.gen_index for s in x_stages)
    return z_circ, x_circ, order


def _css_raw_rounds(
    code: StabilizerCode, stages: list[StageSpec]
) -> tuple[Circuit, Circuit]:
    raw = _raw_stages(stages)
    times = _asap_schedule(raw)
    z_circ = _emit_round(code, raw, 0, CSS_Z, times)
    x_raw = [
        StageSpec(_dual_index(code, s.gen_index), s.couplings, (), s.pattern) for s in raw
    ]
    x_circ = _emit_round(code, x_raw, 0, CSS_X, times)
    return z_circ, x_circ


def _build_css_scheme(
    code_id: str,
    name: str,
    matrix: SchemeMatrix,
    couplings: dict[int, tuple[int, ...]],
    groups: list[tuple[int, ...]],
    serial: bool,
    depth_target: int | None = None,
) -> SchemeCircuitSet:
    code = make_builtin(code_id)
    stages, flag_order, n_flags = _stage_specs(couplings, groups)
    if serial:
        times = {}
        base = 0
        blocks = []
        for s_idx, stage in enumerate(stages):
            ops = stage.ops()
            for o_idx in range(len(ops)):
                times[(s_idx, o_idx)] = base + o_idx
            blocks.append([s_idx])
            base += len(ops) + 2
        z_circ, x_circ, order = _css_round_pair(code, stages, n_flags, times, blocks)
    else:
        times = _asap_schedule(stages, flag_order or None)
        z_circ, x_circ, order = _css_round_pair(code, stages, n_flags, times)
    if depth_target is not None and depth(z_circ) != depth_target:
        raise ScheduleError(
            f"{name}: scheduled depth {depth(z_circ)} != target {depth_target}"
        )
    raw_z, raw_x = _css_raw_rounds(code, stages)
    v_per_set = []
    u_per_stage = []
    for group in groups:
        if len(group) == 1:
            v_per_set.append(flags_for_weight(len(couplings[group[0]])))
        else:
            v_per_set.append(1)
        for g in group:
            u_per_stage.append(2)
    return SchemeCircuitSet(
        code=code,
        name=name,
        matrix=matrix,
        flagged=(z_circ, x_circ),
        raw=(raw_z, raw_x),
        measured_generators=order,
        flag_count_per_set=tuple(v_per_set),
        extra_cnots_per_stage=tuple(u_per_stage),
        stage_specs=(tuple(stages),),
    )


# Stage orders and coupling orders below were fixed by an offline search:
# earliest-fit scheduling must hit the published depth and the resulting
# round must pass fault-tolerance verification at t=2.

_CSS_LAYOUTS: dict[tuple[str, str], dict] = {}


def _css_builder(code_id: str, kind: str):
    def build() -> SchemeCircuitSet:
        layout = _CSS_LAYOUTS[(code_id, kind)]
        return _build_css_scheme(
            code_id,
            f"{code_id}:{layout['label']}",
            parse_matrix(layout["matrix"]),
            layout["couplings"],
            layout["groups"],
            serial=(kind == "serial"),
            depth_target=layout.get("depth"),
        )

    return build


_BUILTIN_BUILDERS = {
    ("c513", "[1 1 1 1]"): _c513_serial,
    ("c513", "[1;1;1;1]"): _c513_parallel,
    ("c513", "[2;2]"): _c513_flag_sharing,
}

_MATRIX_ALIASES = {
    "1T": "[1 1 1 1]",
    "1": "[1;1;1;1]",
}


def builtin_scheme(code_id: str, matrix_text: str) -> SchemeCircuitSet:
    """One of the published scheme layouts, by code id and matrix notation."""
    key = _normalize_matrix_key(code_id, matrix_text)
    builder = _BUILTIN_BUILDERS.get((code_id, key))
    if builder is None:
        known = sorted(k for c, k in _BUILTIN_BUILDERS if c == code_id)
        raise ValueError(f"no builtin layout {matrix_text!r} for {code_id} (have {known})")
    return builder()


def _normalize_matrix_key(code_id: str, matrix_text: str) -> str:
    text = matrix_text.strip()
    code = make_builtin(code_id)
    s = len(code.z_type_indices()) if code.css else 4
    if text in ("1T", "1t"):
        return "[" + " ".join(["1"] * s) + "]"
    if text == "1":
        return "[" + ";".join(["1"] * s) + "]"
    m = parse_matrix(text)
    return m.text().replace("; ", ";")


def builtin_scheme_names(code_id: str) -> list[str]:
    return sorted(k for c, k in _BUILTIN_BUILDERS if c == code_id)
