"""Timestep-scheduled circuit representation with typed qubits.

Granularity follows the resource-accounting conventions used throughout:
the *window* of a circuit is the set of timesteps containing at least one
two-qubit gate, circuit depth is the number of such timesteps, and idle
instances fill exactly the (timestep, qubit) slots inside the window not
covered by any gate.  State preparations and measurements live on their
own timesteps outside the window and are therefore neither depth nor idle
contributors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

DATA = "data"
MEASUREMENT = "measurement"
FLAG = "flag"
ROLES = (DATA, MEASUREMENT, FLAG)

CNOT = "CNOT"
CZ = "CZ"
PREP_Z = "PREP_Z"
PREP_X = "PREP_X"
MEAS_Z = "MEAS_Z"
MEAS_X = "MEAS_X"
IDLE = "IDLE"

TWO_QUBIT_KINDS = (CNOT, CZ)
PREP_KINDS = (PREP_Z, PREP_X)
MEAS_KINDS = (MEAS_Z, MEAS_X)
GATE_KINDS = TWO_QUBIT_KINDS + PREP_KINDS + MEAS_KINDS + (IDLE,)


@dataclass(frozen=True)
class QubitRole:
    role: str
    label: int

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown qubit role {self.role!r}")


@dataclass(frozen=True)
class GateInstance:
    """One gate at one timestep; ``qubits`` are indices into Circuit.qubits
    (control first for CNOT)."""

    kind: str
    qubits: tuple[int, ...]
    t: int

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(self.qubits) != want or len(set(self.qubits)) != want:
            raise ValueError(f"{self.kind} needs {want} distinct qubit(s), got {self.qubits}")
        if self.t < 0:
            raise ValueError("timestep must be non-negative")


@dataclass(frozen=True)
class ResourceCounts:
    n_g: int
    n_p: int
    n_m: int
    n_i: int
    depth: int
    n_qubits: int
    n_meas_syndrome: int  # measurements on measurement-role qubits
    n_meas_flag: int      # measurements on flag-role qubits


@dataclass(frozen=True)
class Circuit:
    qubits: tuple[QubitRole, ...]
    gates: tuple[GateInstance, ...]
    n_data: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(sorted(
            self.gates, key=lambda g: (g.t, min(g.qubits)))))

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def data_indices(self) -> tuple[int, ...]:
        return tuple(i for i, q in enumerate(self.qubits) if q.role == DATA)

    def role_of(self, index: int) -> str:
        return self.qubits[index].role

    def window(self) -> tuple[int, ...]:
        """Timesteps carrying at least one two-qubit gate, ascending."""
        return tuple(sorted({g.t for g in self.gates if g.kind in TWO_QUBIT_KINDS}))

    def with_idles_filled(self) -> "Circuit":
        """Return a copy whose IDLE instances exactly fill the uncovered
        window slots (any pre-existing IDLEs are recomputed)."""
        kept = [g for g in self.gates if g.kind != IDLE]
        busy = {(g.t, q) for g in kept for q in g.qubits}
        idles = [
            GateInstance(IDLE, (q,), t)
            for t in self.window()
            for q in range(self.n_qubits)
            if (t, q) not in busy
        ]
        return replace(self, gates=tuple(kept + idles))

    def to_json_dict(self) -> dict:
        return {
            "n_data": self.n_data,
            "qubits": [{"role": q.role, "label": q.label} for q in self.qubits],
            "gates": [{"kind": g.kind, "qubits": list(g.qubits), "t": g.t} for g in self.gates],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Circuit":
        return cls(
            qubits=tuple(QubitRole(q["role"], int(q["label"])) for q in data["qubits"]),
            gates=tuple(
                GateInstance(g["kind"], tuple(int(q) for q in g["qubits"]), int(g["t"]))
                for g in data["gates"]
            ),
            n_data=int(data["n_data"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1)

    @classmethod
    def loads(cls, text: str) -> "Circuit":
        return cls.from_json_dict(json.loads(text))


def validate(circuit: Circuit) -> list[str]:
    """Check the structural invariants; returns a list of violations
    (empty = ok) rather than raising."""
    issues: list[str] = []
    seen: dict[tuple[int, int], str] = {}
    for g in circuit.gates:
        for q in g.qubits:
            if not 0 <= q < circuit.n_qubits:
                issues.append(f"gate {g.kind}@t{g.t} references qubit {q} out of range")
                continue
            key = (g.t, q)
            if key in seen:
                issues.append(f"qubit {q} touched twice at timestep {g.t}")
            seen[key] = g.kind

    data = set(circuit.data_indices())
    if len(data) != circuit.n_data:
        issues.append(f"expected {circuit.n_data} data qubits, found {len(data)}")
    labels = sorted(circuit.qubits[i].label for i in data)
    if labels != list(range(1, circuit.n_data + 1)):
        issues.append(f"data labels must be 1..{circuit.n_data}, got {labels}")

    for i, q in enumerate(circuit.qubits):
        history = sorted((g.t, g.kind) for g in circuit.gates if i in g.qubits)
        kinds = [k for _, k in history if k != IDLE]
        if q.role == DATA:
            if any(k in PREP_KINDS + MEAS_KINDS for k in kinds):
                issues.append(f"data qubit {i} has prep/measure instances")
            continue
        # ancilla wires alternate prep / two-qubit gates / measure
        state = "idle"
        for kind in kinds:
            if state == "idle":
                if kind in PREP_KINDS:
                    state = "prepped"
                else:
                    issues.append(f"ancilla {i}: {kind} before preparation")
                    break
            elif state == "prepped":
                if kind in TWO_QUBIT_KINDS:
                    continue
                if kind in MEAS_KINDS:
                    state = "idle"
                else:
                    issues.append(f"ancilla {i}: unexpected {kind} after preparation")
                    break
        else:
            if state == "prepped":
                issues.append(f"ancilla {i}: prepared but never measured")

    window = set(circuit.window())
    covered: dict[tuple[int, int], int] = {}
    idle_slots = set()
    for g in circuit.gates:
        for q in g.qubits:
            if g.kind == IDLE:
                idle_slots.add((g.t, q))
            else:
                covered[(g.t, q)] = 1
    expected_idle = {
        (t, q)
        for t in window
        for q in range(circuit.n_qubits)
        if (t, q) not in covered
    }
    if idle_slots != expected_idle:
        missing = sorted(expected_idle - idle_slots)[:4]
        extra = sorted(idle_slots - expected_idle)[:4]
        issues.append(f"idle fill mismatch: missing {missing}, extra {extra}")
    return issues


def depth(circuit: Circuit) -> int:
    """Two-qubit gate depth: number of window timesteps."""
    return len(circuit.window())


def resource_counts(circuit: Circuit) -> ResourceCounts:
    n_g = sum(1 for g in circuit.gates if g.kind in TWO_QUBIT_KINDS)
    n_p = sum(1 for g in circuit.gates if g.kind in PREP_KINDS)
    meas = [g for g in circuit.gates if g.kind in MEAS_KINDS]
    d = depth(circuit)
    n_i = d * circuit.n_qubits - 2 * n_g
    n_syn = sum(1 for g in meas if circuit.role_of(g.qubits[0]) == MEASUREMENT)
    n_flag = sum(1 for g in meas if circuit.role_of(g.qubits[0]) == FLAG)
    return ResourceCounts(
        n_g=n_g,
        n_p=n_p,
        n_m=len(meas),
        n_i=n_i,
        depth=d,
        n_qubits=circuit.n_qubits,
        n_meas_syndrome=n_syn,
        n_meas_flag=n_flag,
    )


def effective_area(counts: ResourceCounts, beta: float, gamma: float) -> float:
    """Noise-weighted resource metric 2*n_g + n_p + beta*n_m + gamma*n_i."""
    return 2 * counts.n_g + counts.n_p + beta * counts.n_m + gamma * counts.n_i


def estimate_area_serial(n: int, s: int, w: int, beta: float, gamma: float) -> float:
    """Closed-form serial-scheme area estimate (mean stabilizer weight w).

    An approximation only; exact counts from resource_counts are used
    wherever a concrete circuit exists.  The measurement term is read with
    the stage count s throughout.
    """
    return (
        beta * (s + w * s / 2)
        + (s + 9 * w * s / 2)
        + gamma * (2 * w * s * n + s * w * w - 2 * w * s)
    )


def estimate_area_parallel(n: int, s: int, w: int, beta: float, gamma: float) -> float:
    """Closed-form fully-parallel area estimate for both stabilizer types."""
    return (
        gamma * (6 * w * n + s * w + 3 * s * w * w / 2)
        + 2 * s * w
        + (1 + beta) * (s + s * w / 2)
    )


@dataclass(frozen=True)
class Location:
    """One enumerable fault site."""

    index: int
    kind: str
    qubits: tuple[int, ...]
    t: int


def enumerate_locations(circuit: Circuit) -> tuple[Location, ...]:
    """Deterministic location list: timestep-major, qubit-minor; one entry
    per gate/prep/measure/idle instance."""
    ordered = sorted(circuit.gates, key=lambda g: (g.t, min(g.qubits), g.kind))
    return tuple(
        Location(index=i, kind=g.kind, qubits=g.qubits, t=g.t)
        for i, g in enumerate(ordered)
    )
