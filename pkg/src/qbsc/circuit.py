"""Dynamic-circuit intermediate representation.

The IR is an ordered list of instructions over declared qubit and classical-bit
registers. Three instruction forms exist:

    - GateOp:    a gate from the fixed kind set, optionally guarded by a
                 classical equality condition,
    - MeasureOp: an unconditional Z-measurement of one qubit into one clbit,
    - BarrierOp: a zero-cost, zero-delay marker used only to delimit named
                 regions for census reporting (no scheduling effect).

Conventions fixed here and asserted by the test suite:
    - clbit 0 is the least-significant bit of the classical register value,
      so a condition value of 2 on a 2-bit register means (bit1=1, bit0=0);
    - instruction order is execution order; nothing is reordered;
    - circuits are treated as immutable once construction finishes (builders
      mutate their own circuit, nothing else should).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ArityMismatch,
    CircuitError,
    DuplicateTarget,
    IndexOutOfRange,
    MissingDelayEntry,
)

# Barrier labels the comparator builder uses to bracket one-bit-compare blocks.
BLOCK_BEGIN = "1bc"
BLOCK_END = "1bc_end"


class GateKind(Enum):
    """The five gate identities the toolkit knows about.

    Unit cost and unit delay follow the usual reversible-logic accounting:
    every one- and two-qubit primitive counts 1, a Toffoli counts 5 (its
    standard expansion into two CX, two controlled-V and one controlled-V†).
    """

    X = "x"
    CX = "cx"
    CCX = "ccx"
    CV = "cv"
    CVDG = "cvdg"

    @property
    def arity(self) -> int:
        return {GateKind.X: 1, GateKind.CX: 2, GateKind.CCX: 3,
                GateKind.CV: 2, GateKind.CVDG: 2}[self]

    @property
    def unit_cost(self) -> int:
        return 5 if self is GateKind.CCX else 1

    @property
    def unit_delay(self) -> int:
        return self.unit_cost


#: Default per-kind delay table for structural_depth.
DEFAULT_DELAYS: dict[GateKind, int] = {kind: kind.unit_delay for kind in GateKind}


@dataclass(frozen=True)
class ClassicalCondition:
    """Equality test against a constant over a subset of classical bits.

    ``mask`` lists the participating clbit indices (ascending); bit j of
    ``value`` corresponds to clbit ``mask[j]``.
    """

    mask: tuple[int, ...]
    value: int

    def __post_init__(self):
        object.__setattr__(self, "mask", tuple(self.mask))
        if len(set(self.mask)) != len(self.mask):
            raise DuplicateTarget(f"condition mask repeats a clbit: {self.mask}")
        if any(b < 0 for b in self.mask):
            raise IndexOutOfRange(f"negative clbit in condition mask: {self.mask}")
        if tuple(sorted(self.mask)) != self.mask:
            raise CircuitError(f"condition mask must be ascending: {self.mask}")
        if not 0 <= self.value < (1 << len(self.mask)):
            raise IndexOutOfRange(
                f"condition value {self.value} needs more than {len(self.mask)} masked bits"
            )

    def holds(self, clbits: Sequence[int]) -> bool:
        value = 0
        for j, b in enumerate(self.mask):
            value |= clbits[b] << j
        return value == self.value


@dataclass(frozen=True)
class GateOp:
    gate: GateKind
    targets: tuple[int, ...]
    condition: ClassicalCondition | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != self.gate.arity:
            raise ArityMismatch(
                f"{self.gate.value} takes {self.gate.arity} qubits, got {len(self.targets)}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise DuplicateTarget(f"repeated qubit in {self.gate.value}{self.targets}")


@dataclass(frozen=True)
class MeasureOp:
    """Z-measurement of ``qubit`` recorded into ``clbit``. Never conditioned."""

    qubit: int
    clbit: int


@dataclass(frozen=True)
class BarrierOp:
    label: str | None = None


Instruction = Union[GateOp, MeasureOp, BarrierOp]


@dataclass(eq=True)
class Circuit:
    """Ordered dynamic circuit over ``num_qubits`` qubits and ``num_clbits`` bits.

    ``labels`` optionally names qubits for display/serialization; it does not
    participate in structural equality.
    """

    num_qubits: int
    num_clbits: int
    instructions: list[Instruction] = field(default_factory=list)
    labels: dict[int, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.num_qubits < 0 or self.num_clbits < 0:
            raise CircuitError("register widths must be non-negative")

    # -- construction --------------------------------------------------------

    def append(self, instr: Instruction) -> "Circuit":
        """Validate ``instr`` against the declared widths and append it."""
        if isinstance(instr, GateOp):
            for q in instr.targets:
                if not 0 <= q < self.num_qubits:
                    raise IndexOutOfRange(f"qubit {q} outside [0, {self.num_qubits})")
            if instr.condition is not None:
                for b in instr.condition.mask:
                    if not 0 <= b < self.num_clbits:
                        raise IndexOutOfRange(f"clbit {b} outside [0, {self.num_clbits})")
        elif isinstance(instr, MeasureOp):
            if not 0 <= instr.qubit < self.num_qubits:
                raise IndexOutOfRange(f"qubit {instr.qubit} outside [0, {self.num_qubits})")
            if not 0 <= instr.clbit < self.num_clbits:
                raise IndexOutOfRange(f"clbit {instr.clbit} outside [0, {self.num_clbits})")
        elif not isinstance(instr, BarrierOp):
            raise CircuitError(f"not an instruction: {instr!r}")
        self.instructions.append(instr)
        return self

    def x(self, q: int, condition: ClassicalCondition | None = None) -> "Circuit":
        return self.append(GateOp(GateKind.X, (q,), condition))

    def cx(self, c: int, t: int, condition: ClassicalCondition | None = None) -> "Circuit":
        return self.append(GateOp(GateKind.CX, (c, t), condition))

    def ccx(self, c1: int, c2: int, t: int,
            condition: ClassicalCondition | None = None) -> "Circuit":
        return self.append(GateOp(GateKind.CCX, (c1, c2, t), condition))

    def cv(self, c: int, t: int, condition: ClassicalCondition | None = None) -> "Circuit":
        return self.append(GateOp(GateKind.CV, (c, t), condition))

    def cvdg(self, c: int, t: int, condition: ClassicalCondition | None = None) -> "Circuit":
        return self.append(GateOp(GateKind.CVDG, (c, t), condition))

    def measure(self, q: int, c: int) -> "Circuit":
        return self.append(MeasureOp(q, c))

    def barrier(self, label: str | None = None) -> "Circuit":
        return self.append(BarrierOp(label))

    # -- queries --------------------------------------------------------------

    @property
    def width_total(self) -> int:
        return self.num_qubits + self.num_clbits

    def gate_ops(self) -> Iterable[GateOp]:
        return (i for i in self.instructions if isinstance(i, GateOp))

    def is_permutation_only(self) -> bool:
        """True when every gate is classical (X/CX/CCX), i.e. basis-preserving."""
        return all(op.gate not in (GateKind.CV, GateKind.CVDG) for op in self.gate_ops())


def new_circuit(num_qubits: int, num_clbits: int) -> Circuit:
    """Empty circuit with fixed register widths."""
    return Circuit(num_qubits, num_clbits)


def append(circuit: Circuit, instr: Instruction) -> Circuit:
    """Free-function alias for :meth:`Circuit.append`."""
    return circuit.append(instr)


@dataclass(frozen=True)
class GateCensus:
    """Static instruction counts plus register widths.

    ``measure_count`` counts every measurement in the IR; ``block_measure_count``
    counts only the measurements lying inside a ``1bc``-labelled barrier span
    (the per-block meters, which is what the gate-growth reporting tracks).
    Span attribution assumes begin/end barriers are balanced, as builder
    outputs guarantee; every other field is additive over any concatenation.
    """

    x: int = 0
    cx: int = 0
    ccx: int = 0
    cv: int = 0
    cvdg: int = 0
    measure_count: int = 0
    block_measure_count: int = 0
    conditional_x_count: int = 0
    block_count_1bc: int = 0
    width_qubits: int = 0
    width_total: int = 0

    @property
    def total_unit_cost(self) -> int:
        """Sum of unit costs over all gates (measures/barriers cost nothing)."""
        return self.x + self.cx + 5 * self.ccx + self.cv + self.cvdg

    def __add__(self, other: "GateCensus") -> "GateCensus":
        if (self.width_qubits, self.width_total) != (other.width_qubits, other.width_total):
            raise CircuitError("cannot add censuses of different widths")
        return GateCensus(
            x=self.x + other.x,
            cx=self.cx + other.cx,
            ccx=self.ccx + other.ccx,
            cv=self.cv + other.cv,
            cvdg=self.cvdg + other.cvdg,
            measure_count=self.measure_count + other.measure_count,
            block_measure_count=self.block_measure_count + other.block_measure_count,
            conditional_x_count=self.conditional_x_count + other.conditional_x_count,
            block_count_1bc=self.block_count_1bc + other.block_count_1bc,
            width_qubits=self.width_qubits,
            width_total=self.width_total,
        )


def static_census(circuit: Circuit) -> GateCensus:
    """Count every instruction present in the IR, fired or not."""
    counts = {kind: 0 for kind in GateKind}
    measures = block_measures = cond_x = blocks = 0
    in_block = False
    for instr in circuit.instructions:
        if isinstance(instr, GateOp):
            counts[instr.gate] += 1
            if instr.gate is GateKind.X and instr.condition is not None:
                cond_x += 1
        elif isinstance(instr, MeasureOp):
            measures += 1
            if in_block:
                block_measures += 1
        else:
            if instr.label == BLOCK_BEGIN:
                blocks += 1
                in_block = True
            elif instr.label == BLOCK_END:
                in_block = False
    return GateCensus(
        x=counts[GateKind.X],
        cx=counts[GateKind.CX],
        ccx=counts[GateKind.CCX],
        cv=counts[GateKind.CV],
        cvdg=counts[GateKind.CVDG],
        measure_count=measures,
        block_measure_count=block_measures,
        conditional_x_count=cond_x,
        block_count_1bc=blocks,
        width_qubits=circuit.num_qubits,
        width_total=circuit.width_total,
    )


def structural_depth(circuit: Circuit,
                     delay_table: Mapping[GateKind, int] | None = None,
                     *, measure_delay: int = 0) -> int:
    """Critical-path length under as-soon-as-possible layering.

    An instruction starts once every qubit it touches is free; a conditioned
    instruction additionally waits for the measurements that last wrote its
    condition bits. Barriers are census markers only and do not schedule.
    """
    if delay_table is None:
        delay_table = DEFAULT_DELAYS
    qubit_free = [0] * circuit.num_qubits
    clbit_written = [0] * circuit.num_clbits
    depth = 0
    for instr in circuit.instructions:
        if isinstance(instr, BarrierOp):
            continue
        if isinstance(instr, MeasureOp):
            start = qubit_free[instr.qubit]
            end = start + measure_delay
            qubit_free[instr.qubit] = end
            clbit_written[instr.clbit] = end
        else:
            if instr.gate not in delay_table:
                raise MissingDelayEntry(f"no delay entry for {instr.gate.value}")
            start = max(qubit_free[q] for q in instr.targets)
            if instr.condition is not None:
                for b in instr.condition.mask:
                    start = max(start, clbit_written[b])
            end = start + delay_table[instr.gate]
            for q in instr.targets:
                qubit_free[q] = end
        depth = max(depth, end)
    return depth


# -- JSON interchange ---------------------------------------------------------
#
# Schema (used by the CLI's json output):
#   {"qubits": N, "clbits": M,
#    "instr": [{"g": "ccx", "t": [0, 1, 2]},
#              {"m": [2, 0]},
#              {"g": "x", "t": [2], "if": {"mask": [0, 1], "eq": 2}},
#              {"b": "1bc"}]}
# The optional "labels" key maps qubit indices (as strings) to display names.

def circuit_to_json(circuit: Circuit) -> dict:
    instr: list[dict] = []
    for op in circuit.instructions:
        if isinstance(op, GateOp):
            entry: dict = {"g": op.gate.value, "t": list(op.targets)}
            if op.condition is not None:
                entry["if"] = {"mask": list(op.condition.mask), "eq": op.condition.value}
            instr.append(entry)
        elif isinstance(op, MeasureOp):
            instr.append({"m": [op.qubit, op.clbit]})
        else:
            instr.append({"b": op.label})
    doc = {"qubits": circuit.num_qubits, "clbits": circuit.num_clbits, "instr": instr}
    if circuit.labels:
        doc["labels"] = {str(q): name for q, name in sorted(circuit.labels.items())}
    return doc


def circuit_from_json(doc: dict) -> Circuit:
    labels = None
    if "labels" in doc:
        labels = {int(q): name for q, name in doc["labels"].items()}
    circuit = Circuit(int(doc["qubits"]), int(doc["clbits"]), labels=labels)
    for entry in doc["instr"]:
        if "g" in entry:
            condition = None
            if "if" in entry:
                condition = ClassicalCondition(tuple(entry["if"]["mask"]), int(entry["if"]["eq"]))
            circuit.append(GateOp(GateKind(entry["g"]), tuple(entry["t"]), condition))
        elif "m" in entry:
            circuit.append(MeasureOp(int(entry["m"][0]), int(entry["m"][1])))
        elif "b" in entry:
            circuit.append(BarrierOp(entry["b"]))
        else:
            raise CircuitError(f"unrecognized instruction entry: {entry!r}")
    return circuit
