"""n-bit comparator circuits built from chained one-bit compare blocks.

Layout for width n (most significant bit first, index 0):

    qubits   0 .. n-1    operand a
             n .. 2n-1   operand b
             2n          r0  (greater flag)
             2n+1        r1  (less flag)
    clbits   0 <- r0, 1 <- r1

Each one-bit block sets r0 := a_i AND NOT b_i and r1 := NOT a_i AND b_i,
restores the operand qubits, and measures both flags; blocks after the first
are gated on the register still reading 0 (no verdict yet). Once a less-than
verdict lands, a correction site gated on register value 2 flips r0 and
re-measures it, turning the (0,1) reading into (1,1). The two builder
variants differ only in where those correction sites sit:

    - FIGURE: after every second block (blocks 2, 4, ...), n//2 sites;
    - ALGORITHMIC: after every block past the first, n-1 sites.

Both agree on the comparison class everywhere; they can disagree on r0 when
the answer is "less", which is why only the class and r1 are contractual.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuit import (
    BLOCK_BEGIN,
    BLOCK_END,
    Circuit,
    ClassicalCondition,
    GateKind,
    GateOp,
    Instruction,
    MeasureOp,
)
from .errors import DuplicateTarget, EmptyOperand, InvalidBitstring
from .simulate import ClassicalRunner, DenseRunner, select_backend


class ComparisonClass(Enum):
    EQUAL = "Equal"
    GREATER = "Greater"
    LESS = "Less"


class BuilderVariant(Enum):
    FIGURE = "figure"
    ALGORITHMIC = "algorithmic"


@dataclass(frozen=True)
class Operands:
    """Two equal-width MSB-first bit vectors."""

    a_bits: tuple[int, ...]
    b_bits: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a_bits)

    def initial_qubit_bits(self) -> tuple[int, ...]:
        """Qubit assignment (a bits, b bits, r0=0, r1=0) for the builder layout."""
        return self.a_bits + self.b_bits + (0, 0)


@dataclass(frozen=True)
class ComparisonOutcome:
    r0: int
    r1: int
    comparison: ComparisonClass
    backend: str
    variant: BuilderVariant
    n: int


def _bits_of(value) -> tuple[int, ...]:
    if isinstance(value, str):
        if value == "":
            raise EmptyOperand("operand bitstring is empty")
        if any(ch not in "01" for ch in value):
            raise InvalidBitstring(f"operand contains non-binary characters: {value!r}")
        return tuple(int(ch) for ch in value)
    if isinstance(value, int):
        if value < 0:
            raise InvalidBitstring(f"operands must be non-negative: {value}")
        return tuple(int(ch) for ch in format(value, "b"))
    raise InvalidBitstring(f"operand must be an int or a bitstring: {value!r}")


def encode_operands(a, b) -> Operands:
    """Render both operands MSB-first, left-padding the shorter with zeros."""
    a_bits, b_bits = _bits_of(a), _bits_of(b)
    n = max(len(a_bits), len(b_bits))
    return Operands(
        (0,) * (n - len(a_bits)) + a_bits,
        (0,) * (n - len(b_bits)) + b_bits,
    )


def build_1bc(qa: int, qb: int, qr0: int, qr1: int, c0: int, c1: int,
              condition: ClassicalCondition | None = None) -> list[Instruction]:
    """One-bit compare block: 4 X, 2 CCX, 2 measurements, barrier-bracketed.

    With b inverted, CCX(a, b -> r0) computes a AND NOT b; restoring b and
    inverting a gives NOT a AND b into r1; the trailing X restores a. The
    optional condition lands on the gates only (measurements never carry one).
    """
    if len({qa, qb, qr0, qr1}) != 4:
        raise DuplicateTarget(f"block qubits must be distinct: {(qa, qb, qr0, qr1)}")
    return [
        GateOp(GateKind.X, (qb,), condition),
        GateOp(GateKind.CCX, (qa, qb, qr0), condition),
        GateOp(GateKind.X, (qa,), condition),
        GateOp(GateKind.X, (qb,), condition),
        GateOp(GateKind.CCX, (qa, qb, qr1), condition),
        GateOp(GateKind.X, (qa,), condition),
        MeasureOp(qr0, c0),
        MeasureOp(qr1, c1),
    ]


def _correction_sites(n: int, variant: BuilderVariant) -> set[int]:
    """Loop indices i (1..n-1) after whose block a flip-r0 site is placed."""
    if variant is BuilderVariant.FIGURE:
        return {i for i in range(1, n) if i % 2 == 1}
    return set(range(1, n))


def build_gqbsc(ops: Operands, variant: BuilderVariant = BuilderVariant.FIGURE) -> Circuit:
    """Full comparator circuit on 2n+2 qubits and 2 clbits.

    Input-prep X gates set the operand bits that are 1; the block chain and
    correction sites follow. Built for zero operands the circuit is the
    value-independent body, which is what the census reporting uses.
    """
    n = ops.n
    if n < 1:
        raise EmptyOperand("comparator needs at least one bit")
    qr0, qr1 = 2 * n, 2 * n + 1
    labels = {i: f"a_{i}" for i in range(n)}
    labels.update({n + i: f"b_{i}" for i in range(n)})
    labels.update({qr0: "r_0", qr1: "r_1"})
    circuit = Circuit(2 * n + 2, 2, labels=labels)

    for i, bit in enumerate(ops.a_bits):
        if bit:
            circuit.x(i)
    for i, bit in enumerate(ops.b_bits):
        if bit:
            circuit.x(n + i)

    skip_unless_open = ClassicalCondition((0, 1), 0)
    flip_on_less = ClassicalCondition((0, 1), 2)
    sites = _correction_sites(n, variant)
    for i in range(n):
        condition = None if i == 0 else skip_unless_open
        circuit.barrier(BLOCK_BEGIN)
        for instr in build_1bc(i, n + i, qr0, qr1, 0, 1, condition):
            circuit.append(instr)
        circuit.barrier(BLOCK_END)
        if i in sites:
            circuit.x(qr0, condition=flip_on_less)
            circuit.measure(qr0, 0)
    return circuit


def interpret(r0: int, r1: int) -> ComparisonClass:
    """Flag reading: r1 set means less; r0 alone means greater; neither, equal."""
    if r1:
        return ComparisonClass.LESS
    if r0:
        return ComparisonClass.GREATER
    return ComparisonClass.EQUAL


def reference_flags(ops: Operands, variant: BuilderVariant = BuilderVariant.FIGURE) -> tuple[int, int]:
    """Classical oracle for the final (r0, r1) flags, variant-faithful.

    Mirrors the circuit exactly: a block fires only while both flags are
    clear; a correction site flips r0 when the flags read (0, 1).
    """
    n = ops.n
    sites = _correction_sites(n, variant)
    r0 = r1 = 0
    for i in range(n):
        if r0 == 0 and r1 == 0:
            a_i, b_i = ops.a_bits[i], ops.b_bits[i]
            r0 = a_i & (1 - b_i)
            r1 = (1 - a_i) & b_i
        if i in sites and r0 == 0 and r1 == 1:
            r0 = 1
    return r0, r1


def compare(a, b, backend: str = "auto",
            variant: BuilderVariant = BuilderVariant.FIGURE,
            seed: int | None = None) -> ComparisonOutcome:
    """Encode, build, run, and interpret in one call."""
    ops = encode_operands(a, b)
    circuit = build_gqbsc(ops, variant)
    chosen = select_backend(circuit, backend)
    if chosen == "classical":
        cl = ClassicalRunner(circuit).run_bits()
    else:
        cl = tuple(DenseRunner(circuit).run(seed=seed).classical_bits)
    r0, r1 = cl[0], cl[1]
    return ComparisonOutcome(r0, r1, interpret(r0, r1), chosen, variant, ops.n)


# -- verification sweeps -------------------------------------------------------

def _classify_ints(a: int, b: int) -> ComparisonClass:
    if a < b:
        return ComparisonClass.LESS
    if a > b:
        return ComparisonClass.GREATER
    return ComparisonClass.EQUAL


def _int_to_bits(value: int, n: int) -> tuple[int, ...]:
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def _make_runner(circuit: Circuit, backend: str):
    return ClassicalRunner(circuit) if backend == "classical" else DenseRunner(circuit)


def _run_flags(runner, bits) -> tuple[int, int]:
    if isinstance(runner, ClassicalRunner):
        cl = runner.run_bits(bits)
    else:
        cl = runner.run(bits).classical_bits
    return cl[0], cl[1]


def soundness_check_exhaustive(n: int, variant: BuilderVariant = BuilderVariant.FIGURE,
                               backend: str = "classical") -> tuple[int, int]:
    """All 4^n operand pairs at width n against the integer-comparison and
    flag oracles; returns (pairs checked, mismatches)."""
    body = build_gqbsc(Operands((0,) * n, (0,) * n), variant)
    runner = _make_runner(body, backend)
    patterns = [_int_to_bits(v, n) for v in range(1 << n)]
    mismatches = 0
    pairs = 0
    for a in range(1 << n):
        a_bits = patterns[a]
        for b in range(1 << n):
            b_bits = patterns[b]
            r0, r1 = _run_flags(runner, a_bits + b_bits + (0, 0))
            pairs += 1
            if interpret(r0, r1) is not _classify_ints(a, b):
                mismatches += 1
            elif (r0, r1) != reference_flags(Operands(a_bits, b_bits), variant):
                mismatches += 1
    return pairs, mismatches


def soundness_check_random(n: int, samples: int, seed: int = 0,
                           variant: BuilderVariant = BuilderVariant.FIGURE,
                           backend: str = "classical") -> tuple[int, int]:
    """Seeded random operand pairs at width n; returns (pairs, mismatches)."""
    import random

    rng = random.Random(seed)
    body = build_gqbsc(Operands((0,) * n, (0,) * n), variant)
    runner = _make_runner(body, backend)
    mismatches = 0
    for _ in range(samples):
        a = rng.getrandbits(n)
        b = rng.getrandbits(n)
        a_bits, b_bits = _int_to_bits(a, n), _int_to_bits(b, n)
        r0, r1 = _run_flags(runner, a_bits + b_bits + (0, 0))
        if interpret(r0, r1) is not _classify_ints(a, b):
            mismatches += 1
        elif (r0, r1) != reference_flags(Operands(a_bits, b_bits), variant):
            mismatches += 1
    return samples, mismatches
