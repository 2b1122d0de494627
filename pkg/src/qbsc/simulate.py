"""Circuit execution: dense statevector and bit-exact classical backends.

Both backends honor the same dynamic-circuit semantics:
    - instructions run in order;
    - a conditioned gate fires iff the masked classical register currently
      equals its expected value;
    - measurements are unconditional, project without resetting the qubit,
      and overwrite their classical bit.

The classical backend is valid only for permutation gates (X/CX/CCX) on basis
inputs, where every intermediate state stays a basis state; it runs in
O(instructions) time and O(width) memory, which is what makes 1000-bit
operands practical. The dense backend holds all 2^n amplitudes and is capped
(default 24 qubits).

Noise is a stochastic trajectory model: after each fired gate every touched
qubit is depolarized with probability p (a uniformly random Pauli X/Y/Z is
applied), and each recorded measurement bit flips with probability q. For
permutation circuits the Pauli trajectory keeps the state in the basis, so
the classical backend applies the identical model (X/Y flip the bit, Z is a
pure phase) and reproduces the dense backend draw-for-draw under one seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import (
    BarrierOp,
    Circuit,
    GateCensus,
    GateKind,
    MeasureOp,
)
from .errors import NonClassicalGate, NormDrift, SimulationError, TooManyQubits
from .gates import V, VDG

DEFAULT_DENSE_CAP = 24

# Measurement is treated as deterministic when one outcome carries at least
# this much probability mass; below it the Born rule draws from the RNG.
_BASIS_EPS = 1e-12
_NORM_TOL = 1e-6

_OP_X, _OP_CX, _OP_CCX, _OP_MEASURE, _OP_CV, _OP_CVDG = range(6)


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing-per-gate plus readout-flip trajectory noise."""

    depolarizing_per_gate: float = 0.0
    readout_flip: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.depolarizing_per_gate <= 1.0:
            raise ValueError(f"depolarizing probability out of range: {self.depolarizing_per_gate}")
        if not 0.0 <= self.readout_flip <= 1.0:
            raise ValueError(f"readout-flip probability out of range: {self.readout_flip}")


@dataclass(frozen=True)
class RunResult:
    """Outcome of one deterministic run."""

    classical_bits: tuple[int, ...]
    measurement_trace: tuple[tuple[int, int], ...]
    executed_census: GateCensus

    @property
    def register_value(self) -> int:
        """Classical register as an integer, clbit 0 least significant."""
        value = 0
        for k, bit in enumerate(self.classical_bits):
            value |= bit << k
        return value


@dataclass(frozen=True)
class Histogram:
    shots: int
    counts: dict[int, int]

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("histogram counts do not sum to shots")

    def argmax(self) -> int:
        """Most frequent register value (smallest value wins ties)."""
        best = max(self.counts.values())
        return min(v for v, c in self.counts.items() if c == best)


class _UniformStream:
    """Buffered uniform(0,1) draws from a numpy Generator."""

    __slots__ = ("_rng", "_buf", "_i")
    _BLOCK = 256

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._buf = rng.random(self._BLOCK)
        self._i = 0

    def next(self) -> float:
        if self._i == len(self._buf):
            self._buf = self._rng.random(self._BLOCK)
            self._i = 0
        u = self._buf[self._i]
        self._i += 1
        return u


def _coerce_bits(initial_bits, num_qubits: int) -> tuple[int, ...]:
    if initial_bits is None:
        return (0,) * num_qubits
    if isinstance(initial_bits, str):
        bits = tuple(int(ch) for ch in initial_bits)
    else:
        bits = tuple(int(b) for b in initial_bits)
    if len(bits) != num_qubits:
        raise SimulationError(f"initial bits length {len(bits)} != {num_qubits} qubits")
    if any(b not in (0, 1) for b in bits):
        raise SimulationError(f"initial bits must be 0/1: {initial_bits!r}")
    return bits


def _census_from_counters(circuit: Circuit, static: GateCensus, counters: dict) -> GateCensus:
    return GateCensus(
        x=counters["x"],
        cx=counters["cx"],
        ccx=counters["ccx"],
        cv=counters["cv"],
        cvdg=counters["cvdg"],
        measure_count=counters["m"],
        block_measure_count=static.block_measure_count,
        conditional_x_count=counters["cond_x"],
        block_count_1bc=static.block_count_1bc,
        width_qubits=circuit.num_qubits,
        width_total=circuit.width_total,
    )


def _compile(circuit: Circuit):
    """Flatten instructions to opcode tuples (barriers drop out)."""
    prog = []
    for instr in circuit.instructions:
        if isinstance(instr, BarrierOp):
            continue
        if isinstance(instr, MeasureOp):
            prog.append((_OP_MEASURE, instr.qubit, instr.clbit, -1, None, 0))
            continue
        cond = instr.condition
        mask, value = (cond.mask, cond.value) if cond is not None else (None, 0)
        t = instr.targets
        if instr.gate is GateKind.X:
            prog.append((_OP_X, t[0], -1, -1, mask, value))
        elif instr.gate is GateKind.CX:
            prog.append((_OP_CX, t[0], t[1], -1, mask, value))
        elif instr.gate is GateKind.CCX:
            prog.append((_OP_CCX, t[0], t[1], t[2], mask, value))
        elif instr.gate is GateKind.CV:
            prog.append((_OP_CV, t[0], t[1], -1, mask, value))
        else:
            prog.append((_OP_CVDG, t[0], t[1], -1, mask, value))
    return prog


class ClassicalRunner:
    """Precompiled bit-level executor for permutation-only circuits."""

    def __init__(self, circuit: Circuit):
        for op in circuit.gate_ops():
            if op.gate in (GateKind.CV, GateKind.CVDG):
                raise NonClassicalGate(f"{op.gate.value} is not a classical permutation gate")
        self.circuit = circuit
        self.num_qubits = circuit.num_qubits
        self.num_clbits = circuit.num_clbits
        self._prog = _compile(circuit)
        from .circuit import static_census  # local to avoid import-order knots
        self._static = static_census(circuit)

    def run_bits(self, initial_bits=None) -> tuple[int, ...]:
        """Fast path: final classical bits only."""
        bits = list(_coerce_bits(initial_bits, self.num_qubits))
        cl = [0] * self.num_clbits
        for op, a0, a1, a2, mask, value in self._prog:
            if mask is not None:
                r = 0
                for j, mb in enumerate(mask):
                    r |= cl[mb] << j
                if r != value:
                    continue
            if op == _OP_X:
                bits[a0] ^= 1
            elif op == _OP_CCX:
                if bits[a0] and bits[a1]:
                    bits[a2] ^= 1
            elif op == _OP_MEASURE:
                cl[a1] = bits[a0]
            else:  # _OP_CX
                if bits[a0]:
                    bits[a1] ^= 1
        return tuple(cl)

    def run(self, initial_bits=None) -> RunResult:
        bits = list(_coerce_bits(initial_bits, self.num_qubits))
        cl = [0] * self.num_clbits
        trace: list[tuple[int, int]] = []
        counters = {"x": 0, "cx": 0, "ccx": 0, "cv": 0, "cvdg": 0, "m": 0, "cond_x": 0}
        for op, a0, a1, a2, mask, value in self._prog:
            if mask is not None:
                r = 0
                for j, mb in enumerate(mask):
                    r |= cl[mb] << j
                if r != value:
                    continue
            if op == _OP_X:
                bits[a0] ^= 1
                counters["x"] += 1
                if mask is not None:
                    counters["cond_x"] += 1
            elif op == _OP_CCX:
                if bits[a0] and bits[a1]:
                    bits[a2] ^= 1
                counters["ccx"] += 1
            elif op == _OP_MEASURE:
                cl[a1] = bits[a0]
                trace.append((a1, bits[a0]))
                counters["m"] += 1
            else:
                if bits[a0]:
                    bits[a1] ^= 1
                counters["cx"] += 1
        return RunResult(tuple(cl), tuple(trace),
                         _census_from_counters(self.circuit, self._static, counters))

    def final_qubits(self, initial_bits=None) -> tuple[int, ...]:
        """Qubit values after the run (used to check operand preservation)."""
        bits = list(_coerce_bits(initial_bits, self.num_qubits))
        cl = [0] * self.num_clbits
        for op, a0, a1, a2, mask, value in self._prog:
            if mask is not None:
                r = 0
                for j, mb in enumerate(mask):
                    r |= cl[mb] << j
                if r != value:
                    continue
            if op == _OP_X:
                bits[a0] ^= 1
            elif op == _OP_CCX:
                if bits[a0] and bits[a1]:
                    bits[a2] ^= 1
            elif op == _OP_MEASURE:
                cl[a1] = bits[a0]
            else:
                if bits[a0]:
                    bits[a1] ^= 1
        return tuple(bits)

    def run_value(self, initial_bits, rng: np.random.Generator | None,
                  noise: NoiseModel | None) -> int:
        """Register value of one (possibly noisy) trajectory."""
        if noise is None:
            cl = self.run_bits(initial_bits)
            return sum(b << k for k, b in enumerate(cl))
        p, q = noise.depolarizing_per_gate, noise.readout_flip
        stream = _UniformStream(rng)
        bits = list(_coerce_bits(initial_bits, self.num_qubits))
        cl = [0] * self.num_clbits
        for op, a0, a1, a2, mask, value in self._prog:
            if mask is not None:
                r = 0
                for j, mb in enumerate(mask):
                    r |= cl[mb] << j
                if r != value:
                    continue
            if op == _OP_X:
                bits[a0] ^= 1
                touched = (a0,)
            elif op == _OP_CCX:
                if bits[a0] and bits[a1]:
                    bits[a2] ^= 1
                touched = (a0, a1, a2)
            elif op == _OP_MEASURE:
                recorded = bits[a0]
                if stream.next() < q:
                    recorded ^= 1
                cl[a1] = recorded
                continue
            else:
                if bits[a0]:
                    bits[a1] ^= 1
                touched = (a0, a1)
            for qb in touched:
                if stream.next() < p:
                    pauli = int(stream.next() * 3)
                    if pauli != 2:  # X and Y flip a basis state; Z only phases it
                        bits[qb] ^= 1
        return sum(b << k for k, b in enumerate(cl))


class DenseRunner:
    """Precompiled dense statevector executor with mid-circuit measurement."""

    def __init__(self, circuit: Circuit, qubit_cap: int = DEFAULT_DENSE_CAP):
        if circuit.num_qubits > qubit_cap:
            raise TooManyQubits(
                f"{circuit.num_qubits} qubits exceeds dense cap {qubit_cap}"
            )
        self.circuit = circuit
        self.num_qubits = circuit.num_qubits
        self.num_clbits = circuit.num_clbits
        self._prog = _compile(circuit)
        from .circuit import static_census
        self._static = static_census(circuit)

    # Axis helpers: qubit i is tensor axis i (most significant first).

    @staticmethod
    def _sl(n: int, axis: int, v: int):
        idx = [slice(None)] * n
        idx[axis] = v
        return tuple(idx)

    def _apply_x(self, state, q, n):
        sl0, sl1 = self._sl(n, q, 0), self._sl(n, q, 1)
        tmp = state[sl0].copy()
        state[sl0] = state[sl1]
        state[sl1] = tmp

    def _apply_y(self, state, q, n):
        sl0, sl1 = self._sl(n, q, 0), self._sl(n, q, 1)
        tmp = state[sl0].copy()
        state[sl0] = -1j * state[sl1]
        state[sl1] = 1j * tmp

    def _apply_z(self, state, q, n):
        state[self._sl(n, q, 1)] *= -1.0

    def _apply_2x2(self, state, c, t, m, n):
        sub = state[self._sl(n, c, 1)]
        t_adj = t - 1 if t > c else t
        sl0, sl1 = self._sl(n - 1, t_adj, 0), self._sl(n - 1, t_adj, 1)
        s0 = sub[sl0].copy()
        s1 = sub[sl1].copy()
        sub[sl0] = m[0, 0] * s0 + m[0, 1] * s1
        sub[sl1] = m[1, 0] * s0 + m[1, 1] * s1

    def _apply_cx(self, state, c, t, n):
        sub = state[self._sl(n, c, 1)]
        t_adj = t - 1 if t > c else t
        sl0, sl1 = self._sl(n - 1, t_adj, 0), self._sl(n - 1, t_adj, 1)
        tmp = sub[sl0].copy()
        sub[sl0] = sub[sl1]
        sub[sl1] = tmp

    def _apply_ccx(self, state, c1, c2, t, n):
        sub = state[self._sl(n, c1, 1)]
        c2_adj = c2 - 1 if c2 > c1 else c2
        sub = sub[self._sl(n - 1, c2_adj, 1)]
        t_adj = t - (1 if t > c1 else 0) - (1 if t > c2 else 0)
        sl0, sl1 = self._sl(n - 2, t_adj, 0), self._sl(n - 2, t_adj, 1)
        tmp = sub[sl0].copy()
        sub[sl0] = sub[sl1]
        sub[sl1] = tmp

    def _measure(self, state, q, n, stream: _UniformStream | None):
        p1 = float(np.sum(np.abs(state[self._sl(n, q, 1)]) ** 2))
        probabilistic = _BASIS_EPS < p1 < 1.0 - _BASIS_EPS
        if probabilistic:
            if stream is None:
                raise SimulationError("measurement of a superposed qubit needs a seed")
            outcome = 1 if stream.next() < p1 else 0
        else:
            outcome = 1 if p1 >= 0.5 else 0
        prob = p1 if outcome == 1 else 1.0 - p1
        state[self._sl(n, q, 1 - outcome)] = 0.0
        if prob != 1.0:
            state *= 1.0 / math.sqrt(prob)
        if probabilistic:
            # Deterministic projections of basis states cannot drift; only the
            # renormalized superposition path warrants the full-norm check.
            norm = float(np.linalg.norm(state.ravel()))
            if abs(norm - 1.0) > _NORM_TOL:
                raise NormDrift(f"norm {norm} after measuring qubit {q}")
        return outcome

    def _execute(self, initial_bits, rng: np.random.Generator | None,
                 noise: NoiseModel | None, counters=None, trace=None) -> list[int]:
        n = self.num_qubits
        bits = _coerce_bits(initial_bits, n)
        state = np.zeros((2,) * n, dtype=complex)
        state[tuple(bits)] = 1.0
        cl = [0] * self.num_clbits
        stream = _UniformStream(rng) if rng is not None else None
        p = noise.depolarizing_per_gate if noise is not None else 0.0
        q_flip = noise.readout_flip if noise is not None else 0.0

        for op, a0, a1, a2, mask, value in self._prog:
            if mask is not None:
                r = 0
                for j, mb in enumerate(mask):
                    r |= cl[mb] << j
                if r != value:
                    continue
            if op == _OP_MEASURE:
                outcome = self._measure(state, a0, n, stream)
                if noise is not None:
                    if stream.next() < q_flip:
                        outcome ^= 1
                cl[a1] = outcome
                if trace is not None:
                    trace.append((a1, outcome))
                if counters is not None:
                    counters["m"] += 1
                continue
            if op == _OP_X:
                self._apply_x(state, a0, n)
                touched = (a0,)
                if counters is not None:
                    counters["x"] += 1
                    if mask is not None:
                        counters["cond_x"] += 1
            elif op == _OP_CX:
                self._apply_cx(state, a0, a1, n)
                touched = (a0, a1)
                if counters is not None:
                    counters["cx"] += 1
            elif op == _OP_CCX:
                self._apply_ccx(state, a0, a1, a2, n)
                touched = (a0, a1, a2)
                if counters is not None:
                    counters["ccx"] += 1
            elif op == _OP_CV:
                self._apply_2x2(state, a0, a1, V, n)
                touched = (a0, a1)
                if counters is not None:
                    counters["cv"] += 1
            else:
                self._apply_2x2(state, a0, a1, VDG, n)
                touched = (a0, a1)
                if counters is not None:
                    counters["cvdg"] += 1
            if noise is not None:
                for qb in touched:
                    if stream.next() < p:
                        pauli = int(stream.next() * 3)
                        if pauli == 0:
                            self._apply_x(state, qb, n)
                        elif pauli == 1:
                            self._apply_y(state, qb, n)
                        else:
                            self._apply_z(state, qb, n)

        norm = float(np.linalg.norm(state.ravel()))
        if abs(norm - 1.0) > _NORM_TOL:
            raise NormDrift(f"final norm {norm}")
        return cl

    def run(self, initial_bits=None, seed: int | None = None,
            noise: NoiseModel | None = None) -> RunResult:
        rng = np.random.default_rng(seed) if (seed is not None or noise is not None) else None
        counters = {"x": 0, "cx": 0, "ccx": 0, "cv": 0, "cvdg": 0, "m": 0, "cond_x": 0}
        trace: list[tuple[int, int]] = []
        cl = self._execute(initial_bits, rng, noise, counters, trace)
        return RunResult(tuple(cl), tuple(trace),
                         _census_from_counters(self.circuit, self._static, counters))

    def run_value(self, initial_bits, rng: np.random.Generator | None,
                  noise: NoiseModel | None) -> int:
        cl = self._execute(initial_bits, rng, noise)
        return sum(b << k for k, b in enumerate(cl))


def run_dense(circuit: Circuit, initial_bits=None, seed: int | None = None,
              *, noise: NoiseModel | None = None,
              qubit_cap: int = DEFAULT_DENSE_CAP) -> RunResult:
    """One dense-statevector run from a basis input."""
    return DenseRunner(circuit, qubit_cap).run(initial_bits, seed, noise)


def run_classical(circuit: Circuit, initial_bits=None) -> RunResult:
    """One bit-exact run; requires a permutation-only circuit."""
    return ClassicalRunner(circuit).run(initial_bits)


def select_backend(circuit: Circuit, requested: str = "auto") -> str:
    """Resolve 'auto' to the cheapest valid backend for this circuit."""
    if requested == "auto":
        return "classical" if circuit.is_permutation_only() else "dense"
    if requested not in ("classical", "dense"):
        raise ValueError(f"unknown backend {requested!r}")
    return requested


def sample(circuit: Circuit, initial_bits=None, shots: int = 1,
           noise: NoiseModel | None = None, seed: int = 0,
           backend: str = "auto", qubit_cap: int = DEFAULT_DENSE_CAP) -> Histogram:
    """Repeat execution ``shots`` times with per-shot derived seeds.

    Shot s uses the generator seeded from (seed, s), so histograms are
    reproducible and independent of execution order.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    chosen = select_backend(circuit, backend)
    runner = (ClassicalRunner(circuit) if chosen == "classical"
              else DenseRunner(circuit, qubit_cap))
    dense = chosen == "dense"
    counts: dict[int, int] = {}
    for s in range(shots):
        rng = np.random.default_rng([seed, s]) if (noise is not None or dense) else None
        value = runner.run_value(initial_bits, rng, noise)
        counts[value] = counts.get(value, 0) + 1
    return Histogram(shots, dict(sorted(counts.items())))
