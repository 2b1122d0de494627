"""Comparator builder, operand encoding, output interpretation, and the
classical flag oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbsc.circuit import (
    BLOCK_BEGIN,
    BLOCK_END,
    BarrierOp,
    Circuit,
    ClassicalCondition,
    GateKind,
    GateOp,
    MeasureOp,
    static_census,
)
from qbsc.comparator import (
    BuilderVariant,
    ComparisonClass,
    Operands,
    build_1bc,
    build_gqbsc,
    compare,
    encode_operands,
    interpret,
    reference_flags,
    soundness_check_exhaustive,
    soundness_check_random,
)
from qbsc.errors import DuplicateTarget, EmptyOperand, InvalidBitstring
from qbsc.simulate import ClassicalRunner, run_classical, run_dense

from _oracles import int_compare_class

FIGURE = BuilderVariant.FIGURE
ALGORITHMIC = BuilderVariant.ALGORITHMIC


class TestEncodeOperands:
    def test_ints_pad_to_common_width(self):
        ops = encode_operands(7, 3)
        assert ops.a_bits == (1, 1, 1)
        assert ops.b_bits == (0, 1, 1)
        assert ops.n == 3

    def test_zero_zero_is_one_bit(self):
        ops = encode_operands(0, 0)
        assert ops.a_bits == (0,) and ops.b_bits == (0,) and ops.n == 1

    def test_eleven_bit_pair(self):
        ops = encode_operands(560, 1137)
        assert "".join(map(str, ops.a_bits)) == "01000110000"
        assert "".join(map(str, ops.b_bits)) == "10001110001"
        assert ops.n == 11

    def test_bitstrings_keep_explicit_width(self):
        ops = encode_operands("0011", "01")
        assert ops.a_bits == (0, 0, 1, 1)
        assert ops.b_bits == (0, 0, 0, 1)

    def test_index_zero_is_most_significant(self):
        assert encode_operands(4, 0).a_bits[0] == 1

    def test_invalid_characters(self):
        with pytest.raises(InvalidBitstring):
            encode_operands("012", "000")

    def test_empty_bitstring(self):
        with pytest.raises(EmptyOperand):
            encode_operands("", "1")

    def test_negative_int(self):
        with pytest.raises(InvalidBitstring):
            encode_operands(-1, 0)


class TestOneBitBlock:
    def test_exact_instruction_sequence(self):
        instrs = build_1bc(0, 1, 2, 3, 0, 1)
        assert instrs == [
            GateOp(GateKind.X, (1,)),
            GateOp(GateKind.CCX, (0, 1, 2)),
            GateOp(GateKind.X, (0,)),
            GateOp(GateKind.X, (1,)),
            GateOp(GateKind.CCX, (0, 1, 3)),
            GateOp(GateKind.X, (0,)),
            MeasureOp(2, 0),
            MeasureOp(3, 1),
        ]

    def test_distinct_qubits_required(self):
        with pytest.raises(DuplicateTarget):
            build_1bc(0, 0, 2, 3, 0, 1)

    @pytest.mark.parametrize("a,b,flags", [
        (0, 0, (0, 0)),
        (1, 0, (1, 0)),
        (0, 1, (0, 1)),
        (1, 1, (0, 0)),
    ])
    def test_flag_semantics(self, a, b, flags):
        c = Circuit(4, 2)
        for instr in build_1bc(0, 1, 2, 3, 0, 1):
            c.append(instr)
        assert run_dense(c, (a, b, 0, 0)).classical_bits == flags
        assert run_classical(c, (a, b, 0, 0)).classical_bits == flags

    def test_inputs_restored(self):
        c = Circuit(4, 2)
        for instr in build_1bc(0, 1, 2, 3, 0, 1):
            c.append(instr)
        runner = ClassicalRunner(c)
        for a in (0, 1):
            for b in (0, 1):
                assert runner.final_qubits((a, b, 0, 0))[:2] == (a, b)


def block_condition_values(circuit):
    """Condition value of each block's first gate, None when unconditioned."""
    values = []
    it = iter(circuit.instructions)
    for instr in it:
        if isinstance(instr, BarrierOp) and instr.label == BLOCK_BEGIN:
            first_gate = next(it)
            values.append(None if first_gate.condition is None
                          else first_gate.condition.value)
    return values


def site_positions(circuit):
    """1-indexed block numbers after which a conditional flip site appears."""
    positions, block = [], 0
    for instr in circuit.instructions:
        if isinstance(instr, BarrierOp) and instr.label == BLOCK_END:
            block += 1
        elif (isinstance(instr, GateOp) and instr.gate is GateKind.X
              and instr.condition is not None and instr.condition.value == 2):
            positions.append(block)
    return positions


class TestBuilder:
    def test_widths_and_labels(self):
        circuit = build_gqbsc(encode_operands(5, 3))
        assert circuit.num_qubits == 8 and circuit.num_clbits == 2
        assert circuit.labels[0] == "a_0"
        assert circuit.labels[3] == "b_0"
        assert circuit.labels[6] == "r_0" and circuit.labels[7] == "r_1"

    def test_input_prep_matches_set_bits(self):
        circuit = build_gqbsc(encode_operands(2, 3))  # a=10, b=11
        prep = [i.targets[0] for i in circuit.instructions[:3]]
        assert prep == [0, 2, 3]

    def test_first_block_unconditioned_rest_gated_on_zero(self):
        circuit = build_gqbsc(encode_operands("00000", "00000"))
        assert block_condition_values(circuit) == [None, 0, 0, 0, 0]

    def test_figure_sites_after_even_numbered_blocks(self):
        # width 2: one site after block 2; width 5: after blocks 2 and 4
        assert site_positions(build_gqbsc(encode_operands("00", "00"))) == [2]
        assert site_positions(build_gqbsc(encode_operands("00000", "00000"))) == [2, 4]
        assert site_positions(build_gqbsc(encode_operands("0" * 10, "0" * 10))) \
            == [2, 4, 6, 8, 10]

    def test_algorithmic_sites_after_every_block_past_first(self):
        circuit = build_gqbsc(encode_operands("00000", "00000"), ALGORITHMIC)
        assert site_positions(circuit) == [2, 3, 4, 5]

    def test_each_site_remeasures_flag_zero(self):
        circuit = build_gqbsc(encode_operands("000", "000"))
        instrs = circuit.instructions
        for i, instr in enumerate(instrs):
            if (isinstance(instr, GateOp) and instr.condition is not None
                    and instr.condition.value == 2):
                assert instrs[i + 1] == MeasureOp(circuit.num_qubits - 2, 0)

    def test_structure_counts(self):
        for n in (1, 2, 3, 7, 16):
            census = static_census(build_gqbsc(Operands((0,) * n, (0,) * n)))
            assert census.block_count_1bc == n
            assert census.ccx == 2 * n
            assert census.measure_count == 2 * n + n // 2
            assert census.block_measure_count == 2 * n

    def test_width_one_is_single_block_plus_prep(self):
        body = build_gqbsc(Operands((0,), (0,)))
        prep = build_gqbsc(Operands((1,), (0,)))
        assert site_positions(body) == []
        assert prep.instructions[0] == GateOp(GateKind.X, (0,))
        assert prep.instructions[1:] == body.instructions


class TestInterpret:
    @pytest.mark.parametrize("r0,r1,expected", [
        (0, 0, ComparisonClass.EQUAL),
        (1, 0, ComparisonClass.GREATER),
        (0, 1, ComparisonClass.LESS),
        (1, 1, ComparisonClass.LESS),
    ])
    def test_flag_table(self, r0, r1, expected):
        assert interpret(r0, r1) is expected


class TestReferenceFlags:
    def test_greater_at_second_bit(self):
        assert reference_flags(encode_operands("110", "101")) == (1, 0)

    def test_less_then_corrected(self):
        # verdict at the top bit, figure site after block 2 flips the zero flag
        assert reference_flags(encode_operands("011", "111"), FIGURE) == (1, 1)

    def test_equal_never_sets_flags(self):
        for n in (1, 4, 9):
            ops = Operands((1, 0) * (n // 2) + (1,) * (n % 2),
                           (1, 0) * (n // 2) + (1,) * (n % 2))
            assert reference_flags(ops) == (0, 0)

    def test_variants_may_disagree_on_flag_zero_only(self):
        # less-than lands at the last block of three: the figure layout has no
        # later site, the algorithmic one does
        ops = encode_operands("110", "111")
        assert reference_flags(ops, FIGURE) == (0, 1)
        assert reference_flags(ops, ALGORITHMIC) == (1, 1)

    def test_late_less_with_even_width_gets_flipped_in_both(self):
        ops = encode_operands("10", "11")
        assert reference_flags(ops, FIGURE) == (1, 1)
        assert reference_flags(ops, ALGORITHMIC) == (1, 1)


class TestCompare:
    @pytest.mark.parametrize("a,b,expected", [
        (1500, 1500, ComparisonClass.EQUAL),
        (127, 63, ComparisonClass.GREATER),
        (100, 127, ComparisonClass.LESS),
        (700, 420, ComparisonClass.GREATER),
    ])
    def test_reference_rows(self, a, b, expected):
        assert compare(a, b).comparison is expected

    def test_outcome_carries_run_metadata(self):
        outcome = compare(6, 5, backend="dense", seed=1)
        assert (outcome.backend, outcome.n) == ("dense", 3)
        assert outcome.variant is FIGURE

    def test_auto_backend_is_classical(self):
        assert compare(6, 5).backend == "classical"

    def test_flags_equal_oracle_for_both_variants(self):
        for variant in (FIGURE, ALGORITHMIC):
            for a, b in [(9, 12), (12, 9), (5, 5), (0, 15), (15, 0), (6, 7)]:
                outcome = compare(a, b, variant=variant)
                assert (outcome.r0, outcome.r1) == reference_flags(
                    encode_operands(a, b), variant)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**12 - 1), st.integers(0, 2**12 - 1),
           st.sampled_from([FIGURE, ALGORITHMIC]))
    def test_class_is_integer_comparison(self, a, b, variant):
        outcome = compare(a, b, variant=variant)
        assert outcome.comparison.value == int_compare_class(a, b)
        assert (outcome.r0, outcome.r1) == reference_flags(encode_operands(a, b), variant)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**4 - 1), st.integers(0, 2**4 - 1),
           st.sampled_from([FIGURE, ALGORITHMIC]))
    def test_backends_agree(self, a, b, variant):
        classical = compare(a, b, backend="classical", variant=variant)
        dense = compare(a, b, backend="dense", variant=variant)
        assert (classical.r0, classical.r1) == (dense.r0, dense.r1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 2**14), st.sampled_from([FIGURE, ALGORITHMIC]))
    def test_variants_agree_on_class_and_less_flag(self, seed, variant):
        import random
        rng = random.Random(seed)
        a, b = rng.getrandbits(10), rng.getrandbits(10)
        fig = compare(a, b, variant=FIGURE)
        alg = compare(a, b, variant=ALGORITHMIC)
        assert fig.comparison is alg.comparison
        assert fig.r1 == alg.r1


class TestInputPreservation:
    def test_dense_harness_with_appended_operand_measures(self):
        # widen the classical register and measure the operand qubits at the
        # end; the conditions' (0, 1) masks keep their meaning unchanged
        for a, b in [(5, 2), (2, 5), (7, 7)]:
            ops = encode_operands(a, b)
            built = build_gqbsc(ops)
            n = ops.n
            harness = Circuit(built.num_qubits, 2 + 2 * n)
            for instr in built.instructions:
                harness.append(instr)
            for q in range(2 * n):
                harness.measure(q, 2 + q)
            bits = run_dense(harness).classical_bits
            assert bits[2:] == ops.a_bits + ops.b_bits

    def test_classical_final_qubits_preserved(self):
        for a, b in [(9, 3), (3, 9), (12, 12)]:
            ops = encode_operands(a, b)
            runner = ClassicalRunner(build_gqbsc(ops))
            final = runner.final_qubits()
            assert final[:2 * ops.n] == ops.a_bits + ops.b_bits


class TestSoundnessSweeps:
    def test_exhaustive_counts_pairs(self):
        pairs, mismatches = soundness_check_exhaustive(1)
        assert (pairs, mismatches) == (4, 0)

    def test_exhaustive_medium_width_both_variants(self):
        for variant in (FIGURE, ALGORITHMIC):
            pairs, mismatches = soundness_check_exhaustive(5, variant)
            assert (pairs, mismatches) == (1024, 0)

    def test_random_is_deterministic_per_seed(self):
        first = soundness_check_random(64, 50, seed=9)
        second = soundness_check_random(64, 50, seed=9)
        assert first == second == (50, 0)
