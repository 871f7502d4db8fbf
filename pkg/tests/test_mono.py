import pytest
from hypothesis import given, strategies as st

from machines import (
    INSTRUCTIONS, MonotoneProgram, Opcode, Status, assemble, decode, disassemble, encode,
    match_brackets, run_machine, trace_machine,
)

ONES_FOREVER = '010100011101111'    # FLIP JZ OUT JNZ RUN
ZEROS_FOREVER = assemble('FLIP JZ FLIP OUT FLIP JNZ')

instruction_lists = st.lists(st.sampled_from(INSTRUCTIONS), max_size=8)


class TestDecoding:
    def test_opcodes(self):
        assert Opcode.OUT.bits == '011'
        assert Opcode.RUN.bits == '111'
        assert Opcode.RUN not in INSTRUCTIONS

    def test_assemble(self):
        assert assemble('FLIP JZ OUT JNZ') == ONES_FOREVER
        assert assemble('flip jz out jnz run') == ONES_FOREVER
        assert len(ZEROS_FOREVER) == 21

    def test_disassemble(self):
        assert disassemble(ONES_FOREVER) == ['FLIP', 'JZ', 'OUT', 'JNZ', 'RUN']
        assert disassemble('0100') == ['FLIP']

    def test_stops_reading_at_run(self):
        decoded = decode('011111' + '010')
        assert decoded.complete
        assert decoded.consumed == 6
        assert decoded.instructions == (Opcode.OUT,)

    def test_brackets(self):
        ops = [Opcode.JZ, Opcode.JZ, Opcode.JNZ, Opcode.JNZ]
        assert match_brackets(ops) == {0: 3, 3: 0, 1: 2, 2: 1}
        assert match_brackets([Opcode.JNZ, Opcode.JZ]) is None
        assert match_brackets([Opcode.JZ]) is None

    def test_program_bits(self):
        assert len(MonotoneProgram('011111')) == 6
        with pytest.raises(ValueError):
            MonotoneProgram('012')


class TestExecution:
    def test_out(self):
        result = run_machine('011111', 10)
        assert result.output == '0'
        assert result.status is Status.HALTED
        assert result.steps == 1

    def test_flip_out(self):
        assert run_machine('010011111', 10).output == '1'

    def test_head_moves(self):
        assert run_machine(assemble('FLIP RIGHT OUT LEFT OUT'), 10).output == '01'

    def test_jz_skips_loop(self):
        result = run_machine(assemble('JZ OUT JNZ OUT'), 10)
        assert result.output == '0'
        assert result.steps == 2

    def test_halt(self):
        result = run_machine(assemble('OUT HALT OUT'), 10)
        assert (result.output, result.status, result.steps) == ('0', Status.HALTED, 2)

    def test_ones_forever(self):
        result = run_machine(ONES_FOREVER, 6)
        assert result.output == '11'
        assert result.status is Status.OUT_OF_STEPS
        assert result.input_bits_consumed == 15

    def test_zeros_forever(self):
        assert run_machine(ZEROS_FOREVER, 14).output == '000'
        assert run_machine(ZEROS_FOREVER, 13).output == '00'

    def test_unmatched_hangs_silently(self):
        result = run_machine(assemble('OUT JNZ'), 100)
        assert result.output == ''
        assert result.status is Status.OUT_OF_STEPS

    @pytest.mark.parametrize('bits', ['', '01', '010', '010011'])
    def test_input_exhausted(self, bits):
        result = run_machine(bits, 100)
        assert result.status is Status.INPUT_EXHAUSTED
        assert result.output == ''
        assert result.input_bits_consumed == len(bits)

    def test_zero_steps(self):
        result = run_machine('011111', 0)
        assert result.output == ''
        assert result.status is Status.OUT_OF_STEPS


class TestMonotonicity:
    @given(instruction_lists, st.integers(min_value=0, max_value=40),
           st.integers(min_value=0, max_value=40))
    def test_output_grows_with_steps(self, ops, s, extra):
        program = encode(ops)
        short = run_machine(program, s).output
        assert run_machine(program, s + extra).output.startswith(short)

    @given(instruction_lists, st.text(alphabet='01', max_size=9))
    def test_bits_after_run_are_ignored(self, ops, tail):
        program = encode(ops)
        assert run_machine(program + tail, 30) == run_machine(program, 30)


class TestTrace:
    def test_frames(self):
        frames = list(trace_machine(ONES_FOREVER, 6))
        assert [f.step for f in frames] == [1, 2, 3, 4, 5, 6]
        assert frames[0].opcode is Opcode.FLIP
        assert frames[0].tape() == '00[1]00'
        assert frames[3].opcode is Opcode.JNZ
        assert frames[-1].output == '11'

    def test_halt_frame(self):
        frames = list(trace_machine(assemble('OUT HALT'), 10))
        assert frames[-1].opcode is Opcode.HALT

    def test_no_frames_without_run(self):
        assert list(trace_machine('010', 10)) == []
        assert list(trace_machine(assemble('JNZ'), 10)) == []
