"""
MONO Machine
A bit-exact monotone machine: 3-bit opcodes read from the input stream up
to RUN, then executed on a two-way binary work tape with a write-only
output tape.

Opcodes:
    000 LEFT    move head left
    001 RIGHT   move head right
    010 FLIP    invert the current cell
    011 OUT     append the current cell to the output
    100 JZ      if cell is 0, jump past the matching JNZ
    101 JNZ     if cell is 1, jump back to the matching JZ
    110 HALT    stop
    111 RUN     end of the instruction list; begin execution

Bits after RUN are never read. Unmatched brackets hang the machine
without output. One step is one instruction dispatch.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Callable, Iterator, Optional, Sequence

from core.strings import check_bits

OPCODE_BITS = 3


class Opcode(IntEnum):
    LEFT = 0
    RIGHT = 1
    FLIP = 2
    OUT = 3
    JZ = 4
    JNZ = 5
    HALT = 6
    RUN = 7

    @property
    def bits(self) -> str:
        return format(int(self), '03b')


# Everything that may appear before RUN
INSTRUCTIONS = tuple(op for op in Opcode if op is not Opcode.RUN)


class Status(str, Enum):
    HALTED = 'halted'
    OUT_OF_STEPS = 'out-of-steps'
    INPUT_EXHAUSTED = 'input-exhausted'


@dataclass(frozen=True)
class MonotoneProgram:
    """A prefix of the machine's input stream."""

    bits: str

    def __post_init__(self):
        check_bits(self.bits)

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class Decoded:
    instructions: tuple[Opcode, ...]
    complete: bool      # RUN was read
    consumed: int       # input bits read


@dataclass(frozen=True)
class RunResult:
    output: str
    input_bits_consumed: int
    status: Status
    steps: int = 0


def decode(bits: str) -> Decoded:
    """Read opcodes until RUN or until the input runs out."""
    instructions = []
    i = 0
    while i + OPCODE_BITS <= len(bits):
        op = Opcode(int(bits[i:i + OPCODE_BITS], 2))
        i += OPCODE_BITS
        if op is Opcode.RUN:
            return Decoded(tuple(instructions), True, i)
        instructions.append(op)
    # A trailing partial opcode is still being read
    return Decoded(tuple(instructions), False, len(bits))


def encode(instructions: Sequence[Opcode]) -> str:
    """Instruction list plus the RUN marker, as input bits."""
    return ''.join(op.bits for op in instructions) + Opcode.RUN.bits


def assemble(source: str) -> str:
    """'FLIP JZ OUT JNZ' -> program bits ending in RUN."""
    ops = [Opcode[name.upper()] for name in source.split()]
    if ops and ops[-1] is Opcode.RUN:
        ops.pop()
    return encode(ops)


def disassemble(bits: str) -> list[str]:
    decoded = decode(bits)
    names = [op.name for op in decoded.instructions]
    if decoded.complete:
        names.append(Opcode.RUN.name)
    return names


def match_brackets(instructions: Sequence[Opcode]) -> Optional[dict[int, int]]:
    """Jump table JZ <-> JNZ, or None if any bracket is unmatched."""
    jumps = {}
    stack = []
    for pc, op in enumerate(instructions):
        if op is Opcode.JZ:
            stack.append(pc)
        elif op is Opcode.JNZ:
            if not stack:
                return None
            opener = stack.pop()
            jumps[opener] = pc
            jumps[pc] = opener
    if stack:
        return None
    return jumps


Observer = Callable[[int, int, Opcode, int, frozenset, str], None]


def execute(instructions: Sequence[Opcode], jumps: dict[int, int],
            max_steps: int, observer: Optional[Observer] = None,
            times: Optional[list[int]] = None) -> tuple[str, int, bool]:
    """
    Run a bracket-matched instruction list for at most max_steps.

    When `times` is given, the step that wrote each output bit is appended
    to it.

    Returns:
        (output, steps taken, halted)
    """
    ones = set()
    head = 0
    pc = 0
    steps = 0
    out = []
    n = len(instructions)
    while pc < n:
        if steps >= max_steps:
            return ''.join(out), steps, False
        op = instructions[pc]
        steps += 1
        here = pc
        if op is Opcode.LEFT:
            head -= 1
        elif op is Opcode.RIGHT:
            head += 1
        elif op is Opcode.FLIP:
            if head in ones:
                ones.remove(head)
            else:
                ones.add(head)
        elif op is Opcode.OUT:
            out.append('1' if head in ones else '0')
            if times is not None:
                times.append(steps)
        elif op is Opcode.JZ:
            if head not in ones:
                pc = jumps[pc] + 1
        elif op is Opcode.JNZ:
            if head in ones:
                pc = jumps[pc]
        elif op is Opcode.HALT:
            if observer is not None:
                observer(steps, here, op, head, frozenset(ones), ''.join(out))
            return ''.join(out), steps, True
        if pc == here:
            pc += 1
        if observer is not None:
            observer(steps, here, op, head, frozenset(ones), ''.join(out))
    return ''.join(out), steps, True


def run_machine(program: MonotoneProgram | str, max_steps: int) -> RunResult:
    """Execute MONO on a finite input prefix for at most max_steps steps."""
    bits = program.bits if isinstance(program, MonotoneProgram) else check_bits(program)
    decoded = decode(bits)
    if not decoded.complete:
        return RunResult('', decoded.consumed, Status.INPUT_EXHAUSTED)
    jumps = match_brackets(decoded.instructions)
    if jumps is None:
        # Hangs forever without output
        return RunResult('', decoded.consumed, Status.OUT_OF_STEPS, max_steps)
    output, steps, halted = execute(decoded.instructions, jumps, max_steps)
    status = Status.HALTED if halted else Status.OUT_OF_STEPS
    return RunResult(output, decoded.consumed, status, steps)


@dataclass(frozen=True)
class TraceFrame:
    step: int
    pc: int
    opcode: Opcode
    head: int
    ones: frozenset
    output: str

    def tape(self, margin: int = 2) -> str:
        """Cells around the head and every 1-cell; the head cell is bracketed."""
        cells = set(self.ones) | {self.head}
        lo, hi = min(cells) - margin, max(cells) + margin
        return ''.join(f'[{int(i in self.ones)}]' if i == self.head else str(int(i in self.ones))
                       for i in range(lo, hi + 1))


def trace_machine(program: str, max_steps: int) -> Iterator[TraceFrame]:
    """Step-by-step frames of a run; empty if the program never reaches RUN."""
    decoded = decode(check_bits(program))
    if not decoded.complete:
        return iter(())
    jumps = match_brackets(decoded.instructions)
    if jumps is None:
        return iter(())
    frames = []
    execute(decoded.instructions, jumps, max_steps,
            observer=lambda *args: frames.append(TraceFrame(*args)))
    return iter(frames)
