"""
Program Enumeration
Dovetailed, step-bounded enumeration of MONO descriptions.

Execution only begins at RUN, so every program that outputs anything is an
instruction list followed by RUN. The trie below walks instruction lists
depth-first, shares every prefix between its extensions, prunes subtrees
whose brackets can never match, and simulates each RUN-terminated leaf
once. `naive_descriptions` is the definition-level oracle it is tested
against.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from tqdm import tqdm

from core.strings import all_strings
from .mono import (
    INSTRUCTIONS, OPCODE_BITS, Opcode, encode, execute, match_brackets, run_machine,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ResourceBound:
    """Maximum program length ℓ (bits) and step count s."""

    max_program_len: int
    max_steps: int

    def __post_init__(self):
        if self.max_program_len < 0 or self.max_steps < 0:
            raise ValueError(f"Resource bounds must be >= 0, got {self}")

    @property
    def max_instructions(self) -> int:
        """Longest instruction list whose RUN still fits in ℓ bits (-1 if none)."""
        return self.max_program_len // OPCODE_BITS - 1

    def __str__(self) -> str:
        return f"(ℓ={self.max_program_len}, s={self.max_steps})"


@dataclass(frozen=True)
class Description:
    program: str    # instruction bits through RUN
    output: str     # output within the step bound

    def __len__(self) -> int:
        return len(self.program)


@dataclass(frozen=True)
class DescriptionSet:
    """The minimal descriptions of `target` at `bound`."""

    target: str
    members: frozenset[str]
    bound: ResourceBound

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, program: str) -> bool:
        return program in self.members

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members, key=lambda p: (len(p), p)))

    @property
    def shortest(self) -> Optional[str]:
        return min(self.members, key=lambda p: (len(p), p), default=None)


def _expand(prefix: list[Opcode], open_brackets: int, bound: ResourceBound,
            found: list[Description]):
    if open_brackets == 0:
        jumps = match_brackets(prefix)
        output, _, _ = execute(prefix, jumps, bound.max_steps)
        if output:
            found.append(Description(encode(prefix), output))
    remaining = bound.max_instructions - len(prefix)
    if remaining <= 0:
        return
    for op in INSTRUCTIONS:
        if op is Opcode.JNZ:
            if open_brackets == 0:
                continue
            depth = open_brackets - 1
        elif op is Opcode.JZ:
            depth = open_brackets + 1
        else:
            depth = open_brackets
        # Every open JZ still needs a JNZ slot
        if depth > remaining - 1:
            continue
        prefix.append(op)
        _expand(prefix, depth, bound, found)
        prefix.pop()


def _subtree(first: Opcode, bound: ResourceBound) -> list[Description]:
    found = []
    depth = 1 if first is Opcode.JZ else 0
    if depth <= bound.max_instructions - 1:
        _expand([first], depth, bound, found)
    return found


def enumerate_descriptions(bound: ResourceBound, threads: int = 1,
                           progress: bool = False) -> list[Description]:
    """
    Every RUN-terminated program of at most ℓ bits with nonempty output
    within s steps, sorted by (output, program).

    Subtrees under distinct first instructions are independent and may be
    expanded on `threads` workers; the result does not depend on scheduling.
    """
    start = time.perf_counter()
    found = []
    if bound.max_instructions >= 0:
        # The empty instruction list outputs nothing; only its subtrees matter
        firsts = [op for op in INSTRUCTIONS if op is not Opcode.JNZ]
        if bound.max_instructions >= 1:
            with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
                results = pool.map(lambda op: _subtree(op, bound), firsts)
                for chunk in tqdm(results, total=len(firsts), desc=f'enumerate {bound}',
                                  unit='subtree', leave=False, disable=not progress):
                    found.extend(chunk)
    found.sort(key=lambda d: (d.output, d.program))
    logger.info("Enumerated %d productive programs at %s in %.2fs",
                len(found), bound, time.perf_counter() - start)
    return found


def naive_descriptions(y: str, bound: ResourceBound) -> frozenset[str]:
    """
    Minimal descriptions by definition: every bit string p with |p| ≤ ℓ
    whose output within s steps extends y while no proper prefix's does.
    """
    if not y:
        return frozenset({''})
    members = set()
    for length in range(bound.max_program_len + 1):
        for p in all_strings(length):
            if not run_machine(p, bound.max_steps).output.startswith(y):
                continue
            if any(run_machine(p[:k], bound.max_steps).output.startswith(y)
                   for k in range(length)):
                continue
            members.add(p)
    return frozenset(members)
