"""
Diagonal Adversaries
Sequences built to defeat a given predictor: the step-by-step adversary
that always takes the bit the predictor doubts, and the block adversary
against predictors known only through approximations from below.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .measures import LowerApproximation, Predictor
from .scoring import Loss
from .strings import HALF, ONE, UNDEFINED

logger = logging.getLogger(__name__)


class TraceStatus(str, Enum):
    COMPLETED = 'completed'
    PREDICTOR_UNDEFINED = 'predictor-undefined'
    BUDGET_EXHAUSTED = 'budget-exhausted'


@dataclass(frozen=True)
class BlockWitness:
    """The (t, s) pair that closed block `index` with 1^t 0."""

    index: int
    ones: int           # t_k
    stage: int          # s
    value: Fraction     # f(prefix·1^t, s), strictly above 1/2
    position: int       # index of the emitted 0 in the sequence


@dataclass
class AdversaryTrace:
    sequence: str = ''
    # Predicted probability of each chosen bit (Putnam) or block witness value
    probabilities: list[Fraction] = field(default_factory=list)
    status: TraceStatus = TraceStatus.COMPLETED
    # Step (Putnam) or block (anti-limit) where the trace stopped early
    status_at: Optional[int] = None
    blocks: list[BlockWitness] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status is TraceStatus.COMPLETED

    def loss(self) -> Loss:
        """Cumulative log loss of the victim on the recorded steps."""
        total = ONE
        for q in self.probabilities:
            total *= q
        return Loss(total)

    def describe(self) -> str:
        where = '' if self.status_at is None else f' at {self.status_at}'
        return f"{self.status.value}{where}: {len(self.sequence)} bits"


def putnam_sequence(p: Predictor, horizon: int, tie_break: int = 0) -> AdversaryTrace:
    """
    x_{t+1} = a bit b with p(x^t, b) ≤ 1/2, preferring `tie_break` when both
    bits qualify. Every recorded probability is ≤ 1/2, so the victim loses
    at least one bit per step.
    """
    if horizon < 0:
        raise ValueError(f"Horizon must be >= 0, got {horizon}")
    trace = AdversaryTrace()
    other = 1 - tie_break
    x = ''
    for t in range(horizon):
        q = {0: p(x, 0), 1: p(x, 1)}
        if q[0] is UNDEFINED or q[1] is UNDEFINED:
            trace.status = TraceStatus.PREDICTOR_UNDEFINED
            trace.status_at = t
            logger.info("%s undefined after %d steps", p.name, t)
            break
        if q[tie_break] <= HALF:
            b = tie_break
        elif q[other] <= HALF:
            b = other
        else:
            # Only an invalid predictor puts both bits above 1/2
            b = tie_break if q[tie_break] <= q[other] else other
            logger.warning("%s gives both bits more than 1/2 at '%s'", p.name, x)
        trace.probabilities.append(q[b])
        x += str(b)
    trace.sequence = x
    return trace


def _find_witness(f: LowerApproximation, prefix: str, budget: int) -> Optional[tuple[int, int, Fraction]]:
    # Pairs (t, s) by increasing t + s, then increasing t
    for d in range(budget + 1):
        for t in range(d + 1):
            s = d - t
            value = f(prefix + '1' * t, s)
            if value > HALF:
                return t, s, value
    return None


def anti_limit_sequence(f: LowerApproximation, block_budget: int,
                        max_blocks: int) -> AdversaryTrace:
    """
    Build 1^{t_0} 0 1^{t_1} 0 … where block k's t_k is the first position,
    in dovetailed (t, s) order with t + s ≤ block_budget, at which the
    approximant of the probability of 1 exceeds 1/2.
    """
    trace = AdversaryTrace()
    x = ''
    for k in range(max_blocks):
        witness = _find_witness(f, x, block_budget)
        if witness is None:
            trace.status = TraceStatus.BUDGET_EXHAUSTED
            trace.status_at = k
            logger.info("%s: no witness for block %d within budget %d", f.name, k, block_budget)
            break
        t, s, value = witness
        x += '1' * t
        trace.blocks.append(BlockWitness(k, t, s, value, len(x)))
        trace.probabilities.append(value)
        x += '0'
        logger.debug("Block %d: t=%d s=%d", k, t, s)
    trace.sequence = x
    return trace


def verify_anti_limit(trace: AdversaryTrace, p: Predictor) -> list[BlockWitness]:
    """Blocks whose emitted 0 followed a prefix where p's probability of 1 is not above 1/2."""
    bad = []
    for block in trace.blocks:
        q = p(trace.sequence[:block.position], 1)
        if q is UNDEFINED or q <= HALF:
            bad.append(block)
    return bad
