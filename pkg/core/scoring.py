"""
Scoring
Log loss and regret, carried exactly as the probability they are −log₂ of.
Decimal bit values are for display only; comparisons use the exact form.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import TYPE_CHECKING, Sequence

from .errors import ComaError
from .measures import Predictor
from .strings import ONE, UNDEFINED, MaybeProb, format_decimal, format_prob

if TYPE_CHECKING:
    from hypotheses.base import HypothesisPool


def _neg_log2(value: Fraction) -> float:
    # Term-wise so huge numerators and denominators do not overflow a float
    return math.log2(value.denominator) - math.log2(value.numerator)


@total_ordering
@dataclass(frozen=True)
class Loss:
    """−log₂(prob); +∞ when prob is 0. Larger loss means smaller prob."""

    prob: Fraction

    @property
    def bits(self) -> float:
        if self.prob == 0:
            return math.inf
        return _neg_log2(self.prob)

    @property
    def infinite(self) -> bool:
        return self.prob == 0

    def decimal(self) -> str:
        return format_decimal(self.bits)

    def at_least(self, bits: int) -> bool:
        """Exactly: loss ≥ `bits` bits, i.e. prob ≤ 2^{-bits}."""
        return bits <= 0 or self.prob * (1 << bits) <= 1

    def __add__(self, other: 'Loss') -> 'Loss':
        return Loss(self.prob * other.prob)

    def __lt__(self, other: 'Loss') -> bool:
        return self.prob > other.prob

    def __str__(self) -> str:
        return f"{self.decimal()} bits ({format_prob(self.prob)})"


ZERO_LOSS = Loss(ONE)


def log_loss(p: Predictor, x: str, b: int) -> Loss:
    """
    Raises:
        ComaError: p is undefined at (x, b); distinct from an infinite loss
    """
    q = p(x, b)
    if q is UNDEFINED:
        raise ComaError(x)
    return Loss(q)


def step_losses(p: Predictor, x: str) -> list[Loss]:
    return [log_loss(p, x[:t], int(c)) for t, c in enumerate(x)]


def cumulative_loss(p: Predictor, x: str) -> Loss:
    """−log₂ of the product of p's conditionals along x."""
    total = ZERO_LOSS
    for loss in step_losses(p, x):
        total = total + loss
    return total


@dataclass(frozen=True)
class Regret:
    """
    L_{p1}(x) − L_{p2}(x), exact as the ratio μ_{p1}(x)/μ_{p2}(x).

    Against a reference that gave x probability 0 the ratio is UNDEFINED;
    in bits the regret is −∞ for a finite loss and NaN when both are infinite.
    """

    loss: Loss
    reference: Loss

    @property
    def ratio(self) -> MaybeProb:
        if self.reference.prob == 0:
            return UNDEFINED
        return self.loss.prob / self.reference.prob

    @property
    def bits(self) -> float:
        if self.reference.infinite:
            return math.nan if self.loss.infinite else -math.inf
        if self.loss.infinite:
            return math.inf
        return _neg_log2(self.ratio)

    def decimal(self) -> str:
        return format_decimal(self.bits)


def regret(p1: Predictor, p2: Predictor, x: str) -> Regret:
    return Regret(cumulative_loss(p1, x), cumulative_loss(p2, x))


@dataclass(frozen=True)
class BoundVerdict:
    """ξ_w(x) ≥ w(i)·μ_i(x), i.e. regret of the mixture against member i ≤ −log₂ w(i)."""

    member: int
    x: str
    mixture_mass: Fraction
    weighted_member_mass: Fraction

    @property
    def holds(self) -> bool:
        return self.mixture_mass >= self.weighted_member_mass

    @property
    def tight(self) -> bool:
        return self.mixture_mass == self.weighted_member_mass


def verify_optimality_bound(pool: 'HypothesisPool', i: int, x: str) -> BoundVerdict:
    if not 0 <= i < len(pool):
        raise IndexError(f"Member index {i} out of range for a pool of {len(pool)}")
    return BoundVerdict(i, x, pool.mixture(x), pool.weights[i] * pool.measures[i](x))


def weight_bits(w: Fraction) -> float:
    """−log₂ w, the regret allowance of a member with prior weight w."""
    return _neg_log2(w)


@dataclass
class RegretLedger:
    """Per-step losses of several predictors on one sequence."""

    x: str
    names: list[str]
    steps: list[list[Loss]] = field(default_factory=list)   # steps[k][t]

    def cumulative(self, k: int) -> Loss:
        total = ZERO_LOSS
        for loss in self.steps[k]:
            total = total + loss
        return total

    def regret(self, a: int, b: int) -> Regret:
        return Regret(self.cumulative(a), self.cumulative(b))

    def rows(self) -> list[tuple[str, str, str]]:
        """(name, cumulative loss exact, decimal) per predictor."""
        rows = []
        for k, name in enumerate(self.names):
            total = self.cumulative(k)
            rows.append((name, format_prob(total.prob), total.decimal()))
        return rows


def build_ledger(predictors: Sequence[Predictor], x: str) -> RegretLedger:
    ledger = RegretLedger(x, [p.name for p in predictors])
    for p in predictors:
        ledger.steps.append(step_losses(p, x))
    return ledger
