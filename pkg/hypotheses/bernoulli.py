"""
Bernoulli Hypothesis

Independent bits with a fixed rational probability of 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from core.errors import HypothesisError
from core.measures import Measure
from core.strings import ONE, UNDEFINED, MaybeProb, format_prob, parse_prob
from .base import Hypothesis


class BernoulliMeasure(Measure):
    """μ(x) = θ^{#1(x)} (1 − θ)^{#0(x)}."""

    def __init__(self, bias: Fraction):
        self.bias = bias
        self.name = f'bernoulli {format_prob(bias)}'
        super().__init__()

    def _evaluate(self, x: str) -> Fraction:
        ones = x.count('1')
        return self.bias ** ones * (ONE - self.bias) ** (len(x) - ones)

    def conditional(self, x: str, b: int) -> MaybeProb:
        # Prefix mass vanishes only when a zero-probability bit was seen
        if (self.bias == 1 and '0' in x) or (self.bias == 0 and '1' in x):
            return UNDEFINED
        return self.bias if b else ONE - self.bias


@dataclass(frozen=True)
class Bernoulli(Hypothesis):
    kind = 'bernoulli'

    bias: Fraction = Fraction(1, 2)

    def __post_init__(self):
        try:
            bias = parse_prob(self.bias)
        except (TypeError, ValueError) as e:
            raise HypothesisError(f"Bernoulli bias: {e}") from e
        object.__setattr__(self, 'bias', bias)

    def instantiate(self) -> BernoulliMeasure:
        return BernoulliMeasure(self.bias)

    def parameters(self) -> dict[str, Any]:
        return {'bias': format_prob(self.bias)}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Bernoulli':
        return cls(bias=params.get('bias', '1/2'))
