"""
Uniform Hypothesis

The fair-coin measure λ(x) = 2^{-|x|}.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from core.measures import Measure
from core.strings import HALF, MaybeProb
from .base import Hypothesis


class UniformMeasure(Measure):
    """λ(x) = 2^{-|x|}; positive everywhere."""

    name = 'uniform'

    def _evaluate(self, x: str) -> Fraction:
        return Fraction(1, 1 << len(x))

    def conditional(self, x: str, b: int) -> MaybeProb:
        return HALF


@dataclass(frozen=True)
class Uniform(Hypothesis):
    kind = 'uniform'

    def instantiate(self) -> UniformMeasure:
        return UniformMeasure()

    def parameters(self) -> dict[str, Any]:
        return {}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Uniform':
        return cls()
