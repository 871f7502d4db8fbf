"""
Point Hypothesis

All mass on one eventually periodic sequence: prefix, then cycle forever.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from core.errors import HypothesisError
from core.measures import Measure
from core.strings import ONE, UNDEFINED, ZERO, MaybeProb, is_bits
from .base import Hypothesis


class PointMeasure(Measure):
    """μ(x) = 1 if x is a prefix of prefix·cycle^ω, else 0."""

    def __init__(self, prefix: str, cycle: str):
        self.prefix = prefix
        self.cycle = cycle
        self.name = f'point {prefix}({cycle})'
        super().__init__()

    def bit_at(self, i: int) -> str:
        """Character at 0-based position i of the sequence."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def sequence(self, length: int) -> str:
        return ''.join(self.bit_at(i) for i in range(length))

    def _evaluate(self, x: str) -> Fraction:
        return ONE if x == self.sequence(len(x)) else ZERO

    def conditional(self, x: str, b: int) -> MaybeProb:
        if self(x) == 0:
            return UNDEFINED
        return ONE if self.bit_at(len(x)) == ('1' if b else '0') else ZERO


@dataclass(frozen=True)
class Point(Hypothesis):
    kind = 'point'

    prefix: str = ''
    cycle: str = '0'

    def __post_init__(self):
        if not is_bits(self.prefix):
            raise HypothesisError(f"Point prefix is not binary: {self.prefix!r}")
        if not self.cycle or not is_bits(self.cycle):
            raise HypothesisError(f"Point cycle must be a nonempty binary string, got {self.cycle!r}")

    def instantiate(self) -> PointMeasure:
        return PointMeasure(self.prefix, self.cycle)

    def parameters(self) -> dict[str, Any]:
        return {'prefix': self.prefix, 'cycle': self.cycle}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Point':
        return cls(prefix=params.get('prefix', ''), cycle=params.get('cycle', '0'))
