"""
Solomonoff Hypothesis

The normalized resource-bounded Solomonoff predictor as a pool member.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from core.config import DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS
from core.errors import HypothesisError
from core.measures import Measure, PredictorMeasure
from core.strings import format_prob, parse_prob
from .base import Hypothesis


@dataclass(frozen=True)
class Solomonoff(Hypothesis):
    """
    Normalized prediction from (1 − ε)·λ_MONO + ε·λ at bound (ℓ, s).

    ε defaults to 2^{-(ℓ+1)}; it must be positive so the induced measure
    never vanishes.
    """

    kind = 'solomonoff'

    max_program_len: int = DEFAULT_MAX_PROGRAM_LEN
    max_steps: int = DEFAULT_MAX_STEPS
    floor: Optional[Fraction] = None

    def __post_init__(self):
        if self.max_program_len < 0 or self.max_steps < 0:
            raise HypothesisError(
                f"Solomonoff bounds must be >= 0, got ({self.max_program_len}, {self.max_steps})")
        floor = self.floor
        if floor is None:
            floor = Fraction(1, 1 << (self.max_program_len + 1))
        try:
            floor = parse_prob(floor)
        except ValueError as e:
            raise HypothesisError(f"Solomonoff floor: {e}") from e
        if floor == 0:
            raise HypothesisError("Solomonoff floor must be positive")
        object.__setattr__(self, 'floor', floor)

    def instantiate(self) -> Measure:
        from machines import ResourceBound, SolomonoffPredictor
        bound = ResourceBound(self.max_program_len, self.max_steps)
        return PredictorMeasure(SolomonoffPredictor(bound, normalized=True, floor=self.floor))

    def parameters(self) -> dict[str, Any]:
        return {'max_program_len': self.max_program_len,
                'max_steps': self.max_steps,
                'floor': format_prob(self.floor)}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Solomonoff':
        return cls(max_program_len=int(params.get('max_program_len', DEFAULT_MAX_PROGRAM_LEN)),
                   max_steps=int(params.get('max_steps', DEFAULT_MAX_STEPS)),
                   floor=params.get('floor'))
