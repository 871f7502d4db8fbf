"""
LZ Hypotheses

The Lempel-Ziv simplicity prior as pool members: the exact marginal over a
fixed horizon, and the horizon-free variant that looks a fixed number
of bits ahead.
"""

from dataclasses import dataclass
from typing import Any

from core.config import MAX_LZ_HORIZON
from core.errors import HypothesisError
from core.lzprior import LzPriorMeasure, LzStepPredictor
from core.measures import Measure, PredictorMeasure
from .base import Hypothesis


@dataclass(frozen=True)
class LzPredictor(Hypothesis):
    kind = 'lz'

    horizon: int = 8

    def __post_init__(self):
        if not 1 <= self.horizon <= MAX_LZ_HORIZON:
            raise HypothesisError(
                f"LZ horizon must be in 1..{MAX_LZ_HORIZON}, got {self.horizon}")

    def instantiate(self) -> LzPriorMeasure:
        return LzPriorMeasure(self.horizon)

    def parameters(self) -> dict[str, Any]:
        return {'horizon': self.horizon}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'LzPredictor':
        return cls(horizon=int(params.get('horizon', 8)))


@dataclass(frozen=True)
class LzStep(Hypothesis):
    """The LZ prior conditioned `lookahead` bits ahead of every prefix."""

    kind = 'lz-step'

    lookahead: int = 1

    def __post_init__(self):
        if not 1 <= self.lookahead <= MAX_LZ_HORIZON:
            raise HypothesisError(
                f"LZ lookahead must be in 1..{MAX_LZ_HORIZON}, got {self.lookahead}")

    def instantiate(self) -> Measure:
        return PredictorMeasure(LzStepPredictor(self.lookahead))

    def parameters(self) -> dict[str, Any]:
        return {'lookahead': self.lookahead}

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'LzStep':
        return cls(lookahead=int(params.get('lookahead', 1)))
