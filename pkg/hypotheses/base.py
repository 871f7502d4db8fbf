"""
Base Hypothesis

Abstract base class for hypothesis specs, plus the weighted pool they live in.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, ClassVar, Iterator

from core.errors import HypothesisError
from core.measures import SemiMeasure
from core.strings import ONE, format_prob


@dataclass(frozen=True)
class Hypothesis(ABC):
    """Base class for a computable measure described by a few parameters."""

    kind: ClassVar[str] = 'generic'

    @abstractmethod
    def instantiate(self) -> SemiMeasure:
        """
        Build the measure this spec describes.

        Returns:
            A fresh measure; values are exact and memoized per instance
        """

    @abstractmethod
    def parameters(self) -> dict[str, Any]:
        """JSON-ready parameters, rationals as 'num/den'."""

    @classmethod
    @abstractmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Hypothesis':
        """Inverse of `parameters`."""

    def describe(self) -> str:
        params = ', '.join(f'{k}={v}' for k, v in self.parameters().items())
        return f"{self.kind}({params})" if params else self.kind


@dataclass(frozen=True)
class WeightVector:
    """Prior weights: each strictly positive, summing to at most 1."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(w) for w in self.entries)
        object.__setattr__(self, 'entries', entries)
        for i, w in enumerate(entries):
            if w <= 0:
                raise HypothesisError(f"Weight {i + 1} must be positive, got {w}")
        if sum(entries, Fraction(0)) > ONE:
            raise HypothesisError(f"Weights sum to {self.total} > 1")

    @classmethod
    def geometric(cls, n: int) -> 'WeightVector':
        """w(i) = 2^{-i} for i = 1..n."""
        return cls(tuple(Fraction(1, 1 << i) for i in range(1, n + 1)))

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)


@dataclass(frozen=True)
class HypothesisPool:
    """An indexed finite family of hypotheses with prior weights."""

    members: tuple[Hypothesis, ...]
    weights: WeightVector

    def __post_init__(self):
        object.__setattr__(self, 'members', tuple(self.members))
        if not self.members:
            raise HypothesisError("A pool needs at least one member")
        if len(self.members) != len(self.weights):
            raise HypothesisError(
                f"{len(self.members)} members but {len(self.weights)} weights")

    @cached_property
    def measures(self) -> tuple[SemiMeasure, ...]:
        """One instantiated measure per member, shared by every caller."""
        return tuple(h.instantiate() for h in self.members)

    @cached_property
    def mixture(self):
        from core.mixture import MixtureMeasure
        return MixtureMeasure(self)

    def __len__(self) -> int:
        return len(self.members)

    def describe(self) -> list[str]:
        return [f"{i + 1:>3}  w={format_prob(w):>10}  {h.describe()}"
                for i, (h, w) in enumerate(zip(self.members, self.weights))]
