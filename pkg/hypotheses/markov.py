"""
Markov Hypothesis

k-th order Markov chains with an exact transition row per context.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from core.errors import HypothesisError
from core.measures import Measure
from core.strings import ONE, UNDEFINED, MaybeProb, all_strings, format_prob, parse_prob
from .base import Hypothesis


class MarkovMeasure(Measure):
    """
    μ(x) = Π P(x_t | context_t), the context being the previous `order`
    bits; before `order` bits exist the history is left-padded with 0s.
    """

    def __init__(self, order: int, table: Mapping[str, tuple[Fraction, Fraction]]):
        self.order = order
        self.table = dict(table)
        self.name = f'markov{order}'
        self._positive = all(p0 > 0 and p1 > 0 for p0, p1 in self.table.values())
        super().__init__()

    def context(self, x: str) -> str:
        if self.order == 0:
            return ''
        return ('0' * self.order + x)[-self.order:]

    def _evaluate(self, x: str) -> Fraction:
        mass = ONE
        for t, c in enumerate(x):
            mass *= self.table[self.context(x[:t])][int(c)]
            if mass == 0:
                break
        return mass

    def conditional(self, x: str, b: int) -> MaybeProb:
        if not self._positive and self(x) == 0:
            return UNDEFINED
        return self.table[self.context(x)][b]


@dataclass(frozen=True)
class Markov(Hypothesis):
    kind = 'markov'

    order: int = 1
    # (context, P(0 | context), P(1 | context)) for every context of `order` bits
    rows: tuple[tuple[str, Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if self.order < 0:
            raise HypothesisError(f"Markov order must be >= 0, got {self.order}")
        rows = {}
        for row in self.rows:
            context, p0, p1 = row
            try:
                p0, p1 = parse_prob(p0), parse_prob(p1)
            except (TypeError, ValueError) as e:
                raise HypothesisError(f"Markov row '{context}': {e}") from e
            if p0 + p1 != ONE:
                raise HypothesisError(
                    f"Markov row '{context}' sums to {p0 + p1}, not 1")
            rows[context] = (context, p0, p1)
        expected = list(all_strings(self.order))
        for context in expected:
            if context not in rows:
                raise HypothesisError(f"Markov row '{context}' is missing")
        for context in rows:
            if context not in expected:
                raise HypothesisError(
                    f"Markov row '{context}' is not a context of order {self.order}")
        object.__setattr__(self, 'rows', tuple(rows[c] for c in expected))

    @classmethod
    def from_table(cls, order: int,
                   table: Mapping[str, Sequence[Any]]) -> 'Markov':
        """Build from {context: [P(0|context), P(1|context)]}."""
        rows = []
        for context, row in table.items():
            if len(row) != 2:
                raise HypothesisError(f"Markov row '{context}' needs two entries")
            rows.append((context, row[0], row[1]))
        return cls(order=order, rows=tuple(rows))

    def instantiate(self) -> MarkovMeasure:
        return MarkovMeasure(self.order, {c: (p0, p1) for c, p0, p1 in self.rows})

    def parameters(self) -> dict[str, Any]:
        return {
            'order': self.order,
            'transitions': {c: [format_prob(p0), format_prob(p1)] for c, p0, p1 in self.rows},
        }

    @classmethod
    def from_parameters(cls, params: dict[str, Any]) -> 'Markov':
        return cls.from_table(int(params.get('order', 1)), params.get('transitions', {}))
