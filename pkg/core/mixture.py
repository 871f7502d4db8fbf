"""
Bayesian Mixtures
The mixture measure ξ_w = Σ w(i)·μ_i over a pool, and the sequential
aggregator that reaches the same predictions through posterior updates.
"""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from .config import MEASURE_CACHE_SIZE
from .errors import ComaError, ZeroEvidenceError
from .measures import Predictor, SemiMeasure
from .strings import ONE, UNDEFINED, ZERO, MaybeProb, extend

if TYPE_CHECKING:
    from hypotheses.base import HypothesisPool

logger = logging.getLogger(__name__)


class MixtureMeasure(SemiMeasure):
    """
    ξ_w(x) = Σ_i w(i)·μ_i(x).

    Two-bit additivity is exact whenever every member is a measure; the
    total mass ξ_w(∅) = Σ w(i) may be below 1.
    """

    def __init__(self, pool: 'HypothesisPool'):
        self.pool = pool
        self.name = f'mixture of {len(pool)}'
        self.is_measure = all(m.is_measure for m in pool.measures)
        super().__init__()

    def _evaluate(self, x: str) -> Fraction:
        return sum((w * m(x) for w, m in zip(self.pool.weights, self.pool.measures)), ZERO)


def mixture_value(pool: 'HypothesisPool', x: str) -> Fraction:
    return pool.mixture(x)


def mixture_predict(pool: 'HypothesisPool', x: str, b: int) -> MaybeProb:
    """ξ_w(xb)/ξ_w(x); UNDEFINED iff ξ_w(x) = 0."""
    return pool.mixture.conditional(x, b)


@dataclass(frozen=True)
class AggregatorState:
    """Posterior weights after observing `history`."""

    pool: 'HypothesisPool' = field(repr=False)
    weights: tuple[Fraction, ...]
    history: str = ''

    @classmethod
    def start(cls, pool: 'HypothesisPool') -> 'AggregatorState':
        """Prior weights normalized to sum 1."""
        total = pool.weights.total
        return cls(pool, tuple(w / total for w in pool.weights))

    @property
    def t(self) -> int:
        return len(self.history)

    def member_predictions(self, b: int) -> list[Fraction]:
        """p_i(history, b) for each member with positive weight (0 otherwise)."""
        predictions = []
        for i, (w, m) in enumerate(zip(self.weights, self.pool.measures)):
            if w == 0:
                predictions.append(ZERO)
                continue
            q = m.conditional(self.history, b)
            if q is UNDEFINED:
                raise ComaError(self.history, member=i)
            predictions.append(q)
        return predictions


def update_weights(state: AggregatorState, observed: int) -> AggregatorState:
    """
    w_{t+1}(i) = w_t(i)·p_i(history, observed) / Z.

    Raises:
        ComaError: a member with positive weight is undefined at the history
        ZeroEvidenceError: Z = 0
    """
    predictions = state.member_predictions(observed)
    products = [w * q for w, q in zip(state.weights, predictions)]
    z = sum(products, ZERO)
    if z == 0:
        raise ZeroEvidenceError(state.history)
    return AggregatorState(state.pool, tuple(v / z for v in products),
                           extend(state.history, observed))


def aggregate_predict(state: AggregatorState, b: int) -> Fraction:
    """Σ_i w_t(i)·p_i(history, b)."""
    predictions = state.member_predictions(b)
    return sum((w * q for w, q in zip(state.weights, predictions)), ZERO)


def run_aggregator(pool: 'HypothesisPool', x: str) -> list[AggregatorState]:
    """States before each observation and after the last (t = 0..|x|)."""
    states = [AggregatorState.start(pool)]
    for c in x:
        states.append(update_weights(states[-1], int(c)))
    return states


def check_domination(pool: 'HypothesisPool', i: int, x: str) -> bool:
    """ξ_w(x) ≥ w(i)·μ_i(x), exactly."""
    return pool.mixture(x) >= pool.weights[i] * pool.measures[i](x)


class AggregatingPredictor(Predictor):
    """
    The aggregator as a Predictor. States are folded along each queried
    history and cached, so a left-to-right pass costs one update per step.
    UNDEFINED where the fold meets a coma or zero evidence.

    At most `cache_size` histories are kept, least recently used first out;
    an evicted state is refolded from its longest cached prefix.
    """

    def __init__(self, pool: 'HypothesisPool', cache_size: int = MEASURE_CACHE_SIZE):
        self.pool = pool
        self.name = f'aggregator of {len(pool)}'
        self.cache_size = cache_size
        self._start = AggregatorState.start(pool)
        self._states: OrderedDict[str, AggregatorState | None] = OrderedDict()
        self._lock = threading.Lock()

    def _cached(self, x: str) -> tuple[bool, AggregatorState | None]:
        if not x:
            return True, self._start
        if x in self._states:
            self._states.move_to_end(x)
            return True, self._states[x]
        return False, None

    def _remember(self, x: str, state: AggregatorState | None):
        self._states[x] = state
        self._states.move_to_end(x)
        while len(self._states) > self.cache_size:
            self._states.popitem(last=False)

    def state(self, x: str) -> AggregatorState | None:
        with self._lock:
            # Longest cached prefix
            k = len(x)
            found, state = self._cached(x)
            while not found:
                k -= 1
                found, state = self._cached(x[:k])
        for t in range(k, len(x)):
            if state is not None:
                try:
                    state = update_weights(state, int(x[t]))
                except (ComaError, ZeroEvidenceError) as e:
                    logger.debug("Aggregator stops at '%s': %s", x[:t], e)
                    state = None
            with self._lock:
                self._remember(x[:t + 1], state)
        return state

    def __call__(self, x: str, b: int) -> MaybeProb:
        state = self.state(x)
        if state is None:
            return UNDEFINED
        try:
            return aggregate_predict(state, b)
        except ComaError:
            return UNDEFINED

    def posterior(self, x: str) -> tuple[Fraction, ...] | None:
        state = self.state(x)
        return None if state is None else state.weights


def is_normalized(state: AggregatorState) -> bool:
    return sum(state.weights, ZERO) == ONE
