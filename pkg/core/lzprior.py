"""
Lempel-Ziv Prior
LZ76 phrase counts and the computable simplicity prior 2^{-K̃} built on them
"""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .config import MAX_LZ_HORIZON
from .errors import HorizonError
from .measures import Measure, Predictor, predictor_from
from .strings import MaybeProb, extend

logger = logging.getLogger(__name__)


class _ParseState(NamedTuple):
    complete: int   # phrases closed so far
    start: int      # where the open phrase begins


_EMPTY_STATE = _ParseState(0, 0)


def _advance(state: _ParseState, s: str) -> _ParseState:
    """
    Parse state after the last character of s was appended.

    The open phrase closes as soon as it no longer occurs anywhere in
    everything before its last symbol (exhaustive history).
    """
    n = len(s) - 1
    if s[state.start:] not in s[:n]:
        return _ParseState(state.complete + 1, n + 1)
    return state


def _count(state: _ParseState, length: int) -> int:
    """Phrase count: closed phrases plus a trailing repeat, if any."""
    return state.complete + (1 if state.start < length else 0)


def _state_of(x: str) -> _ParseState:
    state = _EMPTY_STATE
    for i in range(1, len(x) + 1):
        state = _advance(state, x[:i])
    return state


@dataclass(frozen=True)
class LzParse:
    input: str
    phrases: tuple[str, ...]

    @property
    def phrase_count(self) -> int:
        return len(self.phrases)


def lz76_parse(x: str) -> LzParse:
    """Exhaustive-history LZ76 parse of x; the last phrase may be a repeat."""
    phrases = []
    state = _EMPTY_STATE
    for i in range(1, len(x) + 1):
        new = _advance(state, x[:i])
        if new.start != state.start:
            phrases.append(x[state.start:new.start])
        state = new
    if state.start < len(x):
        phrases.append(x[state.start:])
    return LzParse(x, tuple(phrases))


def bits_per_phrase(n: int) -> int:
    """ceil(log2(n + 1))."""
    return n.bit_length()


def lz_complexity(x: str) -> int:
    """K̃(x) = C(x) · ceil(log2(|x| + 1)) bits; 0 for the empty string."""
    return _count(_state_of(x), len(x)) * bits_per_phrase(len(x))


class LzPriorMeasure(Measure):
    """
    Marginals of the length-`horizon` prior
    P(y) = 2^{-K̃(y)} / Σ_{|z|=horizon} 2^{-K̃(z)} on prefixes.

    Exact by exhaustive enumeration of the completions below each queried
    prefix, so horizons are capped at MAX_LZ_HORIZON.
    """

    def __init__(self, horizon: int):
        if horizon < 1:
            raise HorizonError(f"LZ horizon must be >= 1, got {horizon}")
        if horizon > MAX_LZ_HORIZON:
            raise HorizonError(
                f"LZ horizon {horizon} exceeds the exhaustive limit {MAX_LZ_HORIZON}")
        self.horizon = horizon
        self.name = f'lz-prior h={horizon}'
        self._scale = bits_per_phrase(horizon)
        self._completion_mass = lru_cache(maxsize=None)(self._completion_mass_uncached)
        super().__init__()

    def _leaf_weight(self, phrases: int) -> int:
        # 2^{-K̃(y)} scaled by 2^{scale * horizon}; phrases <= horizon
        return 1 << (self._scale * (self.horizon - phrases))

    def _descend(self, s: str, state: _ParseState) -> int:
        if len(s) == self.horizon:
            return self._leaf_weight(_count(state, len(s)))
        return (self._descend(s + '0', _advance(state, s + '0')) +
                self._descend(s + '1', _advance(state, s + '1')))

    def _completion_mass_uncached(self, x: str) -> int:
        return self._descend(x, _state_of(x))

    def _evaluate(self, x: str) -> Fraction:
        if len(x) > self.horizon:
            raise HorizonError(
                f"Prefix of length {len(x)} is beyond horizon {self.horizon}")
        return Fraction(self._completion_mass(x), self._completion_mass(''))

    def length_class_value(self, y: str) -> Fraction:
        """P_n(y) for n = |y| ≤ horizon, normalized within its own length class."""
        n = len(y)
        if n > self.horizon:
            raise HorizonError(f"Length {n} is beyond horizon {self.horizon}")
        return length_class_prior(n)(y)


@lru_cache(maxsize=None)
def _length_class_total(n: int) -> int:
    scale = bits_per_phrase(n)

    def descend(s: str, state: _ParseState) -> int:
        if len(s) == n:
            return 1 << (scale * (n - _count(state, n)))
        return (descend(s + '0', _advance(state, s + '0')) +
                descend(s + '1', _advance(state, s + '1')))

    return descend('', _EMPTY_STATE)


def length_class_prior(n: int):
    """P_n as a function on strings of length n."""
    if n > MAX_LZ_HORIZON:
        raise HorizonError(f"Length class {n} exceeds the exhaustive limit {MAX_LZ_HORIZON}")
    scale = bits_per_phrase(n)
    total = _length_class_total(n)

    def value(y: str) -> Fraction:
        if len(y) != n:
            raise ValueError(f"Expected a string of length {n}, got {len(y)}")
        return Fraction(1 << (scale * (n - _count(_state_of(y), n))), total)

    return value


def lz_prior_predictor(horizon: int) -> Predictor:
    """Conditionals of the length-`horizon` LZ prior; HorizonError past the horizon."""
    return predictor_from(LzPriorMeasure(horizon))


class LzStepPredictor(Predictor):
    """
    p(x, b) = Σ_z 2^{-K̃(xbz)} / Σ_z' 2^{-K̃(xz')}, z ranging over the
    completions of lookahead − 1 bits and z' over those of lookahead bits.

    This is lz_prior_predictor(|x| + lookahead) at x, without a horizon.
    With one bit of lookahead it is exactly 1/2 everywhere: appending a bit
    moves the phrase count by the same amount whichever bit it is. Parse
    states are cached per prefix so a left-to-right pass costs one
    substring search per step plus the lookahead tree.
    """

    def __init__(self, lookahead: int = 1, cache_size: int = 4096):
        if lookahead < 1:
            raise HorizonError(f"LZ lookahead must be >= 1, got {lookahead}")
        self.lookahead = lookahead
        self.name = 'lz-step' if lookahead == 1 else f'lz-step k={lookahead}'
        self._states: OrderedDict[str, _ParseState] = OrderedDict()
        self._cache_size = cache_size
        self._lock = threading.Lock()

    def _state(self, x: str) -> _ParseState:
        with self._lock:
            state = self._states.get(x)
            if state is not None:
                self._states.move_to_end(x)
                return state
            parent = self._states.get(x[:-1]) if x else None
        if parent is not None:
            state = _advance(parent, x)
        else:
            state = _state_of(x)
        with self._lock:
            self._states[x] = state
            if len(self._states) > self._cache_size:
                self._states.popitem(last=False)
        return state

    def _counts(self, s: str, state: _ParseState, depth: int) -> list[int]:
        """Phrase counts of every completion of s by `depth` more bits."""
        if depth == 0:
            return [_count(state, len(s))]
        counts = []
        for c in '01':
            t = s + c
            counts.extend(self._counts(t, _advance(state, t), depth - 1))
        return counts

    def __call__(self, x: str, b: int) -> MaybeProb:
        state = self._state(x)
        mine, other = extend(x, b), extend(x, 1 - b)
        ours = self._counts(mine, _advance(state, mine), self.lookahead - 1)
        theirs = self._counts(other, _advance(state, other), self.lookahead - 1)
        scale = bits_per_phrase(len(x) + self.lookahead)
        # Weights 2^{-K̃} rescaled by 2^{scale * most} to keep exponents small
        most = max(max(ours), max(theirs))
        num = sum(1 << (scale * (most - c)) for c in ours)
        rest = sum(1 << (scale * (most - c)) for c in theirs)
        return Fraction(num, num + rest)
