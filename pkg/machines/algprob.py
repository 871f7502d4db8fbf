"""
Algorithmic Probability
Resource-bounded algorithmic probability, monotone complexity and the
Solomonoff predictors, all relative to the MONO machine.

λ(y) = Σ 2^{-|p|} over the minimal descriptions p of y within (ℓ, s).
Weights are kept as integers 2^{ℓ-|p|} and divided by 2^ℓ once.
"""

import logging
import threading
from bisect import bisect_left
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, product
from typing import NamedTuple, Optional

from core.config import DEFAULT_MAX_STEPS, ENGINE_CACHE_SIZE
from core.measures import LowerApproximation, Predictor, SemiMeasure
from core.strings import ONE, UNDEFINED, ZERO, MaybeProb, extend, strings_up_to
from .enumeration import DescriptionSet, ResourceBound, enumerate_descriptions
from .mono import INSTRUCTIONS, OPCODE_BITS, decode, encode, execute, match_brackets, run_machine

logger = logging.getLogger(__name__)

MACHINE_LABEL = 'resource-bounded algorithmic probability relative to MONO'


class AlgProbEngine:
    """
    Indexed description table for one bound.

    Outputs are sorted, so the programs whose output extends y form one
    contiguous run [y, y + '2'); range sums come from integer prefix sums.
    """

    def __init__(self, bound: ResourceBound, threads: int = 1, progress: bool = False):
        self.bound = bound
        descriptions = enumerate_descriptions(bound, threads=threads, progress=progress)
        self._outputs = [d.output for d in descriptions]
        self._programs = [d.program for d in descriptions]
        self._weights = [1 << (bound.max_program_len - len(d.program)) for d in descriptions]
        self._prefix = [0, *accumulate(self._weights)]
        self._scale = 1 << bound.max_program_len

    def __len__(self) -> int:
        return len(self._programs)

    def _range(self, y: str) -> tuple[int, int]:
        return bisect_left(self._outputs, y), bisect_left(self._outputs, y + '2')

    def value(self, y: str) -> Fraction:
        if not y:
            return ONE
        lo, hi = self._range(y)
        return Fraction(self._prefix[hi] - self._prefix[lo], self._scale)

    def descriptions(self, y: str) -> DescriptionSet:
        if not y:
            return DescriptionSet(y, frozenset({''}), self.bound)
        lo, hi = self._range(y)
        return DescriptionSet(y, frozenset(self._programs[lo:hi]), self.bound)

    def km(self, y: str) -> Optional[int]:
        if not y:
            return 0
        lo, hi = self._range(y)
        if lo == hi:
            return None
        return min(len(p) for p in self._programs[lo:hi])


_engines: OrderedDict[ResourceBound, AlgProbEngine] = OrderedDict()
_building: dict[ResourceBound, threading.Lock] = {}
_engines_lock = threading.Lock()


def get_engine(bound: ResourceBound, threads: int = 1, progress: bool = False) -> AlgProbEngine:
    """
    Shared engine per bound; the table does not depend on `threads`.

    The ENGINE_CACHE_SIZE most recently used engines are kept. Each bound
    is enumerated once under its own lock, so distinct bounds build
    concurrently.
    """
    with _engines_lock:
        engine = _engines.get(bound)
        if engine is not None:
            _engines.move_to_end(bound)
            return engine
        building = _building.setdefault(bound, threading.Lock())
    with building:
        with _engines_lock:
            engine = _engines.get(bound)
        if engine is None:
            engine = AlgProbEngine(bound, threads=threads, progress=progress)
            with _engines_lock:
                _engines[bound] = engine
                while len(_engines) > ENGINE_CACHE_SIZE:
                    evicted, _ = _engines.popitem(last=False)
                    _building.pop(evicted, None)
                    logger.debug("Evicted engine %s", evicted)
    return engine


def minimal_descriptions(y: str, bound: ResourceBound) -> DescriptionSet:
    return get_engine(bound).descriptions(y)


def algprob(y: str, bound: ResourceBound) -> Fraction:
    return get_engine(bound).value(y)


def km(y: str, bound: ResourceBound) -> Optional[int]:
    """Length of the shortest description of y, or None if there is none at this bound."""
    return get_engine(bound).km(y)


class _MachineIndex(NamedTuple):
    output: str
    weight: int     # 2^{ℓ - |enc(i)|}


@lru_cache(maxsize=8)
def _machine_indices(bound: ResourceBound) -> tuple[tuple[_MachineIndex, ...], int]:
    """Every instruction list that fits, run independently; plus the silent residual."""
    machines = []
    for k in range(bound.max_instructions + 1):
        weight = 1 << (bound.max_program_len - OPCODE_BITS * (k + 1))
        for ops in product(INSTRUCTIONS, repeat=k):
            output = run_machine(encode(ops), bound.max_steps).output
            machines.append(_MachineIndex(output, weight))
    residual = (1 << bound.max_program_len) - sum(m.weight for m in machines)
    return tuple(machines), residual


def algprob_mixture_form(y: str, bound: ResourceBound) -> Fraction:
    """
    Σ_i 2^{-|enc(i)|} · δ_i(y) over machine indices i, where δ_i is the point
    semi-measure of machine i's output. Inputs that never reach RUN within ℓ
    bits form a silent machine that only describes ∅.
    """
    machines, residual = _machine_indices(bound)
    scale = 1 << bound.max_program_len
    if not y:
        return Fraction(sum(m.weight for m in machines) + residual, scale)
    return Fraction(sum(m.weight for m in machines if m.output.startswith(y)), scale)


class AlgorithmicProbability(SemiMeasure):
    """λ at a fixed bound as a SemiMeasure (deficit: programs that stop writing)."""

    is_measure = False

    def __init__(self, bound: ResourceBound):
        self.bound = bound
        self.name = f'algprob {bound}'
        super().__init__()

    def _evaluate(self, x: str) -> Fraction:
        return algprob(x, self.bound)


class FlooredAlgorithmicProbability(SemiMeasure):
    """(1 − ε)·λ_MONO + ε·2^{-|x|}: positive on every string."""

    def __init__(self, bound: ResourceBound, floor: Fraction):
        if not ZERO <= floor <= ONE:
            raise ValueError(f"Floor must be in [0, 1], got {floor}")
        self.bound = bound
        self.floor = Fraction(floor)
        self.name = f'algprob {bound} floor={floor}'
        super().__init__()

    def _evaluate(self, x: str) -> Fraction:
        return (ONE - self.floor) * algprob(x, self.bound) + self.floor / (1 << len(x))


class SolomonoffPrediction(NamedTuple):
    raw: MaybeProb
    normalized: MaybeProb


def _predict(m: SemiMeasure, x: str, b: int) -> SolomonoffPrediction:
    here = m(x)
    raw = UNDEFINED if here == 0 else m(extend(x, b)) / here
    both = m(x + '0') + m(x + '1')
    normalized = UNDEFINED if both == 0 else m(extend(x, b)) / both
    return SolomonoffPrediction(raw, normalized)


def solomonoff_predict(x: str, b: int, bound: ResourceBound) -> SolomonoffPrediction:
    """The semi-predictor λ(xb)/λ(x) and its normalization λ(xb)/(λ(x0)+λ(x1))."""
    return _predict(AlgorithmicProbability(bound), x, b)


class SolomonoffPredictor(Predictor):
    """
    Solomonoff prediction at a fixed bound, normalized by default.

    A positive floor mixes in the uniform measure so the predictor never
    goes into a coma off the finite output set.
    """

    def __init__(self, bound: ResourceBound, normalized: bool = True,
                 floor: Fraction = ZERO):
        self.bound = bound
        self.normalized = normalized
        self.is_semi = not normalized
        if floor:
            self._measure = FlooredAlgorithmicProbability(bound, floor)
        else:
            self._measure = AlgorithmicProbability(bound)
        kind = 'normalized' if normalized else 'raw'
        self.name = f'solomonoff {kind} {bound}' + (f' floor={floor}' if floor else '')

    def __call__(self, x: str, b: int) -> MaybeProb:
        prediction = _predict(self._measure, x, b)
        return prediction.normalized if self.normalized else prediction.raw


@dataclass(frozen=True)
class AlgProbTable:
    bound: ResourceBound
    depth: int
    values: dict[str, Fraction]
    km: dict[str, Optional[int]]
    counts: dict[str, int]

    def __iter__(self):
        return iter(self.values)

    def dominated_by(self, other: 'AlgProbTable') -> list[str]:
        """Strings where this table exceeds `other` (empty if pointwise ≤)."""
        return [y for y, v in self.values.items()
                if y in other.values and v > other.values[y]]

    def as_semimeasure(self) -> SemiMeasure:
        return AlgorithmicProbability(self.bound)


def algprob_table(bound: ResourceBound, depth: int, threads: int = 1,
                  progress: bool = False) -> AlgProbTable:
    """λ, Km and description counts for every |y| ≤ depth."""
    engine = get_engine(bound, threads=threads, progress=progress)
    values, kms, counts = {}, {}, {}
    for y in strings_up_to(depth + 1):
        values[y] = engine.value(y)
        kms[y] = engine.km(y)
        counts[y] = len(engine.descriptions(y))
    return AlgProbTable(bound, depth, values, kms, counts)


class _Timeline:
    """The stage-`max_stage` table plus the step at which each program wrote each bit."""

    def __init__(self, bound: ResourceBound):
        engine = get_engine(bound)
        self._outputs = engine._outputs
        self._weights = engine._weights
        self._scale = engine._scale
        self._times = []
        for program in engine._programs:
            instructions = decode(program).instructions
            times: list[int] = []
            execute(instructions, match_brackets(instructions), bound.max_steps, times=times)
            self._times.append(tuple(times))

    def value(self, y: str, stage: int) -> Fraction:
        if not y:
            return ONE
        lo, hi = bisect_left(self._outputs, y), bisect_left(self._outputs, y + '2')
        k = len(y) - 1
        total = sum(self._weights[i] for i in range(lo, hi) if self._times[i][k] <= stage)
        return Fraction(total, self._scale)


class AlgProbApproximation(LowerApproximation):
    """
    f(y, s) = λ(y) at (ℓ, s): nondecreasing in the stage s.

    Stages up to `max_stage` are answered from one enumeration at
    (ℓ, max_stage): a program describes y at stage s iff it wrote the
    |y|-th bit of y by step s. Later stages fall back to a fresh table.
    """

    def __init__(self, max_program_len: int, max_stage: int = DEFAULT_MAX_STEPS):
        self.max_program_len = max_program_len
        self.max_stage = max_stage
        self.name = f'algprob ℓ={max_program_len}'
        self._timeline: Optional[_Timeline] = None
        self._lock = threading.Lock()

    def _table(self) -> _Timeline:
        with self._lock:
            if self._timeline is None:
                self._timeline = _Timeline(ResourceBound(self.max_program_len, self.max_stage))
            return self._timeline

    def __call__(self, x: str, stage: int) -> Fraction:
        if stage > self.max_stage:
            return algprob(x, ResourceBound(self.max_program_len, stage))
        return self._table().value(x, stage)


def conditional_stage_series(x: str, b: int, max_program_len: int,
                             stages) -> list[tuple[int, MaybeProb]]:
    """The raw conditional λ(xb)/λ(x) at each stage; not monotone in general."""
    stages = list(stages)
    f = AlgProbApproximation(max_program_len, max_stage=max(stages, default=0))
    series = []
    for s in stages:
        here = f(x, s)
        series.append((s, UNDEFINED if here == 0 else f(extend(x, b), s) / here))
    return series
