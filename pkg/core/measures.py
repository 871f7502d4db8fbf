"""
Measures and Predictors
Semi-measures over binary strings, the predictors they induce by
conditionalization, and exhaustive checks of the defining (in)equalities
"""

import logging
import threading
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .config import MEASURE_CACHE_SIZE
from .strings import (
    ONE, UNDEFINED, ZERO, MaybeProb, extend, strings_up_to,
)

logger = logging.getLogger(__name__)


class SemiMeasure(ABC):
    """
    A function on finite binary strings with ν(∅) ≤ 1 and
    ν(x0) + ν(x1) ≤ ν(x).

    Values are exact and memoized per string. Evaluators must be pure;
    the memo is an lru_cache, which is safe to share between threads.
    """

    name: str = 'semi-measure'
    # Deficit-reporting flag: False when mass may be lost below a string
    is_measure: bool = False

    def __init__(self, cache_size: int = MEASURE_CACHE_SIZE):
        self._cached = lru_cache(maxsize=cache_size)(self._evaluate)

    def __call__(self, x: str) -> Fraction:
        return self._cached(x)

    @abstractmethod
    def _evaluate(self, x: str) -> Fraction:
        """Exact value at x."""

    def conditional(self, x: str, b: int) -> MaybeProb:
        """ν(xb)/ν(x), or UNDEFINED where ν(x) = 0."""
        denominator = self(x)
        if denominator == 0:
            return UNDEFINED
        return self(extend(x, b)) / denominator

    def deficit(self, x: str) -> Fraction:
        """Mass lost below x: ν(x) − ν(x0) − ν(x1)."""
        return self(x) - self(x + '0') - self(x + '1')

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Measure(SemiMeasure):
    """A semi-measure with μ(∅) = 1 and μ(x0) + μ(x1) = μ(x)."""

    name = 'measure'
    is_measure = True


class FunctionMeasure(SemiMeasure):
    """Wraps an arbitrary evaluator; `is_measure` is whatever the caller claims."""

    def __init__(self, evaluator: Callable[[str], Fraction],
                 name: str = 'function', is_measure: bool = False):
        self._evaluator = evaluator
        self.name = name
        self.is_measure = is_measure
        super().__init__()

    def _evaluate(self, x: str) -> Fraction:
        return Fraction(self._evaluator(x))


def conditional(m: SemiMeasure, x: str, b: int) -> MaybeProb:
    """m(xb)/m(x); UNDEFINED when m(x) = 0."""
    return m.conditional(x, b)


class Predictor(ABC):
    """Maps a history and a next bit to a probability, or UNDEFINED."""

    name: str = 'predictor'
    # Semi-predictors may leave p(x,0) + p(x,1) < 1
    is_semi: bool = False

    @abstractmethod
    def __call__(self, x: str, b: int) -> MaybeProb:
        """Predicted probability that bit b follows x."""

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class MeasurePredictor(Predictor):
    """The (semi-)predictor of a (semi-)measure by conditionalization."""

    def __init__(self, measure: SemiMeasure, semi: bool = False):
        self.measure = measure
        self.is_semi = semi
        self.name = measure.name

    def __call__(self, x: str, b: int) -> MaybeProb:
        return self.measure.conditional(x, b)


class FunctionPredictor(Predictor):
    """Wraps a callable (x, b) -> probability."""

    def __init__(self, fn: Callable[[str, int], MaybeProb],
                 name: str = 'function', semi: bool = False):
        self._fn = fn
        self.name = name
        self.is_semi = semi

    def __call__(self, x: str, b: int) -> MaybeProb:
        return self._fn(x, b)


def constant_predictor(prob_of_one: Fraction) -> FunctionPredictor:
    """Predicts 1 with the same probability after every history."""
    q = Fraction(prob_of_one)
    return FunctionPredictor(lambda x, b: q if b else ONE - q,
                             name=f'constant {q}')


def predictor_from(m: SemiMeasure) -> Predictor:
    return MeasurePredictor(m, semi=False)


def semipredictor_from(m: SemiMeasure) -> Predictor:
    return MeasurePredictor(m, semi=True)


class PredictorMeasure(Measure):
    """
    The measure μ_p(x) = Π p(x^t, x_{t+1}) induced by a predictor.

    Mass is 0 from the first step where p is UNDEFINED or assigns 0.
    """

    def __init__(self, predictor: Predictor, name: Optional[str] = None,
                 cache_size: int = MEASURE_CACHE_SIZE):
        self.predictor = predictor
        self.name = name or predictor.name
        # Prefix masses, so extending a known prefix costs one prediction
        self._masses: OrderedDict[str, Fraction] = OrderedDict()
        self._masses_size = cache_size
        self._lock = threading.Lock()
        super().__init__(cache_size)

    def _remember(self, x: str, mass: Fraction):
        with self._lock:
            self._masses[x] = mass
            if len(self._masses) > self._masses_size:
                self._masses.popitem(last=False)

    def _step(self, mass: Fraction, x: str, c: str) -> Fraction:
        if mass == 0:
            return ZERO
        q = self.predictor(x, 1 if c == '1' else 0)
        if q is UNDEFINED or q == 0:
            return ZERO
        return mass * q

    def _evaluate(self, x: str) -> Fraction:
        if not x:
            return ONE
        with self._lock:
            parent = self._masses.get(x[:-1])
        if parent is not None:
            mass = self._step(parent, x[:-1], x[-1])
        else:
            mass = ONE
            for t, c in enumerate(x):
                mass = self._step(mass, x[:t], c)
                self._remember(x[:t + 1], mass)
        self._remember(x, mass)
        return mass

    def conditional(self, x: str, b: int) -> MaybeProb:
        if x and self(x) == 0:
            return UNDEFINED
        return self.predictor(x, b)


class LowerApproximation(ABC):
    """A stage-indexed approximation f(x, s) from below."""

    name: str = 'approximation'

    @abstractmethod
    def __call__(self, x: str, stage: int) -> Fraction:
        """Approximant at string x and stage s."""


class FunctionApproximation(LowerApproximation):
    def __init__(self, fn: Callable[[str, int], Fraction], name: str = 'function'):
        self._fn = fn
        self.name = name

    def __call__(self, x: str, stage: int) -> Fraction:
        return Fraction(self._fn(x, stage))


class ExactApproximation(LowerApproximation):
    """A predictor's probability of 1, constant in the stage."""

    def __init__(self, predictor: Predictor):
        self.predictor = predictor
        self.name = predictor.name

    def __call__(self, x: str, stage: int) -> Fraction:
        q = self.predictor(x, 1)
        return ZERO if q is UNDEFINED else q


# ---------------------------------------------------------------------------
# Checks. Violations are data, never exceptions.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """One failed (in)equality at string x."""

    x: str
    kind: str            # 'mass', 'additivity', 'reconstruction', 'sum', 'monotone'
    expected: Fraction   # right-hand side
    actual: MaybeProb    # left-hand side
    stage: Optional[int] = None

    def describe(self) -> str:
        where = f"'{self.x}'" if self.x else '∅'
        at = f" stage {self.stage}" if self.stage is not None else ''
        return f"{self.kind} at {where}{at}: {self.actual} vs {self.expected}"


@dataclass
class CheckReport:
    subject: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_measure(m: SemiMeasure, max_len: int, unit_mass: bool = True) -> CheckReport:
    """
    Verify μ(∅) = 1 and μ(x0) + μ(x1) = μ(x) for every |x| < max_len, and
    that the chained conditionals rebuild μ(x).

    With unit_mass=False the total mass is not checked (mixtures whose
    weights sum below 1).
    """
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    report = CheckReport(subject=m.name)
    if unit_mass and m('') != ONE:
        report.violations.append(Violation('', 'mass', ONE, m('')))
    for x in strings_up_to(max_len):
        report.checked += 1
        children = m(x + '0') + m(x + '1')
        if children != m(x):
            report.violations.append(Violation(x, 'additivity', m(x), children))
        rebuilt = reconstruct(m, x)
        if rebuilt != m(x) and not (rebuilt is UNDEFINED and m(x) == 0):
            report.violations.append(Violation(x, 'reconstruction', m(x), rebuilt))
    if report.violations:
        logger.debug("%s: %d measure violations", m.name, len(report.violations))
    return report


def check_semimeasure(m: SemiMeasure, max_len: int) -> CheckReport:
    """Verify ν(∅) ≤ 1 and ν(x0) + ν(x1) ≤ ν(x) for every |x| < max_len."""
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    report = CheckReport(subject=m.name)
    if m('') > ONE:
        report.violations.append(Violation('', 'mass', ONE, m('')))
    for x in strings_up_to(max_len):
        report.checked += 1
        children = m(x + '0') + m(x + '1')
        if children > m(x):
            report.violations.append(Violation(x, 'additivity', m(x), children))
    return report


def check_predictor(p: Predictor, max_len: int, semi: bool = False) -> CheckReport:
    """Verify p(x,0) + p(x,1) = 1 (≤ 1 if semi) wherever both are defined."""
    report = CheckReport(subject=p.name)
    for x in strings_up_to(max_len):
        q0, q1 = p(x, 0), p(x, 1)
        if q0 is UNDEFINED or q1 is UNDEFINED:
            continue
        report.checked += 1
        total = q0 + q1
        if total > ONE or (not semi and total != ONE):
            report.violations.append(Violation(x, 'sum', ONE, total))
    return report


def check_lower_approximation(f: LowerApproximation, strings: Iterable[str],
                              stages: Iterable[int]) -> CheckReport:
    """Verify f(x, s) ≤ f(x, s+1) at every given string and stage."""
    report = CheckReport(subject=f.name)
    stages = list(stages)
    for x in strings:
        for s in stages:
            report.checked += 1
            now, later = f(x, s), f(x, s + 1)
            if now > later:
                report.violations.append(Violation(x, 'monotone', later, now, stage=s))
    return report


def reconstruct(m: SemiMeasure, x: str) -> MaybeProb:
    """m(∅) times the conditionals along x; UNDEFINED if any step is."""
    value = m('')
    for t, c in enumerate(x):
        q = m.conditional(x[:t], int(c))
        if q is UNDEFINED:
            return UNDEFINED
        value *= q
    return value

