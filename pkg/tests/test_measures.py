from fractions import Fraction

import pytest
from hypothesis import given

from core.lzprior import LzStepPredictor
from core.measures import (
    ExactApproximation, FunctionApproximation, FunctionMeasure, FunctionPredictor, Measure,
    PredictorMeasure, check_lower_approximation, check_measure, check_predictor,
    check_semimeasure, conditional, constant_predictor, predictor_from, reconstruct,
    semipredictor_from,
)
from core.strings import HALF, ONE, UNDEFINED
from hypotheses import Bernoulli, Uniform
from tests.conftest import bit_strings


def _uniform(x):
    return Fraction(1, 2 ** len(x))


def _broken(x):
    """Uniform with the '0' subtree at half mass: additivity fails only at ∅."""
    if x.startswith('0'):
        return _uniform(x) / 2
    return _uniform(x)


def _half_mass(x):
    """ν(∅) = 1 but ν(0) + ν(1) = 1/2; additive below the root."""
    return ONE if not x else _uniform(x) / 2


class _StaleConditionals(Measure):
    """Uniform values with a Bernoulli(3/4) conditional that disagrees."""

    name = 'stale'

    def _evaluate(self, x):
        return _uniform(x)

    def conditional(self, x, b):
        return Fraction(3, 4) if b else Fraction(1, 4)


class TestConditional:
    def test_bernoulli(self):
        m = Bernoulli(Fraction(3, 4)).instantiate()
        assert m('110') == Fraction(9, 64)
        assert conditional(m, '11', 0) == Fraction(1, 4)

    def test_undefined_on_null_prefix(self):
        m = FunctionMeasure(lambda x: 0 if x.startswith('1') else _uniform(x))
        assert conditional(m, '1', 0) is UNDEFINED
        assert conditional(m, '', 1) == 0

    def test_deficit(self):
        m = FunctionMeasure(lambda x: Fraction(1, 3 ** len(x)))
        assert m.deficit('') == Fraction(1, 3)

    @given(bit_strings)
    def test_reconstruct_measure(self, x):
        m = Bernoulli(Fraction(1, 3)).instantiate()
        assert reconstruct(m, x) == m(x)


class TestChecks:
    def test_uniform_is_measure(self):
        report = check_measure(Uniform().instantiate(), 6)
        assert report.ok
        assert report.checked == 2 ** 6 - 1

    def test_broken_map_fails_once(self):
        m = FunctionMeasure(_broken, name='broken')
        report = check_measure(m, 4)
        assert [v.x for v in report.violations] == ['']
        assert report.violations[0].kind == 'additivity'
        assert report.violations[0].actual == Fraction(3, 4)
        # Losing mass is allowed for a semi-measure
        assert check_semimeasure(m, 4).ok

    def test_conditionals_must_rebuild_values(self):
        report = check_measure(_StaleConditionals(), 2)
        assert [(v.x, v.kind) for v in report.violations] == \
            [('0', 'reconstruction'), ('1', 'reconstruction')]
        assert report.violations[0].actual == Fraction(1, 4)

    def test_semimeasure_excess(self):
        m = FunctionMeasure(lambda x: Fraction(2) if x else Fraction(1))
        report = check_semimeasure(m, 2)
        assert not report.ok
        assert 'additivity' in report.violations[0].describe()

    def test_negative_depth(self):
        with pytest.raises(ValueError):
            check_measure(Uniform().instantiate(), -1)

    def test_predictor_sum(self):
        assert check_predictor(constant_predictor(Fraction(1, 3)), 4).ok
        bad = FunctionPredictor(lambda x, b: Fraction(3, 4))
        assert not check_predictor(bad, 2).ok
        assert not check_predictor(bad, 2, semi=True).ok
        under = FunctionPredictor(lambda x, b: Fraction(1, 4))
        assert check_predictor(under, 2, semi=True).ok

    def test_lower_approximation(self):
        rising = FunctionApproximation(lambda x, s: Fraction(s, s + 1))
        assert check_lower_approximation(rising, ['', '0'], range(5)).ok
        falling = FunctionApproximation(lambda x, s: Fraction(1, s + 1))
        report = check_lower_approximation(falling, [''], range(3))
        assert [v.stage for v in report.violations] == [0, 1, 2]

    def test_exact_approximation_treats_undefined_as_zero(self):
        p = FunctionPredictor(lambda x, b: UNDEFINED)
        assert ExactApproximation(p)('01', 7) == 0


class TestSemiPredictor:
    def test_half_mass(self):
        p = semipredictor_from(FunctionMeasure(_half_mass, name='half'))
        assert p.is_semi
        assert p('', 0) == p('', 1) == Fraction(1, 4)
        assert p('0', 1) == HALF
        assert check_predictor(p, 4, semi=True).ok
        report = check_predictor(p, 4)
        assert [v.x for v in report.violations] == ['']
        assert report.violations[0].actual == HALF

    def test_predictor_from_is_not_semi(self):
        assert not predictor_from(FunctionMeasure(_half_mass)).is_semi


class TestPredictorMeasure:
    def test_is_measure(self):
        assert check_measure(PredictorMeasure(LzStepPredictor(3)), 6).ok

    def test_matches_source_measure(self):
        source = Bernoulli(Fraction(2, 5)).instantiate()
        induced = PredictorMeasure(predictor_from(source))
        for x in ['', '0', '0110', '111110']:
            assert induced(x) == source(x)

    def test_zero_after_undefined(self):
        p = FunctionPredictor(lambda x, b: UNDEFINED if x.startswith('1') else HALF)
        m = PredictorMeasure(p)
        assert m('1') == HALF
        assert m('10') == 0
        assert m('101') == 0
        assert m.conditional('10', 0) is UNDEFINED

    def test_incremental_equals_fresh(self):
        long = '0110' * 40
        incremental = PredictorMeasure(LzStepPredictor(3))
        for t in range(len(long) + 1):
            incremental(long[:t])
        fresh = PredictorMeasure(LzStepPredictor(3))
        assert incremental(long) == fresh(long)
