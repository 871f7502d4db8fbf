from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import HorizonError
from core.lzprior import (
    LzPriorMeasure, LzStepPredictor, length_class_prior, lz76_parse, lz_complexity,
    lz_prior_predictor,
)
from core.measures import check_measure, check_predictor
from core.strings import all_strings, complement


class TestParse:
    def test_phrases(self):
        assert lz76_parse('01101001').phrases == ('0', '1', '10', '100', '1')
        assert lz76_parse('').phrases == ()

    def test_trailing_repeat(self):
        parse = lz76_parse('0' * 64)
        assert parse.phrases == ('0', '0' * 63)
        assert parse.phrase_count == 2

    @given(st.text(alphabet='01', max_size=40))
    def test_phrases_concatenate(self, x):
        assert ''.join(lz76_parse(x).phrases) == x


class TestComplexity:
    def test_values(self):
        assert lz_complexity('') == 0
        assert lz_complexity('0' * 64) == 14
        assert lz_complexity('00000000') == 8
        assert lz_complexity('01101001') == 20
        assert lz_complexity('01') == 4

    def test_runs_are_simpler(self, de_bruijn):
        assert lz_complexity('0' * 64) < lz_complexity(de_bruijn)
        assert lz_complexity('00000000') < lz_complexity('01101001')

    @given(st.text(alphabet='01', max_size=40))
    def test_blind_to_bit_labels(self, x):
        assert lz_complexity(x) == lz_complexity(complement(x))


class TestPrior:
    def test_horizon_range(self):
        with pytest.raises(HorizonError):
            LzPriorMeasure(0)
        with pytest.raises(HorizonError):
            LzPriorMeasure(21)

    def test_is_measure(self):
        assert check_measure(LzPriorMeasure(5), 5).ok

    def test_beyond_horizon(self):
        m = LzPriorMeasure(3)
        with pytest.raises(HorizonError):
            m('0000')
        with pytest.raises(HorizonError):
            lz_prior_predictor(3)('000', 1)
        with pytest.raises(ValueError):
            m.length_class_value('0101')

    def test_length_class_normalized(self):
        prior = length_class_prior(6)
        assert sum((prior(y) for y in all_strings(6)), Fraction(0)) == 1
        with pytest.raises(ValueError):
            prior('01')

    def test_marginal_at_horizon(self):
        m = LzPriorMeasure(6)
        for y in ['000000', '010101', '011010']:
            assert m(y) == m.length_class_value(y)

    def test_prefers_runs(self):
        m = LzPriorMeasure(8)
        assert m('00000000') > m('01101001')

    def test_run_ending_is_a_coin_flip(self):
        # 0^8 and 0^7 1 both parse into two phrases
        assert lz_prior_predictor(8)('0000000', 0) == Fraction(1, 2)


class TestStepPredictor:
    @given(st.text(alphabet='01', max_size=6), st.sampled_from([0, 1]),
           st.integers(min_value=1, max_value=3))
    def test_matches_horizon_prior(self, x, b, lookahead):
        assert LzStepPredictor(lookahead)(x, b) == lz_prior_predictor(len(x) + lookahead)(x, b)

    @given(st.text(alphabet='01', max_size=30))
    def test_single_bit_lookahead_is_uniform(self, x):
        assert LzStepPredictor()(x, 0) == Fraction(1, 2)

    @pytest.mark.parametrize('lookahead', [1, 2, 4])
    def test_sums_to_one(self, lookahead):
        assert check_predictor(LzStepPredictor(lookahead), 7).ok

    def test_continues_patterns(self):
        p = LzStepPredictor(4)
        assert p('0000', 0) > Fraction(1, 2)
        assert p('0101', 0) > Fraction(1, 2)
        assert p('0110', 0) == Fraction(1, 2)
        assert p('0110100110', 0) < Fraction(1, 2)
        assert p('0' * 10, 0) == p('0000', 0)

    def test_invalid_lookahead(self):
        with pytest.raises(HorizonError):
            LzStepPredictor(0)

    def test_cache_order_independent(self):
        x = '0110100110010110'
        warm = LzStepPredictor(3, cache_size=4)
        for t in range(len(x)):
            warm(x[:t], 1)
        assert warm(x, 1) == LzStepPredictor(3)(x, 1)
