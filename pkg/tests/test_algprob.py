from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import importlib

import pytest

from core.config import DEFAULT_GOLDEN_DIR, DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS
from core.measures import check_lower_approximation, check_predictor, check_semimeasure
from core.strings import UNDEFINED, format_prob, strings_up_to
from core.utils import check_golden
from machines import (
    AlgorithmicProbability, AlgProbApproximation, FlooredAlgorithmicProbability, ResourceBound,
    SolomonoffPredictor, algprob, algprob_mixture_form, algprob_table, conditional_stage_series,
    enumerate_descriptions, get_engine, km, minimal_descriptions, naive_descriptions,
    solomonoff_predict,
)

# machines re-exports the algprob() function, which shadows the submodule attribute
algprob_module = importlib.import_module('machines.algprob')

TINY = ResourceBound(6, 10)
SMALL = ResourceBound(9, 20)
MEDIUM = ResourceBound(12, 50)


class TestResourceBound:
    def test_instructions(self):
        assert TINY.max_instructions == 1
        assert ResourceBound(20, 1).max_instructions == 5
        assert ResourceBound(2, 5).max_instructions == -1

    def test_negative(self):
        with pytest.raises(ValueError):
            ResourceBound(-1, 5)

    def test_ordered(self):
        assert TINY < SMALL < MEDIUM
        assert str(TINY) == '(ℓ=6, s=10)'


class TestEnumeration:
    def test_single_instruction(self):
        found = enumerate_descriptions(TINY)
        assert [(d.program, d.output) for d in found] == [('011111', '0')]

    def test_nothing_fits(self):
        assert enumerate_descriptions(ResourceBound(5, 10)) == []

    def test_sorted_and_productive(self):
        found = enumerate_descriptions(MEDIUM)
        assert found == sorted(found, key=lambda d: (d.output, d.program))
        assert all(d.output and d.program.endswith('111') for d in found)
        assert all(len(d) % 3 == 0 and len(d) <= 12 for d in found)

    def test_threads_do_not_matter(self):
        assert enumerate_descriptions(MEDIUM, threads=4) == enumerate_descriptions(MEDIUM)

    @pytest.mark.parametrize('bound', [TINY, ResourceBound(9, 3), SMALL])
    def test_matches_definition(self, bound):
        engine = get_engine(bound)
        for y in strings_up_to(4):
            assert engine.descriptions(y).members == naive_descriptions(y, bound)

    @pytest.mark.slow
    def test_matches_definition_medium(self):
        engine = get_engine(MEDIUM)
        for y in strings_up_to(4):
            assert engine.descriptions(y).members == naive_descriptions(y, MEDIUM)


class TestAlgorithmicProbability:
    def test_values(self):
        assert algprob('', TINY) == 1
        assert algprob('0', TINY) == Fraction(1, 64)
        assert algprob('1', TINY) == 0

    def test_km(self):
        assert km('', TINY) == 0
        assert km('0', TINY) == 6
        assert km('1', TINY) is None
        assert km('1', ResourceBound(9, 10)) == 9
        assert km('1' * 8, ResourceBound(15, 100)) <= 15

    def test_shortest(self):
        assert minimal_descriptions('0', TINY).shortest == '011111'
        assert minimal_descriptions('', TINY).members == frozenset({''})
        assert minimal_descriptions('1', TINY).shortest is None

    def test_engine_is_shared(self):
        assert get_engine(SMALL) is get_engine(SMALL)

    def test_engine_cache_is_bounded(self, monkeypatch):
        monkeypatch.setattr(algprob_module, 'ENGINE_CACHE_SIZE', 2)
        first = get_engine(ResourceBound(6, 3))
        get_engine(ResourceBound(6, 4))
        get_engine(ResourceBound(6, 5))
        assert len(algprob_module._engines) == 2
        rebuilt = get_engine(ResourceBound(6, 3))
        assert rebuilt is not first
        assert rebuilt.value('0') == first.value('0') == Fraction(1, 64)

    def test_engine_built_once_across_threads(self):
        bound = ResourceBound(12, 7)
        with ThreadPoolExecutor(max_workers=8) as pool:
            engines = list(pool.map(lambda _: get_engine(bound), range(16)))
        assert all(e is engines[0] for e in engines)

    def test_semimeasure(self):
        assert check_semimeasure(AlgorithmicProbability(MEDIUM), 5).ok

    def test_grows_with_resources(self):
        for y in strings_up_to(5):
            assert algprob(y, SMALL) <= algprob(y, MEDIUM)

    def test_km_within_algprob(self):
        for y in strings_up_to(5):
            k = km(y, MEDIUM)
            if k is not None:
                assert Fraction(1, 2 ** k) <= algprob(y, MEDIUM)

    @pytest.mark.parametrize('bound', [TINY, SMALL, MEDIUM])
    def test_mixture_form(self, bound):
        for y in strings_up_to(5):
            assert algprob_mixture_form(y, bound) == algprob(y, bound)

    def test_floor(self):
        floored = FlooredAlgorithmicProbability(TINY, Fraction(1, 2))
        assert floored('1') == Fraction(1, 4)
        assert floored('0') == Fraction(1, 128) + Fraction(1, 4)
        with pytest.raises(ValueError):
            FlooredAlgorithmicProbability(TINY, Fraction(3, 2))


class TestSolomonoff:
    def test_prediction(self):
        prediction = solomonoff_predict('', 0, TINY)
        assert prediction.raw == Fraction(1, 64)
        assert prediction.normalized == 1

    @pytest.mark.slow
    def test_default_bound_after_zeros(self):
        bound = ResourceBound(DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS)
        assert algprob('0000', bound) == Fraction(21, 262144)
        assert algprob('0001', bound) == Fraction(1, 262144)
        assert [km(y, bound) for y in ['0', '1', '0000']] == [6, 9, 15]
        q = solomonoff_predict('000', 0, bound).normalized
        assert q == Fraction(21, 22)
        assert check_golden('solomonoff-normalized-000-0-18-500.txt', f'{format_prob(q)}\n',
                            directory=DEFAULT_GOLDEN_DIR)

    def test_undefined_off_outputs(self):
        assert solomonoff_predict('1', 0, TINY).normalized is UNDEFINED
        assert SolomonoffPredictor(TINY)('1', 1) is UNDEFINED
        assert SolomonoffPredictor(TINY, floor=Fraction(1, 128))('1', 1) == Fraction(1, 2)

    def test_normalized_sums_to_one(self):
        assert check_predictor(SolomonoffPredictor(MEDIUM), 5).ok

    def test_raw_is_semi(self):
        raw = SolomonoffPredictor(MEDIUM, normalized=False)
        assert raw.is_semi
        assert check_predictor(raw, 5, semi=True).ok


class TestTables:
    def test_table(self):
        tiny = algprob_table(TINY, 2)
        assert len(tiny.values) == 7
        assert tiny.km['0'] == 6 and tiny.counts['0'] == 1
        assert tiny.dominated_by(algprob_table(SMALL, 2)) == []
        assert algprob_table(SMALL, 2).dominated_by(tiny) != []

    def test_stage_approximation(self):
        f = AlgProbApproximation(9)
        assert check_lower_approximation(f, ['0', '1', '01', '11'], range(12)).ok

    def test_stage_approximation_matches_fresh_tables(self):
        f = AlgProbApproximation(9, max_stage=20)
        for s in [*range(21), 35]:
            for y in strings_up_to(4):
                assert f(y, s) == algprob(y, ResourceBound(9, s))

    def test_stage_series(self):
        series = conditional_stage_series('1', 1, 15, [5, 10, 50])
        assert [s for s, _ in series] == [5, 10, 50]
        for s, raw in series:
            assert raw == solomonoff_predict('1', 1, ResourceBound(15, s)).raw
