from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from core.config import GOLDEN_DIR_ENV, GOLDEN_PIN_ENV
from hypotheses import Bernoulli, HypothesisPool, Point, Uniform, WeightVector, default_pool

settings.register_profile('unipred', max_examples=50, deadline=None)
settings.load_profile('unipred')

# Binary strings as hypothesis draws them
bit_strings = st.text(alphabet='01', max_size=12)
short_bit_strings = st.text(alphabet='01', max_size=6)
probabilities = st.fractions(min_value=0, max_value=1, max_denominator=64)
open_probabilities = st.fractions(min_value=0, max_value=1, max_denominator=64).filter(
    lambda q: 0 < q < 1)

# de Bruijn sequence B(2, 6): every 6-bit window once, cyclically
DE_BRUIJN_64 = '0000001000011000101000111001001011001101001111010101110110111111'


@pytest.fixture
def two_point_pool():
    """0^ω and 1^ω with weight 1/2 each."""
    return HypothesisPool((Point('', '0'), Point('', '1')),
                          WeightVector((Fraction(1, 2), Fraction(1, 2))))


@pytest.fixture
def coin_pool():
    """Uniform and Bernoulli(3/4) with weights 1/2 and 1/4."""
    return HypothesisPool((Uniform(), Bernoulli(Fraction(3, 4))),
                          WeightVector((Fraction(1, 2), Fraction(1, 4))))


@pytest.fixture(params=[1, 3, 8])
def standard_pool(request):
    return default_pool(request.param)


@pytest.fixture
def golden_tmp(tmp_path, monkeypatch):
    directory = tmp_path / 'golden'
    monkeypatch.setenv(GOLDEN_DIR_ENV, str(directory))
    monkeypatch.delenv(GOLDEN_PIN_ENV, raising=False)
    return directory


@pytest.fixture
def de_bruijn():
    return DE_BRUIJN_64
