"""
Seeded Sampling
Sequences drawn from measures with numpy's PCG64 bit generator.

Each bit takes one raw 64-bit draw k and compares the rational k/2^64
exactly against μ(1 | x): the bit is 1 iff k/2^64 < μ(1 | x). Independent
streams come from SeedSequence.spawn, so results do not depend on how
samples are scheduled across threads.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import ComaError
from .measures import Predictor, SemiMeasure
from .strings import UNDEFINED

logger = logging.getLogger(__name__)

GENERATOR = 'PCG64'
WORD_BITS = 64

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]


def make_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    """n independent child streams of `seed`; child k is the same for any n > k."""
    return np.random.SeedSequence(seed).spawn(n)


def draw_word(rng: np.random.Generator) -> int:
    return int(rng.bit_generator.random_raw())


def sample_sequence(m: SemiMeasure, length: int, seed: SeedLike) -> str:
    """
    Draw x_1 … x_T from the conditionals of m.

    Raises:
        ComaError: m's conditional is undefined along the path
    """
    rng = make_generator(seed)
    x = ''
    for _ in range(length):
        q = m.conditional(x, 1)
        if q is UNDEFINED:
            raise ComaError(x)
        k = draw_word(rng)
        # k/2^64 < q  ⇔  k·den < num·2^64
        x += '1' if k * q.denominator < q.numerator << WORD_BITS else '0'
    return x


def random_bits(length: int, seed: SeedLike) -> str:
    """Uniform bits, 64 per raw draw, most significant first."""
    rng = make_generator(seed)
    chunks = []
    for _ in range(-(-length // WORD_BITS)):
        chunks.append(format(draw_word(rng), f'0{WORD_BITS}b'))
    return ''.join(chunks)[:length]


@dataclass(frozen=True)
class ReliabilityRow:
    t: int
    observed: str       # x_{t+1}
    predicted: Fraction  # p(x^t, 1)
    truth: Fraction      # μ(1 | x^t)

    @property
    def error(self) -> Fraction:
        return abs(self.predicted - self.truth)


@dataclass
class ReliabilityTrace:
    sequence: str
    rows: list[ReliabilityRow] = field(default_factory=list)
    # Step at which the predictor went into a coma, if it did
    undefined_at: int | None = None

    @property
    def truncated(self) -> bool:
        return self.undefined_at is not None

    @property
    def final_error(self) -> Fraction | None:
        return self.rows[-1].error if self.rows else None


def reliability_trace(p: Predictor, truth: SemiMeasure, length: int,
                      seed: SeedLike) -> ReliabilityTrace:
    """|p(x^t, 1) − μ(1 | x^t)| along a sequence sampled from the truth."""
    x = sample_sequence(truth, length, seed)
    trace = ReliabilityTrace(x)
    for t in range(length):
        q = p(x[:t], 1)
        if q is UNDEFINED:
            trace.undefined_at = t
            logger.info("%s undefined at step %d", p.name, t)
            break
        trace.rows.append(ReliabilityRow(t, x[t], q, truth.conditional(x[:t], 1)))
    return trace
