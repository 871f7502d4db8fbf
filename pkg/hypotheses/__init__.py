"""
Hypotheses

Computable measures to populate pools, and the pool file format.
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from core.errors import HypothesisError
from core.measures import SemiMeasure
from core.strings import format_prob, parse_prob
from .base import Hypothesis, HypothesisPool, WeightVector
from .uniform import Uniform, UniformMeasure
from .bernoulli import Bernoulli, BernoulliMeasure
from .markov import Markov, MarkovMeasure
from .point import Point, PointMeasure
from .lz import LzPredictor, LzStep
from .solomonoff import Solomonoff

# Registry of available hypothesis kinds
HYPOTHESES = {
    'uniform': Uniform,
    'bernoulli': Bernoulli,
    'markov': Markov,
    'point': Point,
    'lz': LzPredictor,
    'lz-step': LzStep,
    'solomonoff': Solomonoff,
}


def get_hypothesis(kind: str, params: dict[str, Any] | None = None) -> Hypothesis:
    """Build a hypothesis spec by kind name."""
    if kind not in HYPOTHESES:
        available = ', '.join(HYPOTHESES.keys())
        raise HypothesisError(f"Unknown hypothesis kind: {kind}. Available: {available}")
    return HYPOTHESES[kind].from_parameters(params or {})


def list_hypotheses() -> list[str]:
    """List all available hypothesis kinds."""
    return list(HYPOTHESES.keys())


def instantiate(spec: Hypothesis) -> SemiMeasure:
    return spec.instantiate()


_STANDARD_MEMBERS = (
    Uniform(),
    Bernoulli(Fraction(3, 4)),
    Point('', '0'),
    Markov.from_table(1, {'0': (Fraction(2, 3), Fraction(1, 3)),
                          '1': (Fraction(1, 3), Fraction(2, 3))}),
    Point('', '1'),
    LzStep(lookahead=4),
    Bernoulli(Fraction(1, 4)),
    Point('', '01'),
)


def default_pool(n: int) -> HypothesisPool:
    """
    The first n standard hypotheses with weights 2^{-i}.

    Uniform is always member 1, so the mixture is positive everywhere.
    Past the standard eight the pool continues with Bernoulli(j/(j+1)).
    """
    if n < 1:
        raise HypothesisError(f"A pool needs at least one member, got n={n}")
    members = list(_STANDARD_MEMBERS[:n])
    for j in range(1, n - len(_STANDARD_MEMBERS) + 1):
        members.append(Bernoulli(Fraction(j, j + 1)))
    return HypothesisPool(tuple(members), WeightVector.geometric(n))


def pool_from_dict(data: Union[dict, list]) -> HypothesisPool:
    """Pool from parsed JSON: a list of members or {"members": [...]}."""
    entries = data.get('members') if isinstance(data, dict) else data
    if not isinstance(entries, list):
        raise HypothesisError("Pool file needs a list of members")
    members, weights = [], []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or 'kind' not in entry:
            raise HypothesisError(f"Pool member {i + 1} has no kind")
        if 'weight' not in entry:
            raise HypothesisError(f"Pool member {i + 1} has no weight")
        members.append(get_hypothesis(entry['kind'], entry.get('parameters', {})))
        try:
            weights.append(parse_prob(entry['weight']))
        except ValueError as e:
            raise HypothesisError(f"Pool member {i + 1} weight: {e}") from e
    return HypothesisPool(tuple(members), WeightVector(tuple(weights)))


def load_pool(path: Union[str, Path]) -> HypothesisPool:
    """Read a JSON pool description file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise HypothesisError(f"{path}: not valid JSON ({e})") from e
    return pool_from_dict(data)


def dump_pool(pool: HypothesisPool) -> dict:
    """JSON-ready description of a pool; load_pool reads it back."""
    return {'members': [
        {'kind': h.kind, 'parameters': h.parameters(), 'weight': format_prob(w)}
        for h, w in zip(pool.members, pool.weights)
    ]}


def save_pool(pool: HypothesisPool, path: Union[str, Path]):
    Path(path).write_text(json.dumps(dump_pool(pool), indent=2) + '\n')


__all__ = [
    'Hypothesis', 'HypothesisPool', 'WeightVector',
    'Uniform', 'UniformMeasure', 'Bernoulli', 'BernoulliMeasure',
    'Markov', 'MarkovMeasure', 'Point', 'PointMeasure',
    'LzPredictor', 'LzStep', 'Solomonoff',
    'HYPOTHESES', 'get_hypothesis', 'list_hypotheses', 'instantiate',
    'default_pool', 'pool_from_dict', 'load_pool', 'dump_pool', 'save_pool',
]
