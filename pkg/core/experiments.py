"""
Experiments
JSON-configured runs behind the command line's `experiment` subcommand.

Every kind turns (params, seed) into CSV rows plus a summary, and counts
the invariant violations it saw. Rows depend only on the config and seed,
never on the thread count or the clock.
"""

import hashlib
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Union

from tqdm import tqdm

from .config import DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS, DEFAULT_TABLE_DEPTH, VERSION
from .diagonal import anti_limit_sequence, putnam_sequence, verify_anti_limit
from .errors import ExperimentError, HypothesisError, UnipredError
from .lzprior import lz76_parse, lz_complexity
from .measures import (
    ExactApproximation, Predictor, check_semimeasure, constant_predictor, predictor_from,
)
from .mixture import (
    AggregatorState, aggregate_predict, is_normalized, mixture_predict, update_weights,
)
from .sampling import GENERATOR, random_bits, reliability_trace, sample_sequence, spawn_seeds
from .scoring import ZERO_LOSS, cumulative_loss, verify_optimality_bound, weight_bits
from .strings import HALF, UNDEFINED, encode_token, format_decimal, format_prob, parse_prob, \
    strings_up_to
from .utils import check_golden, render_csv, write_csv

logger = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    kind: str
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)
    output: Optional[Path] = None
    threads: int = 1
    name: Optional[str] = None
    progress: bool = False

    @classmethod
    def from_dict(cls, data: dict[str, Any], name: Optional[str] = None) -> 'ExperimentConfig':
        if 'kind' not in data:
            raise HypothesisError("Experiment config needs a 'kind'")
        seed = int(data.get('seed', 0))
        if not 0 <= seed < 1 << 64:
            raise HypothesisError(f"Seed must be a 64-bit natural, got {seed}")
        output = data.get('output')
        return cls(kind=data['kind'], seed=seed, params=dict(data.get('params', {})),
                   output=Path(output) if output else None,
                   name=data.get('name', name))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'ExperimentConfig':
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise HypothesisError(f"{path}: not valid JSON ({e})") from e
        return cls.from_dict(data, name=path.stem)

    @property
    def digest(self) -> str:
        """sha256 of the canonical JSON of (kind, seed, params)."""
        canonical = json.dumps({'kind': self.kind, 'seed': self.seed, 'params': self.params},
                               sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode()).hexdigest()

    @property
    def label(self) -> str:
        return self.name or self.kind


@dataclass
class RunRecord:
    config: ExperimentConfig
    header: list[str]
    rows: list[list[str]]
    summary: dict[str, Any]
    violations: int = 0
    wall_clock: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def csv(self) -> str:
        return render_csv(self.header, self.rows)

    def summary_json(self) -> str:
        document = {
            'name': self.config.label,
            'kind': self.config.kind,
            'seed': self.config.seed,
            'digest': self.config.digest,
            'version': VERSION,
            'generator': GENERATOR,
            'rows': len(self.rows),
            'violations': self.violations,
            'wall_clock_seconds': round(self.wall_clock, 3),
            'summary': self.summary,
        }
        return json.dumps(document, indent=2, sort_keys=True) + '\n'

    def write(self, directory: Union[str, Path]) -> tuple[Path, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = write_csv(directory / f'{self.config.label}.csv', self.header, self.rows)
        json_path = directory / f'{self.config.label}.json'
        json_path.write_text(self.summary_json())
        return csv_path, json_path


@dataclass
class _Result:
    header: list[str]
    rows: list[list[str]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    violations: int = 0


Runner = Callable[[ExperimentConfig], _Result]

# Registry of experiment kinds
EXPERIMENTS: dict[str, Runner] = {}


def experiment(kind: str):
    def register(fn: Runner) -> Runner:
        EXPERIMENTS[kind] = fn
        return fn
    return register


def list_experiments() -> list[str]:
    return list(EXPERIMENTS.keys())


def run_experiment(config: ExperimentConfig) -> RunRecord:
    """
    Dispatch a config to its experiment kind.

    Raises:
        ExperimentError: any failure, wrapped with the config digest
    """
    if config.kind not in EXPERIMENTS:
        available = ', '.join(EXPERIMENTS)
        raise ExperimentError(config.digest, HypothesisError(
            f"Unknown experiment kind: {config.kind}. Available: {available}"))
    logger.info("Running %s (%s, seed %d)", config.label, config.kind, config.seed)
    start = time.perf_counter()
    try:
        result = EXPERIMENTS[config.kind](config)
    except ExperimentError:
        raise
    except (UnipredError, ValueError, KeyError, OSError) as e:
        raise ExperimentError(config.digest, e) from e
    record = RunRecord(config, result.header, result.rows, result.summary,
                       result.violations, time.perf_counter() - start)
    logger.info("%s: %d rows, %d violations in %.2fs", config.label, len(record.rows),
                record.violations, record.wall_clock)
    return record


# ---------------------------------------------------------------------------
# Parameter helpers
# ---------------------------------------------------------------------------

def _pool(params: dict[str, Any]):
    from hypotheses import default_pool, load_pool, pool_from_dict
    pool = params.get('pool')
    if isinstance(pool, str):
        return load_pool(pool)
    if pool is not None:
        return pool_from_dict(pool)
    return default_pool(int(params.get('pool_size', 8)))


def _hypothesis(spec: dict[str, Any]):
    from hypotheses import get_hypothesis
    return get_hypothesis(spec['kind'], spec.get('parameters', {}))


def _bound(value, default=(DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS)):
    from machines import ResourceBound
    max_len, max_steps = value if value is not None else default
    return ResourceBound(int(max_len), int(max_steps))


def _victim(spec: dict[str, Any]) -> Predictor:
    """A predictor from {'constant': 'n/d'}, {'pool': …}/{'pool_size': n} or {'kind': …}."""
    if 'constant' in spec:
        return constant_predictor(parse_prob(spec['constant']))
    if 'pool' in spec or 'pool_size' in spec:
        pool = _pool(spec)
        return predictor_from(pool.mixture)
    return predictor_from(_hypothesis(spec).instantiate())


def _map(config: ExperimentConfig, fn, items, desc: str) -> list:
    """Ordered parallel map; results are collected in input order."""
    items = list(items)
    with ThreadPoolExecutor(max_workers=max(1, config.threads)) as executor:
        return list(tqdm(executor.map(fn, items), total=len(items), desc=desc,
                         leave=False, disable=not config.progress))


def _dec(value) -> str:
    return format_decimal(value)


# ---------------------------------------------------------------------------
# Experiment kinds
# ---------------------------------------------------------------------------

@experiment('consistency')
def _consistency(config: ExperimentConfig) -> _Result:
    params = config.params
    pool = _pool(params)
    truth = _hypothesis(params.get('truth', {'kind': 'bernoulli', 'parameters': {'bias': '3/4'}}))
    length = int(params.get('length', 2000))
    runs = int(params.get('runs', 100))
    tolerance = parse_prob(params.get('tolerance', '1/20'))
    required = int(params.get('min_successes', runs))
    target = truth.instantiate()

    result = _Result(['run', 'final_prob_one', 'final_prob_one_decimal', 'truth_prob_one',
                      'abs_error_decimal', 'within_tolerance'])
    successes = 0
    if length > 0:
        def one_run(seed):
            x = sample_sequence(target, length, seed)
            return mixture_predict(pool, x, 1), target.conditional(x, 1)

        outcomes = _map(config, one_run, spawn_seeds(config.seed, runs), 'consistency')
        for k, (q, truth_q) in enumerate(outcomes):
            within = q is not UNDEFINED and abs(q - truth_q) <= tolerance
            successes += within
            result.rows.append([k, format_prob(q), _dec(q), format_prob(truth_q),
                                _dec(abs(q - truth_q)) if q is not UNDEFINED else 'undefined',
                                int(within)])
        if successes < required:
            result.violations += 1
    result.summary = {'runs': runs if length > 0 else 0, 'length': length,
                      'truth': truth.describe(), 'tolerance': format_prob(tolerance),
                      'successes': successes, 'required': required if length > 0 else 0}

    # Point pools identify the truth at the first discriminating bit
    identification = params.get('point_identification')
    if identification:
        from hypotheses import HypothesisPool, Point, WeightVector
        cycles = identification.get('cycles', ['0', '1'])
        points = HypothesisPool(tuple(Point('', c) for c in cycles),
                                WeightVector(tuple(Fraction(1, len(cycles)) for _ in cycles)))
        truth_point = Point('', identification.get('truth', '1')).instantiate()
        trace = reliability_trace(predictor_from(points.mixture), truth_point,
                                  int(identification.get('length', 16)), config.seed)
        first = next((r.t for r in trace.rows if r.error == 0), None)
        exact_after = first is not None and all(r.error == 0 for r in trace.rows[first:])
        result.summary['point_identification'] = {
            'errors': [format_prob(r.error) for r in trace.rows],
            'identified_at': first, 'exact_thereafter': exact_after}
        if not exact_after or trace.truncated:
            result.violations += 1
    return result


@experiment('reliability-trace')
def _reliability_trace(config: ExperimentConfig) -> _Result:
    params = config.params
    predictor = _victim(params.get('predictor', {'pool_size': 8}))
    truth = _hypothesis(params.get('truth', {'kind': 'bernoulli', 'parameters': {'bias': '3/4'}}))
    length = int(params.get('length', 2000))
    trace = reliability_trace(predictor, truth.instantiate(), length, config.seed)
    result = _Result(['t', 'observed', 'predicted_prob_one', 'truth_prob_one',
                      'abs_error', 'abs_error_decimal'])
    for row in trace.rows:
        result.rows.append([row.t, row.observed, format_prob(row.predicted),
                            format_prob(row.truth), format_prob(row.error), _dec(row.error)])
    final = trace.final_error
    result.summary = {'length': length, 'predictor': predictor.name, 'truth': truth.describe(),
                      'final_error': format_prob(final) if final is not None else None,
                      'final_error_decimal': _dec(final) if final is not None else None,
                      'undefined_at': trace.undefined_at}
    limit = params.get('max_final_error')
    if limit is not None and final is not None and final > parse_prob(limit):
        result.violations += 1
    if trace.truncated:
        result.violations += 1
    return result


@experiment('regret')
def _regret(config: ExperimentConfig) -> _Result:
    params = config.params
    pool = _pool(params)
    exhaustive = int(params.get('exhaustive_length', 0))
    samples = int(params.get('samples', 100))
    length = int(params.get('length', 32))
    result = _Result(['sample', 'member', 'weight_bits', 'regret_bits', 'bound_satisfied'])

    checked = failures = tight = 0
    for x in strings_up_to(exhaustive + 1):
        for i in range(len(pool)):
            verdict = verify_optimality_bound(pool, i, x)
            checked += 1
            failures += not verdict.holds

    def bound_rows(seed):
        x = random_bits(length, seed)
        rows = []
        for i in range(len(pool)):
            verdict = verify_optimality_bound(pool, i, x)
            member = verdict.weighted_member_mass / pool.weights[i]
            if member == 0:
                regret_bits = '-inf'
            else:
                regret_bits = _dec(weight_bits(verdict.mixture_mass / member))
            rows.append((i, regret_bits, verdict.holds, verdict.tight))
        return rows

    per_sample = _map(config, bound_rows, spawn_seeds(config.seed, samples), 'regret')
    for k, rows in enumerate(per_sample):
        for i, regret_bits, holds, is_tight in rows:
            result.rows.append([k, i + 1, _dec(weight_bits(pool.weights[i])), regret_bits,
                                int(holds)])
            failures += not holds
            tight += is_tight
    result.violations = failures
    result.summary = {'pool': pool.describe(), 'exhaustive_length': exhaustive,
                      'exhaustive_checks': checked, 'samples': samples, 'length': length,
                      'bound_failures': failures, 'tight_rows': tight}

    witness = params.get('tightness_witness')
    if witness:
        from hypotheses import pool_from_dict
        verdict = verify_optimality_bound(pool_from_dict(witness['pool']),
                                          int(witness['member']) - 1, witness['string'])
        result.summary['tightness_witness'] = {'holds': verdict.holds, 'tight': verdict.tight}
        if not verdict.tight:
            result.violations += 1
    return result


@experiment('identity')
def _identity(config: ExperimentConfig) -> _Result:
    """aggregate_predict against mixture_predict at every step, both bits; posteriors sum to 1."""
    params = config.params
    pool = _pool(params)
    sequences = int(params.get('sequences', 200))
    length = int(params.get('length', 64))

    def check(seed):
        x = random_bits(length, seed)
        state = AggregatorState.start(pool)
        mismatches = 0
        for t in range(length + 1):
            for b in (0, 1):
                if aggregate_predict(state, b) != mixture_predict(pool, x[:t], b):
                    mismatches += 1
            if not is_normalized(state):
                mismatches += 1
            if t < length:
                state = update_weights(state, int(x[t]))
        return x, mismatches

    result = _Result(['sequence', 'steps', 'mismatches'])
    for k, (x, mismatches) in enumerate(_map(config, check, spawn_seeds(config.seed, sequences),
                                              'identity')):
        result.rows.append([k, len(x) + 1, mismatches])
        result.violations += mismatches
    result.summary = {'sequences': sequences, 'length': length, 'mismatches': result.violations}
    return result


_DEFAULT_VICTIMS = [
    {'name': 'uniform', 'kind': 'uniform'},
    {'name': 'bernoulli-3/4', 'kind': 'bernoulli', 'parameters': {'bias': '3/4'}},
    {'name': 'markov1', 'kind': 'markov',
     'parameters': {'order': 1, 'transitions': {'0': ['2/3', '1/3'], '1': ['1/3', '2/3']}}},
    {'name': 'lz-step', 'kind': 'lz-step', 'parameters': {'lookahead': 4}},
    {'name': 'solomonoff', 'kind': 'solomonoff'},
    {'name': 'lz-h12', 'kind': 'lz', 'parameters': {'horizon': 12}, 'horizons': [12]},
]


@experiment('diagonal')
def _diagonal(config: ExperimentConfig) -> _Result:
    from hypotheses import PointMeasure
    params = config.params
    horizons = [int(t) for t in params.get('horizons', [25, 50, 100])]
    tie_break = int(params.get('tie_break', 0))
    result = _Result(['victim', 'horizon', 'status', 'sequence', 'max_recorded_prob',
                      'loss_bits', 'loss_at_least_horizon', 'point_loss_bits', 'regret_bits'])
    statuses = {}
    for spec in params.get('victims', _DEFAULT_VICTIMS):
        name = spec.get('name', spec.get('kind'))
        victim = _victim(spec)
        victim_horizons = [int(t) for t in spec.get('horizons', horizons)]
        trace = putnam_sequence(victim, max(victim_horizons), tie_break)
        statuses[name] = trace.describe()
        if not trace.completed:
            result.violations += 1
        for horizon in victim_horizons:
            x = trace.sequence[:horizon]
            probs = trace.probabilities[:horizon]
            loss = cumulative_loss(victim, x) if trace.completed else None
            point_loss = cumulative_loss(predictor_from(PointMeasure(x, '0')), x)
            worst = max(probs, default=Fraction(0))
            sound = worst <= HALF and loss is not None and loss.at_least(horizon)
            result.violations += not sound
            result.violations += point_loss != ZERO_LOSS
            result.rows.append([
                name, horizon, trace.status.value, encode_token(x), format_prob(worst),
                loss.decimal() if loss else 'undefined', int(sound),
                point_loss.decimal(),
                _dec(loss.bits - point_loss.bits) if loss else 'undefined',
            ])
    result.summary = {'horizons': horizons, 'tie_break': tie_break, 'victims': statuses}
    return result


@experiment('anti-limit')
def _anti_limit(config: ExperimentConfig) -> _Result:
    params = config.params
    blocks = int(params.get('blocks', 20))
    budget = int(params.get('budget', 64))
    result = _Result(['victim', 'status', 'status_at', 'blocks', 'sequence', 'unsound_blocks'])
    for spec in params.get('victims', []):
        name = spec.get('name', spec.get('kind', 'constant'))
        victim = _victim(spec)
        trace = anti_limit_sequence(ExactApproximation(victim), budget, blocks)
        unsound = verify_anti_limit(trace, victim)
        result.violations += len(unsound)
        expected_status = spec.get('expect_status')
        if expected_status is not None and trace.status.value != expected_status:
            result.violations += 1
        expected = spec.get('expect_sequence')
        if expected is not None and trace.sequence != expected:
            result.violations += 1
        result.rows.append([name, trace.status.value,
                            '' if trace.status_at is None else trace.status_at,
                            len(trace.blocks), encode_token(trace.sequence), len(unsound)])
    result.summary = {'blocks': blocks, 'budget': budget}
    return result


def _table_rows(table) -> list[list]:
    rows = []
    for y, value in table.values.items():
        km = table.km[y]
        rows.append([table.bound.max_program_len, table.bound.max_steps, encode_token(y),
                     format_prob(value), _dec(value), '' if km is None else km,
                     table.counts[y]])
    return rows


_TABLE_HEADER = ['max_program_len', 'max_steps', 'string', 'algprob', 'algprob_decimal',
                 'km', 'minimal_descriptions']

# Golden tables hold the exact columns only
_GOLDEN_HEADER = ['string', 'algprob', 'km', 'minimal_descriptions']


def _golden_rows(table) -> list[list]:
    return [[encode_token(y), format_prob(value), '' if table.km[y] is None else table.km[y],
             table.counts[y]] for y, value in table.values.items()]


@experiment('algoprob')
def _algoprob(config: ExperimentConfig) -> _Result:
    from machines import MACHINE_LABEL, algprob_table
    params = config.params
    bounds = [_bound(b) for b in params.get('bounds', [[DEFAULT_MAX_PROGRAM_LEN,
                                                        DEFAULT_MAX_STEPS]])]
    depth = int(params.get('depth', DEFAULT_TABLE_DEPTH))
    result = _Result(list(_TABLE_HEADER))
    tables = []
    checks = {}
    for bound in bounds:
        table = algprob_table(bound, depth, threads=config.threads, progress=config.progress)
        report = check_semimeasure(table.as_semimeasure(), depth)
        result.violations += len(report.violations)
        checks[str(bound)] = {'semimeasure_violations': len(report.violations)}
        if tables:
            raised = tables[-1].dominated_by(table)
            result.violations += len(raised)
            checks[str(bound)]['monotonicity_violations'] = len(raised)
        tables.append(table)
        result.rows.extend(_table_rows(table))
    result.summary = {'machine': MACHINE_LABEL, 'depth': depth, 'checks': checks}
    golden = params.get('golden')
    if golden:
        matched = check_golden(golden, render_csv(_GOLDEN_HEADER, _golden_rows(tables[-1])))
        result.summary['golden'] = {'file': golden, 'matched': matched}
        result.violations += not matched
    return result


@experiment('representation')
def _representation(config: ExperimentConfig) -> _Result:
    from machines import algprob, algprob_mixture_form
    params = config.params
    bound = _bound(params.get('bound'))
    max_len = int(params.get('max_len', 6))
    result = _Result(['string', 'algprob', 'mixture_form', 'equal'])
    for y in strings_up_to(max_len + 1):
        a, m = algprob(y, bound), algprob_mixture_form(y, bound)
        result.rows.append([encode_token(y), format_prob(a), format_prob(m), int(a == m)])
        result.violations += a != m
    result.summary = {'bound': str(bound), 'max_len': max_len}
    return result


@experiment('km')
def _km(config: ExperimentConfig) -> _Result:
    from machines import algprob, km
    params = config.params
    bounds = [_bound(b) for b in params.get('bounds', [[DEFAULT_MAX_PROGRAM_LEN,
                                                        DEFAULT_MAX_STEPS]])]
    depth = int(params.get('depth', DEFAULT_TABLE_DEPTH))
    result = _Result(['max_program_len', 'max_steps', 'string', 'km', 'algprob',
                      'shortest_within_algprob'])
    previous = None
    for bound in bounds:
        current = {}
        for y in strings_up_to(depth + 1):
            k = km(y, bound)
            value = algprob(y, bound)
            consistent = k is None or Fraction(1, 1 << k) <= value
            result.violations += not consistent
            if previous is not None and previous.get(y) is not None:
                # Km may only shrink as resources grow
                result.violations += k is None or k > previous[y]
            current[y] = k
            result.rows.append([bound.max_program_len, bound.max_steps, encode_token(y),
                                '' if k is None else k, format_prob(value), int(consistent)])
        previous = current
    # Hand-traced witnesses: {string, bound, at_most}
    witnesses = []
    for w in params.get('witnesses', []):
        bound = _bound(w.get('bound'))
        k = km(w['string'], bound)
        ok = k is not None and k <= int(w['at_most'])
        result.violations += not ok
        witnesses.append({'string': encode_token(w['string']), 'bound': str(bound),
                          'km': k, 'ok': ok})
    if km('', bounds[0]) != 0:
        result.violations += 1
    result.summary = {'bounds': [str(b) for b in bounds], 'depth': depth,
                      'witnesses': witnesses}
    return result


@experiment('lz-compare')
def _lz_compare(config: ExperimentConfig) -> _Result:
    from machines import algprob
    params = config.params
    strings = list(params.get('strings', []))
    if 'strings_file' in params:
        strings.extend(line.strip() for line in Path(params["strings_file"]).read_text().split())
    bound = _bound(params.get('bound'))
    result = _Result(['string', 'phrases', 'lz_bits', 'lz_prob', 'algprob', 'algprob_rank',
                      'lz_rank'])
    scored = []
    for y in strings:
        parse = lz76_parse(y)
        bits = lz_complexity(y)
        scored.append((y, parse.phrase_count, bits, algprob(y, bound)))
    by_algprob = sorted(scored, key=lambda s: (-s[3], s[0]))
    by_lz = sorted(scored, key=lambda s: (s[2], s[0]))
    algprob_rank = {s[0]: r + 1 for r, s in enumerate(by_algprob)}
    lz_rank = {s[0]: r + 1 for r, s in enumerate(by_lz)}
    for y, phrases, bits, value in scored:
        result.rows.append([encode_token(y), phrases, bits, format_prob(Fraction(1, 1 << bits)),
                            format_prob(value), algprob_rank[y], lz_rank[y]])

    # {string, reference, bound}: algprob(string) > algprob(reference)
    checks = []
    for check in params.get('algprob_above', []):
        check_bound = _bound(check.get('bound'), default=(bound.max_program_len, bound.max_steps))
        above = algprob(check['string'], check_bound) > algprob(check['reference'], check_bound)
        result.violations += not above
        checks.append({'string': check['string'], 'reference': check['reference'],
                       'bound': str(check_bound), 'holds': above})
    # {string, bits?, below?}: K̃(string) = bits and K̃(string) < K̃(below)
    for check in params.get('lz_checks', []):
        bits = lz_complexity(check['string'])
        ok = True
        if 'bits' in check:
            ok &= bits == int(check['bits'])
        if 'below' in check:
            ok &= bits < lz_complexity(check['below'])
        result.violations += not ok
        checks.append({'string': encode_token(check['string']), 'lz_bits': bits, 'holds': ok})
    result.summary = {'bound': str(bound), 'strings': len(strings), 'checks': checks}
    return result
