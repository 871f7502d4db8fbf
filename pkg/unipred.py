#!/usr/bin/env python3
"""
Unipred - Universal Sequential Prediction at Desk Scale

Usage:
    python unipred.py predict --input seq.txt --emit-weights   # Aggregator over default_pool(8)
    python unipred.py pool --pool-size 4 -o pool.json          # Write a pool file to edit
    python unipred.py algoprob --max-len 18 --max-steps 500    # λ / Km table
    python unipred.py trace --program 010100011101111 --steps 12
    python unipred.py experiment experiments/regret_bound.json
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from core.config import DEFAULT_MAX_PROGRAM_LEN, DEFAULT_MAX_STEPS, DEFAULT_TABLE_DEPTH, VERSION
from core.diagonal import putnam_sequence
from core.errors import ExperimentError, UnipredError
from core.experiments import ExperimentConfig, list_experiments, run_experiment
from core.lzprior import lz76_parse, lz_complexity
from core.measures import predictor_from
from core.mixture import AggregatorState, aggregate_predict, update_weights
from core.scoring import ZERO_LOSS, Loss
from core.strings import decode_token, encode_token, format_decimal, format_prob
from core.utils import emit_sequence, ingest_sequence, render_csv
from hypotheses import (
    default_pool, get_hypothesis, list_hypotheses, load_pool, pool_from_dict, save_pool,
)

logger = logging.getLogger('unipred')

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def setup_logging(verbosity: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def get_pool(args):
    if args.pool:
        return load_pool(args.pool)
    return default_pool(args.pool_size)


def emit(args, header, rows):
    """Rows to stdout as CSV or a JSON list of objects."""
    if args.format == 'json':
        records = [dict(zip(header, row)) for row in rows]
        print(json.dumps(records, indent=2))
    else:
        sys.stdout.write(render_csv(header, rows))


class RowStream:
    """
    Incremental `emit`: CSV rows are flushed as they are produced. JSON
    records are written on exit, so a run cut short by an error still
    prints what it computed.
    """

    def __init__(self, args, header):
        self.format = args.format
        self.header = list(header)
        self.records = []
        self._writer = None

    def __enter__(self) -> 'RowStream':
        if self.format != 'json':
            self._writer = csv.writer(sys.stdout, lineterminator='\n')
            self._writer.writerow(self.header)
        return self

    def write(self, row):
        if self._writer is None:
            self.records.append(dict(zip(self.header, row)))
        else:
            self._writer.writerow(row)
            sys.stdout.flush()

    def __exit__(self, *exc):
        if self._writer is None:
            print(json.dumps(self.records, indent=2))
        sys.stdout.flush()
        return False


def bound_of(args):
    from machines import ResourceBound
    return ResourceBound(args.max_len, args.max_steps)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_predict(args) -> int:
    pool = get_pool(args)
    x = ingest_sequence(args.input)
    state = AggregatorState.start(pool)
    header = ['t', 'observed', 'prob_one', 'prob_one_decimal']
    if args.emit_weights:
        header += [f'w{i + 1}' for i in range(len(pool))]
    with RowStream(args, header) as out:
        for t, c in enumerate(x):
            q = aggregate_predict(state, 1)
            row = [t, c, format_prob(q), format_decimal(q)]
            if args.emit_weights:
                row += [format_prob(w) for w in state.weights]
            out.write(row)
            state = update_weights(state, int(c))
    return EXIT_OK


def cmd_pool(args) -> int:
    pool = get_pool(args)
    for line in pool.describe():
        print(line)
    if args.output:
        save_pool(pool, args.output)
        logger.info("Wrote %s", args.output)
    return EXIT_OK


def _run_inline(args, kind: str, params: dict) -> int:
    config = ExperimentConfig(kind=kind, seed=args.seed or 0, params=params,
                              threads=args.threads, progress=not args.quiet)
    record = run_experiment(config)
    emit(args, record.header, record.rows)
    if not record.ok:
        logger.error("%d violations", record.violations)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_regret(args) -> int:
    params = {'samples': args.samples, 'length': args.length,
              'exhaustive_length': args.exhaustive}
    if args.pool:
        params['pool'] = str(args.pool)
    else:
        params['pool_size'] = args.pool_size
    return _run_inline(args, 'regret', params)


def load_victim(path: Path):
    """Victim file: a pool ({"members": …} or a list) or one hypothesis {kind, parameters}."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, list) or 'members' in data:
        return predictor_from(pool_from_dict(data).mixture)
    return predictor_from(get_hypothesis(data['kind'], data.get('parameters', {})).instantiate())


def cmd_diag(args) -> int:
    if args.victim:
        victim = load_victim(args.victim)
    else:
        victim = predictor_from(get_hypothesis(args.victim_kind).instantiate())
    trace = putnam_sequence(victim, args.horizon, args.tie)
    rows = []
    total = ZERO_LOSS
    for t, q in enumerate(trace.probabilities):
        total = total + Loss(q)
        rows.append([t, trace.sequence[t], format_prob(q), total.decimal()])
    emit(args, ['t', 'bit', 'prob_of_chosen_bit', 'cumulative_loss_bits'], rows)
    print(f"{victim.name}: {trace.describe()}; sequence {encode_token(trace.sequence)}",
          file=sys.stderr)
    return EXIT_OK if trace.completed else EXIT_VIOLATION


def cmd_algoprob(args) -> int:
    from machines import MACHINE_LABEL, algprob_table
    from core.measures import check_semimeasure
    table = algprob_table(bound_of(args), args.depth, threads=args.threads,
                          progress=not args.quiet)
    rows = []
    for y, value in table.values.items():
        km = table.km[y]
        rows.append([encode_token(y), format_prob(value), format_decimal(value),
                     '' if km is None else km, table.counts[y]])
    emit(args, ['string', 'algprob', 'algprob_decimal', 'km', 'minimal_descriptions'], rows)
    print(f"{MACHINE_LABEL} at {table.bound}", file=sys.stderr)
    report = check_semimeasure(table.as_semimeasure(), args.depth)
    for violation in report.violations:
        logger.error(violation.describe())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_km(args) -> int:
    from machines import algprob, km, minimal_descriptions
    y = decode_token(args.string)
    bound = bound_of(args)
    k = km(y, bound)
    shortest = minimal_descriptions(y, bound).shortest
    emit(args, ['string', 'km', 'shortest', 'algprob'],
         [[encode_token(y), 'not-found' if k is None else k,
           encode_token(shortest) if shortest is not None else '',
           format_prob(algprob(y, bound))]])
    return EXIT_OK


def cmd_trace(args) -> int:
    from machines import disassemble, run_machine, trace_machine
    print(' '.join(disassemble(args.program)))
    for frame in trace_machine(args.program, args.steps):
        print(f"{frame.step:>5}  pc={frame.pc:<3} {frame.opcode.name:<5} "
              f"head={frame.head:<4} tape={frame.tape()}  out={encode_token(frame.output)}")
    result = run_machine(args.program, args.steps)
    print(f"output={encode_token(result.output)} status={result.status.value} "
          f"consumed={result.input_bits_consumed} steps={result.steps}")
    return EXIT_OK


def cmd_lz(args) -> int:
    if args.compare:
        params = {'strings_file': str(args.compare), 'bound': [args.max_len, args.max_steps]}
        return _run_inline(args, 'lz-compare', params)
    x = decode_token(args.string)
    parse = lz76_parse(x)
    print(f"phrases: {' '.join(parse.phrases) if parse.phrases else '(none)'}")
    print(f"C = {parse.phrase_count}")
    print(f"K̃ = {lz_complexity(x)} bits")
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    config.seed = args.seed if args.seed is not None else config.seed
    config.threads = args.threads
    config.progress = not args.quiet
    output = args.output or config.output or Path('results')
    record = run_experiment(config)
    csv_path, json_path = record.write(output)
    print(f"{config.label}: {len(record.rows)} rows, {record.violations} violations")
    print(f"  {csv_path}")
    print(f"  {json_path}")
    return EXIT_OK if record.ok else EXIT_VIOLATION


def cmd_ingest_check(args) -> int:
    x = ingest_sequence(args.input)
    print(f"{len(x)} bits", file=sys.stderr)
    sys.stdout.write(emit_sequence(x))
    return EXIT_OK


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help='Random seed (default: 0, or the seed in an experiment config)')
    common.add_argument('--threads', type=int, default=1,
                        help='Worker threads; results do not depend on it (default: 1)')
    common.add_argument('--format', choices=['csv', 'json'], default='csv',
                        help='Output format (default: csv)')
    common.add_argument('--verbose', '-v', action='count', default=0,
                        help='-v for INFO, -vv for DEBUG logging on stderr')
    common.add_argument('--quiet', action='store_true', help='Disable progress bars')

    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument('--max-len', type=int, default=DEFAULT_MAX_PROGRAM_LEN,
                       help=f'Maximum program length in bits (default: {DEFAULT_MAX_PROGRAM_LEN})')
    bound.add_argument('--max-steps', type=int, default=DEFAULT_MAX_STEPS,
                       help=f'Maximum steps per program (default: {DEFAULT_MAX_STEPS})')

    pooled = argparse.ArgumentParser(add_help=False)
    pooled.add_argument('--pool', type=Path, default=None, help='Pool description file (JSON)')
    pooled.add_argument('--pool-size', type=int, default=8,
                        help='Size of the default pool when --pool is not given (default: 8)')

    parser = argparse.ArgumentParser(
        description='Unipred - universal sequential prediction at desk scale',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Hypothesis kinds: {', '.join(list_hypotheses())}
Experiment kinds: {', '.join(list_experiments())}
The empty string is written '^'.
        """
    )
    parser.add_argument('--version', action='version', version=f'unipred {VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('predict', parents=[common, pooled], help='Aggregator predictions')
    p.add_argument('--input', '-i', type=Path, required=True, help='Sequence file')
    p.add_argument('--emit-weights', action='store_true', help='Add posterior weights')
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser('pool', parents=[common, pooled], help='Show a pool and its weights')
    p.add_argument('--output', '-o', type=Path, default=None,
                   help='Also write the pool as a pool file (JSON)')
    p.set_defaults(func=cmd_pool)

    p = sub.add_parser('regret', parents=[common, pooled], help='Check the regret bound')
    p.add_argument('--length', type=int, default=64, help='Sample length (default: 64)')
    p.add_argument('--samples', type=int, default=100, help='Random samples (default: 100)')
    p.add_argument('--exhaustive', type=int, default=0,
                   help='Also check every string up to this length (default: 0)')
    p.set_defaults(func=cmd_regret)

    p = sub.add_parser('diag', parents=[common], help='Putnam adversary')
    victim = p.add_mutually_exclusive_group(required=True)
    victim.add_argument('--victim', type=Path, help='Pool or hypothesis file (JSON)')
    victim.add_argument('--victim-kind', choices=list_hypotheses(),
                        help='Hypothesis kind with default parameters')
    p.add_argument('--horizon', '-T', type=int, default=100, help='Steps (default: 100)')
    p.add_argument('--tie', type=int, choices=[0, 1], default=0, help='Tie break (default: 0)')
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser('algoprob', parents=[common, bound], help='Algorithmic probability table')
    p.add_argument('--depth', type=int, default=DEFAULT_TABLE_DEPTH,
                   help=f'Table depth (default: {DEFAULT_TABLE_DEPTH})')
    p.set_defaults(func=cmd_algoprob)

    p = sub.add_parser('km', parents=[common, bound], help='Monotone complexity of one string')
    p.add_argument('--string', '-s', required=True, help="Target string ('^' for empty)")
    p.set_defaults(func=cmd_km)

    p = sub.add_parser('trace', parents=[common], help='Step-by-step MONO trace')
    p.add_argument('--program', '-p', required=True, help='Program bits')
    p.add_argument('--steps', type=int, default=50, help='Step bound (default: 50)')
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser('lz', parents=[common, bound], help='LZ76 parse and complexity')
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument('--string', '-s', help="String to parse ('^' for empty)")
    target.add_argument('--compare', type=Path, help='File of strings, one per line')
    p.set_defaults(func=cmd_lz)

    p = sub.add_parser('experiment', parents=[common], help='Run an experiment config')
    p.add_argument('config', type=Path, help='Experiment config (JSON)')
    p.add_argument('--output', '-o', type=Path, default=None,
                   help='Output directory (default: from config, else results/)')
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser('ingest-check', parents=[common], help='Parse and re-emit a sequence file')
    p.add_argument('--input', '-i', type=Path, required=True, help='Sequence file')
    p.set_defaults(func=cmd_ingest_check)

    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    try:
        return args.func(args)
    except ExperimentError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE if isinstance(e.cause, ValueError) else EXIT_VIOLATION
    except ValueError as e:
        # Malformed input: bad strings, pool files, sequence files
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnipredError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
