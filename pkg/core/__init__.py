"""
Unipred - Core Modules

Exact measures and predictors, mixtures, scoring and adversaries.
"""
from .strings import UNDEFINED, MaybeProb, format_prob, parse_prob
from .errors import (
    UnipredError, HypothesisError, ComaError, ZeroEvidenceError,
    HorizonError, SequenceFormatError, ExperimentError,
)
from .measures import (
    SemiMeasure, Measure, Predictor, LowerApproximation, PredictorMeasure,
    conditional, predictor_from, semipredictor_from,
    check_measure, check_semimeasure, check_predictor, check_lower_approximation,
)
from .mixture import (
    MixtureMeasure, AggregatorState, AggregatingPredictor,
    mixture_value, mixture_predict, update_weights, aggregate_predict, check_domination,
)
from .scoring import Loss, Regret, RegretLedger, log_loss, cumulative_loss, regret, \
    verify_optimality_bound, build_ledger
from .diagonal import AdversaryTrace, TraceStatus, putnam_sequence, anti_limit_sequence, \
    verify_anti_limit
from .lzprior import LzParse, lz76_parse, lz_complexity, lz_prior_predictor
from .sampling import sample_sequence, reliability_trace
from .utils import ingest_sequence

__all__ = [
    'UNDEFINED', 'MaybeProb', 'format_prob', 'parse_prob',
    'UnipredError', 'HypothesisError', 'ComaError', 'ZeroEvidenceError',
    'HorizonError', 'SequenceFormatError', 'ExperimentError',
    'SemiMeasure', 'Measure', 'Predictor', 'LowerApproximation', 'PredictorMeasure',
    'conditional', 'predictor_from', 'semipredictor_from',
    'check_measure', 'check_semimeasure', 'check_predictor', 'check_lower_approximation',
    'MixtureMeasure', 'AggregatorState', 'AggregatingPredictor',
    'mixture_value', 'mixture_predict', 'update_weights', 'aggregate_predict',
    'check_domination',
    'Loss', 'Regret', 'RegretLedger', 'log_loss', 'cumulative_loss', 'regret',
    'verify_optimality_bound', 'build_ledger',
    'AdversaryTrace', 'TraceStatus', 'putnam_sequence', 'anti_limit_sequence',
    'verify_anti_limit',
    'LzParse', 'lz76_parse', 'lz_complexity', 'lz_prior_predictor',
    'sample_sequence', 'reliability_trace', 'ingest_sequence',
]
