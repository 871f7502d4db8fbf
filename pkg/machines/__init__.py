"""
Machines

The MONO monotone machine and the algorithmic probability built on it.
"""
from .mono import (
    INSTRUCTIONS, Opcode, MonotoneProgram, RunResult, Status, TraceFrame,
    assemble, decode, disassemble, encode, match_brackets, run_machine, trace_machine,
)
from .enumeration import (
    Description, DescriptionSet, ResourceBound, enumerate_descriptions, naive_descriptions,
)
from .algprob import (
    MACHINE_LABEL, AlgProbApproximation, AlgProbEngine, AlgProbTable,
    AlgorithmicProbability, FlooredAlgorithmicProbability, SolomonoffPrediction,
    SolomonoffPredictor, algprob, algprob_mixture_form, algprob_table,
    conditional_stage_series, get_engine, km, minimal_descriptions, solomonoff_predict,
)

__all__ = [
    'INSTRUCTIONS', 'Opcode', 'MonotoneProgram', 'RunResult', 'Status', 'TraceFrame',
    'assemble', 'decode', 'disassemble', 'encode', 'match_brackets', 'run_machine',
    'trace_machine',
    'Description', 'DescriptionSet', 'ResourceBound', 'enumerate_descriptions',
    'naive_descriptions', 'MACHINE_LABEL', 'AlgProbApproximation', 'AlgProbEngine',
    'AlgProbTable', 'AlgorithmicProbability', 'FlooredAlgorithmicProbability',
    'SolomonoffPrediction', 'SolomonoffPredictor', 'algprob', 'algprob_mixture_form',
    'algprob_table', 'conditional_stage_series', 'get_engine', 'km',
    'minimal_descriptions', 'solomonoff_predict',
]
