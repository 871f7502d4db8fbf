"""
Configuration
Desk-scale defaults shared by the library and the CLI
"""

import os
from pathlib import Path

# MONO resource bound used when none is given
DEFAULT_MAX_PROGRAM_LEN = 18
DEFAULT_MAX_STEPS = 500
DEFAULT_TABLE_DEPTH = 8

# Decimal renderings are display-only
DECIMAL_DIGITS = 12

# Largest horizon the LZ prior normalizes exhaustively (2^horizon parses)
MAX_LZ_HORIZON = 20

# Per-measure memo size (strings)
MEASURE_CACHE_SIZE = 1 << 14

# Enumerated description tables kept per resource bound
ENGINE_CACHE_SIZE = 8

GOLDEN_DIR_ENV = 'UNIPRED_GOLDEN_DIR'
# Set to 1 to write missing golden files instead of failing
GOLDEN_PIN_ENV = 'UNIPRED_PIN_GOLDEN'
DEFAULT_GOLDEN_DIR = Path(__file__).resolve().parent.parent / 'tests' / 'golden'

VERSION = '0.1.0'


def golden_dir() -> Path:
    """Directory holding pinned golden files."""
    return Path(os.environ.get(GOLDEN_DIR_ENV, DEFAULT_GOLDEN_DIR))


def pin_golden() -> bool:
    return os.environ.get(GOLDEN_PIN_ENV, '') == '1'
