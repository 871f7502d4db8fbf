"""
Bits, Strings and Probabilities
Finite binary strings are plain str of '0'/'1'; probabilities are exact Fractions
"""

from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import product
from typing import Iterator, Literal, Union

from .config import DECIMAL_DIGITS

Bit = Literal[0, 1]
BITS: tuple[Bit, Bit] = (0, 1)

# The empty string in CLI contexts
EMPTY_TOKEN = '^'

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class _Undefined:
    """Conditional probability on a prefix of measure zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'UNDEFINED'

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()

MaybeProb = Union[Fraction, _Undefined]


def is_bits(x: str) -> bool:
    return all(c in '01' for c in x)


def check_bits(x: str) -> str:
    """Return x unchanged, or raise ValueError if it is not a bit string."""
    if not isinstance(x, str) or not is_bits(x):
        raise ValueError(f"Not a binary string: {x!r}")
    return x


def extend(x: str, b: int) -> str:
    """The string x followed by bit b."""
    return x + ('1' if b else '0')


def complement(x: str) -> str:
    return x.translate(str.maketrans('01', '10'))


def all_strings(length: int) -> Iterator[str]:
    """All strings of exactly `length` bits, in lexicographic order."""
    for bits in product('01', repeat=length):
        yield ''.join(bits)


def strings_up_to(max_len: int) -> Iterator[str]:
    """All strings with fewer than `max_len` bits, shortest first."""
    for n in range(max_len):
        yield from all_strings(n)


def decode_token(token: str) -> str:
    """CLI token to string: '^' is the empty string."""
    if token == EMPTY_TOKEN:
        return ''
    return check_bits(token)


def encode_token(x: str) -> str:
    return x if x else EMPTY_TOKEN


def parse_prob(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse 'num/den' (or an integer) into a probability in [0, 1].

    Floats, such as a JSON 0.75, are rejected like decimal strings.
    """
    if isinstance(text, Fraction):
        value = text
    elif isinstance(text, int) and not isinstance(text, bool):
        value = Fraction(text)
    elif not isinstance(text, str):
        raise ValueError(f"Probabilities must be rationals 'num/den', got {text!r}")
    else:
        text = text.strip()
        if '.' in text or 'e' in text.lower():
            raise ValueError(f"Probabilities must be rationals 'num/den', got {text!r}")
        value = Fraction(text)
    if not ZERO <= value <= ONE:
        raise ValueError(f"Probability out of range [0, 1]: {text}")
    return value


def format_prob(p: MaybeProb) -> str:
    """'num/den' in lowest terms; 'undefined' for UNDEFINED."""
    if p is UNDEFINED:
        return 'undefined'
    return f"{p.numerator}/{p.denominator}"


def format_decimal(value: Union[Fraction, float, _Undefined],
                   digits: int = DECIMAL_DIGITS) -> str:
    """Display-only decimal rendering at `digits` significant digits."""
    if value is UNDEFINED:
        return 'undefined'
    if isinstance(value, float):
        if value != value or value in (float('inf'), float('-inf')):
            return str(value)
        return format(value, f'.{digits}g')
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    return format(d, f'.{digits}g')
