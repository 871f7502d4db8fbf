"""
Utility Functions
Sequence files, CSV output and golden files.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .config import GOLDEN_PIN_ENV, golden_dir, pin_golden
from .errors import SequenceFormatError

logger = logging.getLogger(__name__)

_WHITESPACE = frozenset(b' \t\n\r\x0b\x0c')


def parse_sequence(data: bytes) -> str:
    """ASCII '0'/'1' with whitespace ignored."""
    bits = []
    for offset, byte in enumerate(data):
        if byte in (0x30, 0x31):
            bits.append(chr(byte))
        elif byte not in _WHITESPACE:
            raise SequenceFormatError(offset, chr(byte))
    return ''.join(bits)


def ingest_sequence(path: Union[str, Path]) -> str:
    """
    Read a sequence file.

    Raises:
        SequenceFormatError: any byte other than 0, 1 or whitespace
    """
    return parse_sequence(Path(path).read_bytes())


def emit_sequence(x: str, width: int = 64) -> str:
    """Sequence file text, `width` bits per line."""
    lines = [x[i:i + width] for i in range(0, len(x), width)]
    return '\n'.join(lines) + '\n'


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(header, rows))
    return path


def check_golden(name: str, content: str, directory: Optional[Path] = None,
                 pin: Optional[bool] = None) -> bool:
    """
    Compare `content` with the pinned golden file `name`.

    A missing golden file is written and counts as a match only when
    pinning is on (`pin`, or UNIPRED_PIN_GOLDEN=1).

    Raises:
        FileNotFoundError: the golden file is missing and pinning is off
    """
    path = (directory or golden_dir()) / name
    if not path.exists():
        if not (pin_golden() if pin is None else pin):
            raise FileNotFoundError(
                f"Golden file {path} is missing; set {GOLDEN_PIN_ENV}=1 to pin it")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
        logger.warning("Pinned new golden file %s", path)
        return True
    return path.read_text() == content
