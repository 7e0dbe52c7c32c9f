"""Deterministic artifact writers: exact JSON, locale-free CSV, atomic files."""
import csv
import io
import json
import logging
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import mpmath
import numpy as np
from pydantic import BaseModel

logger = logging.getLogger(__name__)

FLOAT_DIGITS = 17


def format_number(value: Any, digits: int = FLOAT_DIGITS) -> str:
    """Exact rationals as num/den, everything numeric else as a decimal string."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits)
    if isinstance(value, complex):
        return f"{format_number(value.real, digits)}{'+' if value.imag >= 0 else '-'}{format_number(abs(value.imag), digits)}j"
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{digits}g")
    return str(value)


def to_jsonable(value: Any, digits: int = FLOAT_DIGITS) -> Any:
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(), digits)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v, digits) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v, digits) for v in value.tolist()]
    if value is None or isinstance(value, (bool, str)):
        return value
    return format_number(value, digits)


def dump_json(payload: Any, digits: int = FLOAT_DIGITS) -> str:
    return json.dumps(to_jsonable(payload, digits), indent=2, sort_keys=True) + "\n"


def dump_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = FLOAT_DIGITS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(cell, digits) if cell is not None else "" for cell in row])
    return buffer.getvalue()


def atomic_write(path: str | os.PathLike, text: str) -> Path:
    """Write UTF-8 text through a temporary sibling file and rename it into place."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(temporary, target)
    except Exception as e:
        logger.error(f"Error occurred while writing {target}: {e}")
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise
    logger.info(f"Successfully wrote {target}")
    return target
