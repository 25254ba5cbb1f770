"""Writers shared by every command: JSON documents and CSV tables, to a file or stdout."""

import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

import structlog
from pydantic import BaseModel

logger = structlog.get_logger(__name__)

PathLike = Union[str, os.PathLike]


def _write(text: str, out: Optional[PathLike]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("result_written", path=str(path), size=len(text))


def render_json(payload: Union[BaseModel, dict, list]) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2) + "\n"
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def emit_json(payload: Union[BaseModel, dict, list], out: Optional[PathLike] = None) -> str:
    """Write ``payload`` as indented JSON and return the text."""
    text = render_json(payload)
    _write(text, out)
    return text


def emit_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], out: Optional[PathLike] = None) -> str:
    """Write a CSV table with a header row and return the text.

    Floats are written with ``repr`` so values survive a round trip exactly.
    """
    text = render_csv(header, rows)
    _write(text, out)
    return text


def emit_text(text: str, out: Optional[PathLike] = None) -> str:
    _write(text, out)
    return text
