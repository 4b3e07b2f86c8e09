"""
Deterministic CSV and JSON rendering of result rows, and the matching parsers.

Column order is the row model's field order. CSV floats are written as
``.16e`` (17 significant digits, enough to read back the identical double),
booleans as ``true``/``false`` and missing values as empty cells. JSON is a
flat array of objects keyed by the same column names.
"""

import csv
import io
import json
import logging
from enum import Enum
from typing import Any, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from models.runs import OutputFormat
from services.errors import EmitError

logger = logging.getLogger(__name__)

Row = TypeVar("Row", bound=BaseModel)


def columns(row_type: Type[BaseModel]) -> list[str]:
    return list(row_type.model_fields)


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.16e}"
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def render_csv(rows: Sequence[BaseModel], row_type: Type[BaseModel]) -> str:
    header = columns(row_type)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(getattr(row, name)) for name in header])
    return buffer.getvalue()


def render_json(rows: Sequence[BaseModel]) -> str:
    documents = [row.model_dump(mode="json") for row in rows]
    return json.dumps(documents, indent=2, allow_nan=False) + "\n"


def render_rows(
    rows: Sequence[BaseModel], row_type: Type[BaseModel], fmt: OutputFormat
) -> str:
    logger.debug(f"Rendering {len(rows)} {row_type.__name__} rows as {fmt.value}")
    if fmt is OutputFormat.JSON:
        return render_json(rows)
    return render_csv(rows, row_type)


def parse_csv(text: str, row_type: Type[Row]) -> list[Row]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != columns(row_type):
        raise EmitError(
            "CSV header does not match the row columns",
            details=f"got {reader.fieldnames!r}, expected {columns(row_type)!r}",
        )
    try:
        return [
            row_type.model_validate(
                {name: (None if cell == "" else cell) for name, cell in record.items()}
            )
            for record in reader
        ]
    except ValidationError as e:
        raise EmitError("CSV cell does not fit its column", details=str(e)) from e


def parse_json(text: str, row_type: Type[Row]) -> list[Row]:
    try:
        documents = json.loads(text)
    except json.JSONDecodeError as e:
        raise EmitError("output is not valid JSON", details=str(e)) from e
    if not isinstance(documents, list):
        raise EmitError("JSON output must be an array of row objects")
    try:
        return [row_type.model_validate(document) for document in documents]
    except ValidationError as e:
        raise EmitError("JSON object does not fit the row model", details=str(e)) from e


def parse_rows(text: str, row_type: Type[Row], fmt: OutputFormat) -> list[Row]:
    if fmt is OutputFormat.JSON:
        return parse_json(text, row_type)
    return parse_csv(text, row_type)
