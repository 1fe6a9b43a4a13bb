"""
Report emission for every subcommand.

A Report holds a table (columns + rows) and a metadata mapping. It renders as an aligned plain-text table,
as a schema-versioned JSON object, or as CSV whose first column is the schema version. JSON and CSV output is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Any

from pixelruler.utils.argsdataclass import ArgField, ArgsDataClass
from pixelruler.utils.errors import ArgumentValidationError

SCHEMA_VERSION = 1


class OutputFormat(Enum):
    HUMAN = auto()
    JSON = auto()
    CSV = auto()


@dataclass
class ReportArgs(ArgsDataClass):
    """Output and verbosity flags shared by every subcommand."""

    json: bool = ArgField(
        cmd_name="--json", action="store_true", group="output", help="Write a schema-versioned JSON report."
    )  # type: ignore[assignment]

    csv: bool = ArgField(
        cmd_name="--csv", action="store_true", group="output", help="Write a schema-versioned CSV report."
    )  # type: ignore[assignment]

    verbose: int = ArgField(
        cmd_name=["-v", "--verbose"],
        action="count",
        default=0,
        help="Log progress to standard error. Repeat for debug output.",
    )  # type: ignore[assignment]

    @property
    def output_format(self) -> OutputFormat:
        if self.json:
            return OutputFormat.JSON
        if self.csv:
            return OutputFormat.CSV
        return OutputFormat.HUMAN

    def validate(self) -> None:
        if self.json and self.csv:
            raise ArgumentValidationError("--json and --csv are mutually exclusive")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _human_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isfinite(value) and value != 0 and (abs(value) < 1e-4 or abs(value) >= 1e7):
            return f"{value:.6e}"
        return f"{value:.6g}"
    return str(value)


def format_table(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Renders rows as a left-aligned plain-text table with a header rule."""
    cells = [[_human_cell(value) for value in row] for row in rows]
    widths = [max([len(column)] + [len(row[i]) for row in cells]) for i, column in enumerate(columns)]
    lines = ["  ".join(column.ljust(width) for column, width in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    lines.extend("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells)
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    """Output of one subcommand run.

    Args:
        command (str): subcommand name, written into JSON output
        columns (Sequence[str]): table columns
        rows (list[Sequence[Any]]): table rows
        meta (dict[str, Any]): extra JSON payload, shown as `key: value` lines in human output
        body (str | None): human rendering that replaces the default meta + table layout
        ok (bool): False when the command found a failure (exit code 2)
    """

    command: str
    columns: Sequence[str]
    rows: list[Sequence[Any]] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)
    body: str | None = None
    ok: bool = True

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def render(self, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self.render_json()
        if output_format is OutputFormat.CSV:
            return self.render_csv()
        return self.render_human()

    def render_json(self) -> str:
        payload = {"schema_version": SCHEMA_VERSION, "command": self.command}
        payload.update(self.meta)
        payload["rows"] = self.records()
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    def render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["schema_version", *self.columns])
        for row in self.rows:
            writer.writerow([SCHEMA_VERSION, *(_csv_cell(value) for value in row)])
        return buffer.getvalue()

    def render_human(self) -> str:
        if self.body is not None:
            return self.body
        lines = [f"{key}: {_human_meta(value)}" for key, value in self.meta.items()]
        header = "\n".join(lines) + "\n\n" if lines else ""
        return header + format_table(self.columns, self.rows)


def _human_meta(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "; ".join(_human_meta(item) for item in value)
    if isinstance(value, dict):
        return ", ".join(f"{key}={_human_cell(item)}" for key, item in value.items())
    return _human_cell(value)
