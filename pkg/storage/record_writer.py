"""
Record Writer — serialises CLI results as JSON Lines or CSV.

Each JSON line is a self-contained object so output streams stay
parseable when piped, truncated or concatenated.

Schema (both formats)::

    command      — subcommand name, e.g. "count"
    params       — the parameters the command ran with
                   (CSV: flattened into ``param_<name>`` columns)
    <fields>     — result fields of the command

Exact integers are decimal strings, rationals ``"p/q"`` strings, floats
shortest round-trip decimals.

Usage::

    from storage.record_writer import OutputRecord, RecordWriter
    writer = RecordWriter(sys.stdout, "json")
    writer.write(OutputRecord("count", {"dim": 2}, {"n": 1, "value": "4"}))
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import IO, Any

from utils.errors import DomainError
from utils.settings import OUTPUT_FORMATS

PARAM_PREFIX = "param_"


@dataclass(frozen=True)
class OutputRecord:
    """One row of command output."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)
    fields: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"command": self.command, "params": dict(self.params), **self.fields}

    def to_row(self) -> dict[str, Any]:
        """Flat mapping used for CSV columns."""
        row: dict[str, Any] = {"command": self.command}
        row.update({f"{PARAM_PREFIX}{k}": _csv_cell(v) for k, v in self.params.items()})
        row.update({k: _csv_cell(v) for k, v in self.fields.items()})
        return row

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OutputRecord":
        data = dict(data)
        command = data.pop("command")
        params = data.pop("params", {}) or {}
        return cls(command=command, params=params, fields=data)

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "OutputRecord":
        row = dict(row)
        command = row.pop("command")
        params = {
            k[len(PARAM_PREFIX):]: v for k, v in row.items() if k.startswith(PARAM_PREFIX)
        }
        fields = {k: v for k, v in row.items() if not k.startswith(PARAM_PREFIX)}
        return cls(command=command, params=params, fields=fields)


def _csv_cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    if value is None:
        return ""
    return value


class RecordWriter:
    """Streams :class:`OutputRecord` objects to a text stream."""

    def __init__(self, stream: IO[str], fmt: str = "json") -> None:
        if fmt not in OUTPUT_FORMATS:
            raise DomainError(f"output format must be one of {OUTPUT_FORMATS}, got {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self._csv: csv.DictWriter | None = None

    def write(self, record: OutputRecord) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record.to_dict()) + "\n")
            return
        row = record.to_row()
        if self._csv is None:
            self._csv = csv.DictWriter(self.stream, fieldnames=list(row), lineterminator="\n")
            self._csv.writeheader()
        self._csv.writerow(row)

    def write_all(self, records: Iterable[OutputRecord]) -> int:
        count = 0
        for record in records:
            self.write(record)
            count += 1
        return count


def read_records(lines: Iterable[str], fmt: str = "json") -> list[OutputRecord]:
    """Parse writer output back into records."""
    if fmt == "json":
        return [
            OutputRecord.from_dict(json.loads(line))
            for line in lines
            if line.strip()
        ]
    if fmt == "csv":
        return [OutputRecord.from_row(row) for row in csv.DictReader(list(lines))]
    raise DomainError(f"output format must be one of {OUTPUT_FORMATS}, got {fmt!r}")
