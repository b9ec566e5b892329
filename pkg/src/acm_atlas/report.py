"""
Report documents (:mod:`acm_atlas.report`)
==========================================

Every command emits a :class:`ReportDocument`.  JSON output is canonical: keys
sorted, two-space indent, trailing newline, and integers or ``"p/q"`` strings as
the only numbers, so that parsing and re-serializing is byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Any

from packaging.version import InvalidVersion, Version

from .errors import SchemaVersionError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"
FORMATS = ("json", "md", "csv")


def check_schema_version(found: Any, source: str) -> None:
    """
    Accept documents whose major schema version equals ours.

    >>> check_schema_version("1.3", "example")
    >>> check_schema_version("2.0", "example")
    Traceback (most recent call last):
    ...
    acm_atlas.errors.SchemaVersionError: example has schema_version 2.0, expected 1.x
    """
    expected = Version(SCHEMA_VERSION)
    try:
        version = Version(str(found))
    except InvalidVersion:
        msg = f"{source} has invalid schema_version {found!r}"
        raise SchemaVersionError(msg) from None

    if version.major != expected.major:
        msg = f"{source} has schema_version {found}, expected {expected.major}.x"
        raise SchemaVersionError(msg)


def dumps(data: Any) -> str:
    """Canonical JSON text."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class ReportDocument:
    """
    Output of one command.

    Parameters
    ----------
    command : str
        Subcommand that produced the report.
    variety : dict, optional
        Descriptor echo.
    payload : dict
        Operation specific values.  Tables live under ``"rows"``.
    audits : list of dict
        Formula comparisons and verification findings.
    provenance : dict
        Map from row label to the equation that produced it.
    """

    command: str
    variety: dict[str, Any] | None = None
    payload: dict[str, Any] = field(default_factory=dict)
    audits: list[dict[str, Any]] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "variety": self.variety,
            "payload": self.payload,
            "audits": self.audits,
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], source: str = "report") -> ReportDocument:
        check_schema_version(data.get("schema_version"), source)
        return cls(
            command=data["command"],
            variety=data.get("variety"),
            payload=data.get("payload", {}),
            audits=data.get("audits", []),
            provenance=data.get("provenance", {}),
            schema_version=data["schema_version"],
        )

    # * Emitters -----------------------------------------------------------------
    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str, source: str = "report") -> ReportDocument:
        return cls.from_dict(json.loads(text), source)

    def _table(self) -> tuple[list[str], list[list[str]]]:
        rows = self.payload.get("rows")
        if isinstance(rows, list) and rows:
            header = list(rows[0])
            return header, [[_cell(row.get(k)) for k in header] for row in rows]
        return ["key", "value"], [[k, _cell(v)] for k, v in sorted(self.payload.items())]

    def to_markdown(self) -> str:
        """Title, descriptor line and one table, rows in payload order."""
        lines = [f"# {self.command}", ""]
        if self.variety is not None:
            described = ", ".join(
                f"{k} = {_cell(v)}" for k, v in sorted(self.variety.items())
            )
            lines.extend([f"Variety: {described}", ""])

        header, body = self._table()
        lines.extend([
            "| " + " | ".join(header) + " |",
            "|" + "|".join("---" for _ in header) + "|",
        ])
        lines.extend("| " + " | ".join(row) + " |" for row in body)

        if self.audits:
            lines.extend(["", "## audits", ""])
            lines.extend(
                f"- {a.get('formula', a.get('suite'))}: {a.get('status')}"
                for a in self.audits
            )
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """The payload table only."""
        header, body = self._table()
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buffer.getvalue()

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "md":
            return self.to_markdown()
        if fmt == "csv":
            return self.to_csv()
        msg = f"Unknown format {fmt!r}, expected one of {FORMATS}"
        raise ValueError(msg)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, dict) and set(value) == {"min", "max"}:
        return f"[{value['min']}, {value['max']}]"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)
