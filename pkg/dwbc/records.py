"""Result records and their JSON/CSV serialization.

Every value a command computes is emitted as one ``ResultRecord``. Exact
rationals are written as "p/q" strings and floats as full-precision decimal
strings, so reading a record back never loses information. JSON output uses
sorted keys and CSV a fixed column order; with ``runtime_ms`` left empty the
same command and configuration always produce the same bytes.

Examples:
    >>> record = ResultRecord({"command": "partition", "n": 3}, "rational", "qism", "7/1")
    >>> record.to_json()
    '{"agreement": null, "backend": "rational", "error": null, ...}'
"""

import csv
import io
import json
import sys
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from .backend import ScalarBackend
from .verifier import VerificationReport

CSV_COLUMNS = ("query", "backend", "route", "value", "agreement", "runtime_ms", "error")
REPORT_CSV_COLUMNS = ("suite", "seed", "name", "passed", "detail")


def format_value(value: Any, backend: ScalarBackend | None = None) -> str:
    """Lossless string form of a computed scalar.

    Examples:
        >>> format_value(Fraction(2, 7))
        '2/7'
        >>> format_value(Fraction(42))
        '42/1'
    """
    if isinstance(value, int) and not isinstance(value, bool):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if backend is not None:
        return backend.format(value)
    return str(value)


@dataclass(frozen=True)
class ResultRecord:
    """One computed value with the query that produced it.

    Attributes:
        query: Command name and arguments.
        backend: "rational" or "float".
        route: Computation route (e.g. "qism", "determinant", "rep1").
        value: Serialized value, None when the computation failed.
        agreement: Cross-route agreement (bool or a route-pair matrix).
        runtime_ms: Wall time, None unless timing is recorded.
        error: Diagnostic of a failed computation.
    """

    query: dict[str, Any]
    backend: str
    route: str
    value: str | None = None
    agreement: Any = None
    runtime_ms: float | None = None
    error: str | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": self.query,
            "backend": self.backend,
            "route": self.route,
            "value": self.value,
            "agreement": self.agreement,
            "runtime_ms": self.runtime_ms,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ResultRecord":
        return cls(
            query=data["query"],
            backend=data["backend"],
            route=data["route"],
            value=data.get("value"),
            agreement=data.get("agreement"),
            runtime_ms=data.get("runtime_ms"),
            error=data.get("error"),
        )

    def csv_row(self) -> list[str]:
        def cell(value: Any) -> str:
            if value is None:
                return ""
            if isinstance(value, str):
                return value
            return json.dumps(value, sort_keys=True)

        return [cell(self.to_dict()[column]) for column in CSV_COLUMNS]

    def __str__(self) -> str:
        status = self.value if self.ok else f"error: {self.error}"
        return f"ResultRecord(route={self.route}, {status})"


def records_to_json(records: Iterable[ResultRecord], extra: dict[str, Any] | None = None) -> str:
    """JSON document {"records": [...], **extra} with sorted keys."""
    document = {"records": [r.to_dict() for r in records]}
    document.update(extra or {})
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def records_to_csv(records: Iterable[ResultRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(record.csv_row())
    return buffer.getvalue()


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_CSV_COLUMNS)
    seed = "" if report.seed is None else str(report.seed)
    for check in report.checks:
        data = check.to_dict()
        writer.writerow(
            [report.suite, seed, data["name"], str(data["passed"]).lower(), json.dumps(data["detail"], sort_keys=True)]
        )
    return buffer.getvalue()


def write_output(text: str, path: Path | str | None = None, stream: TextIO | None = None) -> None:
    """Write to a file, or to the given stream (stdout by default)."""
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        return
    out = stream if stream is not None else sys.stdout
    out.write(text)
    out.flush()


__all__ = [
    "CSV_COLUMNS",
    "REPORT_CSV_COLUMNS",
    "format_value",
    "ResultRecord",
    "records_to_json",
    "records_to_csv",
    "report_to_json",
    "report_to_csv",
    "write_output",
]
