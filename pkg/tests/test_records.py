"""Tests for result records and their serialization."""

import csv
import io
import json
from fractions import Fraction

from dwbc.backend import FloatBackend
from dwbc.records import (
    CSV_COLUMNS,
    ResultRecord,
    format_value,
    records_to_csv,
    records_to_json,
    report_to_csv,
    report_to_json,
    write_output,
)
from dwbc.verifier import VerificationReport


def _make_record(**overrides):
    fields = {
        "query": {"command": "partition", "n": 3},
        "backend": "rational",
        "route": "qism",
        "value": "7/1",
    }
    fields.update(overrides)
    return ResultRecord(**fields)


class TestFormatValue:
    """Tests for value formatting."""

    def test_fraction(self):
        assert format_value(Fraction(2, 7)) == "2/7"
        assert format_value(Fraction(-3, 4)) == "-3/4"

    def test_integers_keep_denominator(self):
        """Test integers print as n/1."""
        assert format_value(Fraction(42)) == "42/1"
        assert format_value(7) == "7/1"

    def test_float_uses_backend(self):
        backend = FloatBackend(30)
        value = backend.convert("1/3")
        assert format_value(value, backend) == backend.format(value)
        assert format_value(value, backend).startswith("0.3333333333")


class TestResultRecord:
    """Tests for ResultRecord."""

    def test_ok(self):
        assert _make_record().ok
        assert not _make_record(value=None, error="BoundExceededError: N=13").ok

    def test_to_json_sorted(self):
        """Test keys are sorted."""
        data = json.loads(_make_record().to_json())
        assert list(data) == sorted(data)
        assert data["value"] == "7/1"
        assert data["runtime_ms"] is None

    def test_from_dict(self):
        record = _make_record(agreement={"dfs": True})
        assert ResultRecord.from_dict(json.loads(record.to_json())) == record

    def test_csv_row(self):
        row = _make_record(agreement={"dfs": True}).csv_row()
        assert dict(zip(CSV_COLUMNS, row)) == {
            "query": '{"command": "partition", "n": 3}',
            "backend": "rational",
            "route": "qism",
            "value": "7/1",
            "agreement": '{"dfs": true}',
            "runtime_ms": "",
            "error": "",
        }

    def test_str(self):
        assert str(_make_record()) == "ResultRecord(route=qism, 7/1)"
        assert "error: boom" in str(_make_record(value=None, error="boom"))


class TestDocuments:
    """Tests for JSON and CSV documents."""

    def test_records_to_json(self):
        text = records_to_json([_make_record()], {"agree": True})
        assert text.endswith("\n")
        data = json.loads(text)
        assert data["agree"] is True
        assert data["records"][0]["route"] == "qism"

    def test_records_to_json_is_reproducible(self):
        """Test equal records give identical text."""
        records = [_make_record(), _make_record(route="determinant")]
        assert records_to_json(records) == records_to_json(list(records))

    def test_records_to_csv(self):
        text = records_to_csv([_make_record(), _make_record(route="dfs")])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == list(CSV_COLUMNS)
        assert [row[2] for row in rows[1:]] == ["qism", "dfs"]

    def test_report_to_json(self):
        report = VerificationReport("identity1", seed=2)
        report.add("identity1 s=1 trial=0", True, lhs=Fraction(1))
        data = json.loads(report_to_json(report))
        assert data["passed"] is True
        assert data["checks"][0]["detail"] == {"lhs": "1"}

    def test_report_to_csv(self):
        report = VerificationReport("sum-identity")
        report.add("sum-identity s=2", False, degree=8)
        rows = list(csv.reader(io.StringIO(report_to_csv(report))))
        assert rows[1] == ["sum-identity", "", "sum-identity s=2", "false", '{"degree": 8}']


class TestWriteOutput:
    """Tests for write_output."""

    def test_stream(self):
        stream = io.StringIO()
        write_output("text\n", stream=stream)
        assert stream.getvalue() == "text\n"

    def test_file(self, tmp_path):
        path = tmp_path / "records.json"
        write_output("{}\n", path)
        assert path.read_text(encoding="utf-8") == "{}\n"

    def test_stdout(self, capsys):
        """Test output goes to stdout without a path."""
        write_output("hello\n")
        assert capsys.readouterr().out == "hello\n"
