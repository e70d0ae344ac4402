"""End-to-end tests of the dwbc command line."""

import json
import logging

import pytest

from dwbc.__main__ import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main
from dwbc.config import ENV_PREFIX


@pytest.fixture(autouse=True)
def isolated(monkeypatch):
    """Clear the environment overrides and restore root logging handlers."""
    for name in ("DWBC_CONFIG", "DWBC_LOG_LEVEL", "DWBC_BACKEND", "DWBC_DIGITS", "DWBC_SEED"):
        monkeypatch.delenv(name, raising=False)
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        root.removeHandler(handler)
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def _run_json(capsys, *argv):
    code, captured = _run(capsys, *argv)
    return code, json.loads(captured.out)


def _values(document):
    return {record["route"]: record["value"] for record in document["records"]}


class TestPartition:
    """Tests for the partition subcommand."""

    def test_ice_point(self, capsys):
        """Test Z_3 = 7 agrees between both routes."""
        code, document = _run_json(capsys, "partition", "--N", "3")
        assert code == EXIT_OK
        assert document["agree"] is True
        assert _values(document) == {"qism": "7/1", "determinant": "7/1"}
        assert document["config"]["weights"] == {"a": "1", "b": "1", "c": "1"}

    def test_all_routes(self, capsys):
        """Test every route gives the same value."""
        code, document = _run_json(capsys, "partition", "--N", "2", "--weights", "2,1,2", "--route", "all")
        assert code == EXIT_OK
        assert _values(document) == {"qism": "20/1", "dfs": "20/1", "determinant": "20/1"}
        assert document["records"][0]["agreement"] == {"dfs": True, "determinant": True}

    def test_inhomogeneous(self, capsys):
        """Test explicit spectral parameters run on the float backend."""
        code, document = _run_json(
            capsys, "partition", "--N", "2", "--lambda", "1.1,1.25", "--nu", "0,0.1", "--eta", "0.3"
        )
        assert code == EXIT_OK
        assert document["agree"] is True
        assert {record["backend"] for record in document["records"]} == {"float"}

    def test_inhomogeneous_needs_eta(self, capsys):
        code, captured = _run(capsys, "partition", "--N", "2", "--lambda", "1.1,1.25", "--nu", "0,0.1")
        assert code == EXIT_USAGE
        assert "--eta" in captured.err

    def test_oracle_bound(self, capsys):
        """Test a lattice past the oracle bound fails with a recorded error."""
        code, document = _run_json(capsys, "partition", "--N", "13", "--route", "qism")
        assert code == EXIT_FAILURE
        record = document["records"][0]
        assert record["value"] is None
        assert record["error"].startswith("BoundExceededError")

    def test_degenerate_weights(self, capsys):
        """Test Delta = 1 reports the determinant as not applicable."""
        code, document = _run_json(capsys, "partition", "--N", "2", "--weights", "2,1,1")
        assert code == EXIT_OK
        assert document["agree"] is True
        assert _values(document) == {"qism": "5/1", "determinant": None}
        record = next(r for r in document["records"] if r["route"] == "determinant")
        assert record["error"].startswith("not applicable")

    def test_degenerate_weights_without_other_route(self, capsys):
        """Test a run whose only route is not applicable fails."""
        code, document = _run_json(
            capsys, "partition", "--N", "2", "--weights", "1,1,2", "--route", "determinant"
        )
        assert code == EXIT_FAILURE
        assert document["agree"] is False

    def test_csv(self, capsys):
        code, captured = _run(capsys, "partition", "--N", "2", "--format", "csv")
        assert code == EXIT_OK
        lines = captured.out.splitlines()
        assert lines[0] == "query,backend,route,value,agreement,runtime_ms,error"
        assert len(lines) == 3

    def test_reproducible(self, capsys):
        """Test repeated runs print identical output."""
        _, first = _run(capsys, "partition", "--N", "3", "--route", "all")
        _, second = _run(capsys, "partition", "--N", "3", "--route", "all")
        assert first.out == second.out

    def test_timing(self, capsys):
        _, document = _run_json(capsys, "partition", "--N", "2", "--timing")
        assert all(record["runtime_ms"] is not None for record in document["records"])

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "z.json"
        code, captured = _run(capsys, "partition", "--N", "2", "--output", str(path))
        assert code == EXIT_OK
        assert captured.out == ""
        assert _values(json.loads(path.read_text(encoding="utf-8")))["qism"] == "2/1"


class TestRowProb:
    """Tests for the rowprob subcommand."""

    def test_full_table(self, capsys):
        """Test the oracle and the formula give the same table."""
        code, document = _run_json(capsys, "rowprob", "--N", "3", "--s", "1")
        assert code == EXIT_OK
        oracle = [r["value"] for r in document["records"] if r["route"] == "oracle"]
        formula = [r["value"] for r in document["records"] if r["route"] == "formula"]
        assert oracle == formula == ["2/7", "3/7", "2/7"]
        assert document["normalization"] == "1/1"

    def test_single_configuration(self, capsys):
        code, document = _run_json(capsys, "rowprob", "--N", "3", "--s", "1", "--positions", "2")
        assert code == EXIT_OK
        assert _values(document) == {"oracle": "3/7", "formula": "3/7"}
        assert "normalization" not in document

    def test_bad_positions(self, capsys):
        """Test non-increasing positions are a usage error."""
        code, captured = _run(capsys, "rowprob", "--N", "3", "--s", "2", "--positions", "3,1")
        assert code == EXIT_USAGE
        assert "increase" in captured.err


class TestEfp:
    """Tests for the efp subcommand."""

    def test_all_routes(self, capsys):
        """Test every route gives the same value."""
        code, document = _run_json(capsys, "efp", "--N", "3", "--r", "2", "--s", "1")
        assert code == EXIT_OK
        assert set(_values(document).values()) == {"5/7"}
        assert len(document["records"]) == 5

    def test_route_subset(self, capsys):
        code, document = _run_json(capsys, "efp", "--N", "3", "--r", "1", "--s", "2", "--routes", "oracle,row-sum,rep1")
        assert code == EXIT_OK
        assert _values(document) == {"oracle": "0/1", "row-sum": "0/1", "rep1": "0/1"}

    def test_unknown_route(self, capsys):
        code, _ = _run(capsys, "efp", "--N", "3", "--r", "2", "--s", "1", "--routes", "oracle,contour")
        assert code == EXIT_USAGE

    def test_out_of_range(self, capsys):
        code, _ = _run(capsys, "efp", "--N", "3", "--r", "4", "--s", "1")
        assert code == EXIT_USAGE


class TestVerify:
    """Tests for the verify subcommand."""

    def test_sum_identity(self, capsys):
        code, document = _run_json(capsys, "verify", "sum-identity", "--s", "2")
        assert code == EXIT_OK
        assert document["passed"] is True
        assert document["suite"] == "sum-identity"

    def test_identity2(self, capsys):
        code, document = _run_json(capsys, "verify", "identity2", "--s", "2", "--trials", "2", "--seed", "7")
        assert code == EXIT_OK
        assert document["seed"] == 7
        assert len(document["checks"]) == 2

    def test_w_lemma(self, capsys):
        code, _ = _run(capsys, "verify", "w-lemma", "--s", "1", "--trials", "2")
        assert code == EXIT_OK

    def test_cross_check(self, capsys):
        """Test the cross-check suite on the 1x1 lattice."""
        code, document = _run_json(capsys, "verify", "cross-check", "--Nmax", "1")
        assert code == EXIT_OK
        assert document["passed"] is True

    def test_omega(self, capsys):
        code, document = _run_json(capsys, "verify", "omega", "--trials", "2")
        assert code == EXIT_OK
        assert len(document["checks"]) == 2 * 2 + 2

    def test_ab_exchange(self, capsys):
        code, document = _run_json(capsys, "verify", "ab-exchange", "--N", "2", "--seed", "3")
        assert code == EXIT_OK
        assert len(document["checks"]) == 2

    def test_csv_report(self, capsys):
        code, captured = _run(capsys, "verify", "sum-identity", "--s", "1", "--format", "csv")
        assert code == EXIT_OK
        assert captured.out.splitlines()[0] == "suite,seed,name,passed,detail"


class TestConfigErrors:
    """Tests for configuration sources and their errors."""

    def test_missing_config_file(self, capsys, tmp_path):
        """Test a missing config file is a usage error."""
        code, captured = _run(capsys, "partition", "--N", "2", "--config", str(tmp_path / "missing.json"))
        assert code == EXIT_USAGE
        assert "not found" in captured.err

    def test_bad_weights(self, capsys):
        code, captured = _run(capsys, "partition", "--N", "2", "--weights", "1,1")
        assert code == EXIT_USAGE
        assert "three values" in captured.err

    def test_weights_and_angles(self, capsys):
        code, _ = _run(capsys, "partition", "--N", "2", "--weights", "1,1,1", "--angles", "1.2,0.3")
        assert code == EXIT_USAGE

    def test_float_digits(self, capsys):
        code, _ = _run(capsys, "partition", "--N", "2", "--backend", "float", "--digits", "20")
        assert code == EXIT_USAGE

    def test_config_file(self, capsys, tmp_path):
        """Test weights are read from a JSON config file."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"weights": {"a": "2", "b": "1", "c": "2"}}), encoding="utf-8")
        code, document = _run_json(capsys, "partition", "--N", "2", "--config", str(path))
        assert code == EXIT_OK
        assert _values(document)["qism"] == "20/1"

    def test_environment(self, capsys, monkeypatch):
        """Test DWBC_SEED reaches only the seeded suites."""
        monkeypatch.setenv("DWBC_SEED", "5")
        _, document = _run_json(capsys, "verify", "sum-identity", "--s", "1")
        assert document["seed"] is None
        _, document = _run_json(capsys, "verify", "w-lemma", "--s", "1", "--trials", "1")
        assert document["seed"] == 5


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("dwbc v")


def test_help_lists_environment(capsys):
    """Test the help epilog names every environment variable."""
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--help"])
    out = capsys.readouterr().out
    for name in ("CONFIG", "LOG_LEVEL", "BACKEND", "DIGITS", "SEED"):
        assert f"{ENV_PREFIX}{name}" in out


def test_subcommand_required(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2
