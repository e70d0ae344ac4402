"""Tests for run configuration loading."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from dwbc.backend import FloatBackend
from dwbc.config import (
    ENV_PREFIX,
    DwbcSettings,
    RunConfig,
    WeightSpec,
    build_config,
    load_config,
    resolve_config,
)


def _write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def clean_env(monkeypatch):
    """Clear every environment override."""
    for name in ("DWBC_CONFIG", "DWBC_LOG_LEVEL", "DWBC_BACKEND", "DWBC_DIGITS", "DWBC_SEED"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestWeightSpec:
    """Tests for the weights section."""

    def test_rational_triple(self):
        spec = WeightSpec(a="2", b=" 1/2 ", c=3)
        assert spec.is_rational
        assert spec.as_dict() == {"a": "2", "b": "1/2", "c": "3"}

    def test_angles(self):
        spec = WeightSpec(lam="1.3", eta="0.35")
        assert not spec.is_rational
        assert spec.as_dict() == {"lam": "1.3", "eta": "0.35"}

    def test_binary_float_refused(self):
        """Test float literals are refused as inexact."""
        with pytest.raises(ValueError, match="binary float"):
            WeightSpec(a=1.5, b="1", c="1")

    @pytest.mark.parametrize(
        "data",
        [
            {},
            {"a": "1", "b": "1"},
            {"lam": "1.2"},
            {"a": "1", "b": "1", "c": "1", "eta": "0.3"},
            {"a": "one", "b": "1", "c": "1"},
            {"a": "1/0", "b": "1", "c": "1"},
        ],
    )
    def test_invalid(self, data):
        """Test incomplete, mixed and malformed weights."""
        with pytest.raises(ValueError):
            WeightSpec(**data)


class TestRunConfig:
    """Tests for RunConfig validation and helpers."""

    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.backend == "rational"
        assert cfg.weights.as_dict() == {"a": "1", "b": "1", "c": "1"}
        assert cfg.log_level == "WARNING"
        assert cfg.record_timing is False

    def test_exact_vertex_weights(self):
        weights = RunConfig(weights=WeightSpec(a="2", b="1/2", c="3")).vertex_weights()
        assert weights.triple == (Fraction(2), Fraction(1, 2), Fraction(3))
        assert weights.is_exact

    def test_angle_vertex_weights(self):
        cfg = RunConfig(weights=WeightSpec(lam="1.2", eta="0.3"), backend="float", digits=40)
        weights = cfg.vertex_weights()
        assert weights.backend == FloatBackend(40)
        assert weights.lam is not None

    def test_rational_backend_needs_triple(self):
        with pytest.raises(ValueError):
            RunConfig(weights=WeightSpec(lam="1.2", eta="0.3"))

    def test_float_backend_needs_digits(self):
        """Test the float backend needs at least the minimum digits."""
        with pytest.raises(ValueError):
            RunConfig(backend="float", digits=20)

    def test_log_level_uppercased(self):
        assert RunConfig(log_level="debug").log_level == "DEBUG"

    def test_describe(self):
        assert RunConfig(seed=4).describe() == {
            "weights": {"a": "1", "b": "1", "c": "1"},
            "backend": "rational",
            "digits": None,
            "seed": 4,
        }

    def test_logging_config(self):
        logging_config = RunConfig(log_level="INFO", log_format="json").logging_config()
        assert logging_config.level == "INFO"
        assert logging_config.format == "json"

    def test_float_backend_minimum(self):
        assert RunConfig(digits=10).float_backend().digits == 30


class TestBuildConfig:
    """Tests for error messages of build_config."""

    def test_reports_field(self):
        with pytest.raises(ValueError, match="Invalid configuration: .*log_level"):
            build_config({"log_level": "VERBOSE"})

    def test_unknown_field(self):
        with pytest.raises(ValueError, match="Invalid configuration"):
            build_config({"colour": "blue"})


class TestLoadConfig:
    """Tests for reading config files."""

    def test_full_file(self, tmp_path):
        """Test every section of a complete file."""
        path = _write_config(
            tmp_path,
            {
                "weights": {"a": "2", "b": "1", "c": "2"},
                "backend": " Rational ",
                "seed": 9,
                "limits": {"qism_bound": 8, "term_budget": 1000},
                "output": {"format": "CSV", "path": "out.csv", "record_timing": True},
                "log_level": "info",
            },
        )
        cfg = load_config(path)
        assert cfg.weights.as_dict() == {"a": "2", "b": "1", "c": "2"}
        assert cfg.backend == "rational"
        assert cfg.seed == 9
        assert cfg.qism_bound == 8
        assert cfg.term_budget == 1000
        assert cfg.output_format == "csv"
        assert cfg.output_path == "out.csv"
        assert cfg.record_timing is True
        assert cfg.log_level == "INFO"

    def test_string_path(self, tmp_path):
        path = _write_config(tmp_path, {"seed": 1})
        assert load_config(str(path)).seed == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "missing.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValueError, match="Invalid JSON"):
            load_config(path)

    def test_not_an_object(self, tmp_path):
        path = _write_config(tmp_path, [1, 2, 3])
        with pytest.raises(ValueError, match="JSON object"):
            load_config(path)

    @pytest.mark.parametrize("section", ["weights", "limits", "output"])
    def test_section_must_be_dict(self, tmp_path, section):
        path = _write_config(tmp_path, {section: "nope"})
        with pytest.raises(ValueError, match=f"Section '{section}'"):
            load_config(path)

    def test_limit_must_be_integer(self, tmp_path):
        path = _write_config(tmp_path, {"limits": {"dfs_bound": "6"}})
        with pytest.raises(ValueError, match="limits.dfs_bound"):
            load_config(path)

    def test_float_weight_in_file(self, tmp_path):
        path = _write_config(tmp_path, {"weights": {"a": 1.5, "b": "1", "c": "1"}})
        with pytest.raises(ValueError, match="Invalid configuration"):
            load_config(path)

    def test_example_config(self):
        """Test the shipped example config loads."""
        cfg = load_config(Path(__file__).parent.parent / "config.example.json")
        assert cfg.backend == "rational"
        assert cfg.weights.as_dict() == {"a": "1", "b": "1", "c": "1"}


class TestResolveConfig:
    """Tests for merging file, environment and arguments."""

    def test_defaults_without_file(self, clean_env):
        assert resolve_config() == RunConfig()

    def test_precedence(self, tmp_path, clean_env):
        """Test arguments beat the environment, which beats the file."""
        path = _write_config(tmp_path, {"seed": 1, "log_level": "ERROR", "digits": 40})
        clean_env.setenv("DWBC_SEED", "2")
        clean_env.setenv("DWBC_LOG_LEVEL", "INFO")
        cfg = resolve_config(path, {"seed": 3, "backend": None})
        assert cfg.seed == 3
        assert cfg.log_level == "INFO"
        assert cfg.digits == 40
        assert cfg.backend == "rational"

    def test_config_from_environment(self, tmp_path, clean_env):
        """Test DWBC_CONFIG names the default file."""
        path = _write_config(tmp_path, {"seed": 11})
        clean_env.setenv("DWBC_CONFIG", str(path))
        assert resolve_config().seed == 11

    def test_explicit_settings(self, clean_env):
        settings = DwbcSettings(backend="float", digits=35)
        cfg = resolve_config(None, {"weights": {"lam": "1.2", "eta": "0.3"}}, settings)
        assert cfg.backend == "float"
        assert cfg.digits == 35

    def test_settings_overrides_skip_unset(self, clean_env):
        clean_env.setenv("DWBC_DIGITS", "60")
        assert DwbcSettings().overrides() == {"digits": 60}

    def test_every_setting_reads_the_prefix(self, clean_env):
        """Test DwbcSettings reads prefixed variables."""
        assert DwbcSettings.model_config["env_prefix"] == ENV_PREFIX
        clean_env.setenv(f"{ENV_PREFIX}BACKEND", "float")
        clean_env.setenv(f"{ENV_PREFIX}SEED", "4")
        settings = DwbcSettings()
        assert settings.backend == "float"
        assert settings.seed == 4
