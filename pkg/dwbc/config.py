"""Run configuration for the dwbc command line.

A run is described by one ``RunConfig``: the vertex weights, the scalar
backend, oracle and budget limits, the random seed and where records go.
Values are resolved in the order CLI flag > ``DWBC_*`` environment variable
> JSON config file > defaults.

Weights come in one of two forms, as strings so nothing passes through a
binary float:

* ``{"a": "1", "b": "1", "c": "1"}``: an exact rational triple;
* ``{"lam": "1.3", "eta": "0.35"}``: angles, a = sin(lam + eta),
  b = sin(lam - eta), c = sin(2 eta); float backend only.

Examples:
    >>> cfg = load_config("config.example.json")
    >>> cfg.backend
    'rational'
    >>> cfg.weights.as_dict()
    {'a': '1', 'b': '1', 'c': '1'}
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .backend import DEFAULT_DIGITS, MIN_FLOAT_DIGITS, ScalarBackend, get_backend
from .logging_config import LoggingConfig
from .model import VertexWeights
from .oracle import DEFAULT_DFS_BOUND, DEFAULT_QISM_BOUND
from .polynomial import DEFAULT_FACTORIAL_BUDGET
from .row_engine import DEFAULT_TERM_BUDGET

# Valid log levels (mirrors Python logging module)
VALID_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}

# Prefix of every environment variable read by DwbcSettings
ENV_PREFIX = "DWBC_"

RATIONAL_WEIGHT_KEYS = ("a", "b", "c")
ANGLE_WEIGHT_KEYS = ("lam", "eta")


class WeightSpec(BaseModel):
    """Vertex weights as given by the user.

    Attributes:
        a, b, c: Rational triple as "p/q" or integer strings.
        lam, eta: Decimal angle strings.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: str | None = None
    b: str | None = None
    c: str | None = None
    lam: str | None = None
    eta: str | None = None

    @field_validator("a", "b", "c", "lam", "eta", mode="before")
    @classmethod
    def _as_string(cls, value: Any) -> Any:
        if isinstance(value, float):
            raise ValueError(f"binary float {value!r} refused; quote the number")
        if isinstance(value, int) and not isinstance(value, bool):
            return str(value)
        if isinstance(value, str):
            return _normalize_string(value)
        return value

    @model_validator(mode="after")
    def _one_form(self) -> "WeightSpec":
        triple = [getattr(self, key) for key in RATIONAL_WEIGHT_KEYS]
        angles = [getattr(self, key) for key in ANGLE_WEIGHT_KEYS]
        has_triple = any(v is not None for v in triple)
        has_angles = any(v is not None for v in angles)
        if has_triple == has_angles:
            raise ValueError("weights need exactly one of (a, b, c) or (lam, eta)")
        if has_triple:
            if not all(v is not None for v in triple):
                raise ValueError("rational weights need all of a, b, c")
            for key, value in zip(RATIONAL_WEIGHT_KEYS, triple):
                try:
                    Fraction(value)
                except (ValueError, ZeroDivisionError) as e:
                    raise ValueError(f"weights.{key} = {value!r} is not a rational") from e
        elif not all(v is not None for v in angles):
            raise ValueError("angle weights need both lam and eta")
        return self

    @property
    def is_rational(self) -> bool:
        return self.a is not None

    def as_dict(self) -> dict[str, str]:
        keys = RATIONAL_WEIGHT_KEYS if self.is_rational else ANGLE_WEIGHT_KEYS
        return {key: getattr(self, key) for key in keys}


class RunConfig(BaseModel):
    """Everything a command needs besides its query arguments.

    Attributes:
        weights: Weight specification (default: ice point a = b = c = 1).
        backend: "rational" or "float".
        digits: Decimal digits of the float backend.
        qism_bound: Largest N for the monodromy oracle.
        dfs_bound: Largest N for configuration enumeration.
        factorial_budget: Largest s for s!-term antisymmetrizations.
        term_budget: Largest number of terms of the inhomogeneous sum.
        seed: Seed for random parameters and sample points.
        output_format: "json" or "csv".
        output_path: File for records; stdout when None.
        record_timing: Fill runtime_ms (records are then not reproducible).
        log_level: Root log level.
        log_format: "text" or "json".
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    weights: WeightSpec = Field(default_factory=lambda: WeightSpec(a="1", b="1", c="1"))
    backend: Literal["rational", "float"] = "rational"
    digits: int = DEFAULT_DIGITS
    qism_bound: int = Field(default=DEFAULT_QISM_BOUND, ge=1)
    dfs_bound: int = Field(default=DEFAULT_DFS_BOUND, ge=1)
    factorial_budget: int = Field(default=DEFAULT_FACTORIAL_BUDGET, ge=1)
    term_budget: int = Field(default=DEFAULT_TERM_BUDGET, ge=1)
    seed: int = 0
    output_format: Literal["json", "csv"] = "json"
    output_path: str | None = None
    record_timing: bool = False
    log_level: str = "WARNING"
    log_format: Literal["text", "json"] = "text"

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        level = value.upper()
        _validate_log_level(level)
        return level

    @model_validator(mode="after")
    def _check_backend(self) -> "RunConfig":
        if self.backend == "rational" and not self.weights.is_rational:
            raise ValueError("rational backend needs a rational weight triple (a, b, c)")
        if self.backend == "float" and self.digits < MIN_FLOAT_DIGITS:
            raise ValueError(f"float backend needs digits >= {MIN_FLOAT_DIGITS}, got {self.digits}")
        return self

    def scalar_backend(self) -> ScalarBackend:
        return get_backend(self.backend, self.digits)

    def float_backend(self) -> ScalarBackend:
        """The float backend at the configured precision, whatever ``backend`` says."""
        return get_backend("float", max(self.digits, MIN_FLOAT_DIGITS))

    def vertex_weights(self) -> VertexWeights:
        """Weights on the configured backend."""
        w = self.weights
        if w.is_rational:
            if self.backend == "rational":
                return VertexWeights.rational(w.a, w.b, w.c)
            backend = self.scalar_backend()
            return VertexWeights(backend.convert(w.a), backend.convert(w.b), backend.convert(w.c), backend)
        return VertexWeights.from_angles(w.lam, w.eta, self.scalar_backend())

    def logging_config(self) -> LoggingConfig:
        return LoggingConfig(level=self.log_level, format=self.log_format)

    def describe(self) -> dict[str, Any]:
        """Resolved configuration for records and run IDs (output settings excluded)."""
        return {
            "weights": self.weights.as_dict(),
            "backend": self.backend,
            "digits": self.digits if self.backend == "float" else None,
            "seed": self.seed,
        }


class DwbcSettings(BaseSettings):
    """``DWBC_*`` environment variables.

    Attributes:
        config: Default config file path (DWBC_CONFIG).
        log_level: Overrides the config file log level (DWBC_LOG_LEVEL).
        backend: Overrides the backend (DWBC_BACKEND).
        digits: Overrides the float digits (DWBC_DIGITS).
        seed: Overrides the seed (DWBC_SEED).
    """

    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, extra="ignore")

    config: str | None = None
    log_level: str | None = None
    backend: str | None = None
    digits: int | None = None
    seed: int | None = None

    def overrides(self) -> dict[str, Any]:
        fields = ("log_level", "backend", "digits", "seed")
        return {name: getattr(self, name) for name in fields if getattr(self, name) is not None}


def _normalize_string(value: str) -> str:
    """Normalize string by stripping whitespace.

    Args:
        value: String to normalize.

    Returns:
        Normalized string with leading/trailing whitespace removed.
    """
    return value.strip()


def _validate_log_level(level: str) -> None:
    """Validate log level is one of the accepted values.

    Raises:
        ValueError: If log level is not valid.
    """
    if level not in VALID_LOG_LEVELS:
        valid_str = ", ".join(sorted(VALID_LOG_LEVELS))
        raise ValueError(f"Invalid log_level: '{level}'. Expected one of: {valid_str}")


def _load_weights_config(data: dict) -> dict[str, Any] | None:
    """Extract the weights section.

    Raises:
        ValueError: If the section is not a dictionary.
    """
    if "weights" not in data:
        return None
    weights_data = data["weights"]
    if not isinstance(weights_data, dict):
        raise ValueError("Section 'weights' must be a dictionary")
    return dict(weights_data)


def _load_limits_config(data: dict) -> dict[str, Any]:
    """Extract the optional limits section (oracle bounds and budgets).

    Raises:
        ValueError: If the section is not a dictionary or a limit is not an integer.
    """
    if "limits" not in data:
        return {}
    limits_data = data["limits"]
    if not isinstance(limits_data, dict):
        raise ValueError("Section 'limits' must be a dictionary")
    limits = {}
    for name in ("qism_bound", "dfs_bound", "factorial_budget", "term_budget"):
        if name in limits_data:
            value = limits_data[name]
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"Field 'limits.{name}' must be an integer")
            limits[name] = value
    return limits


def _load_output_config(data: dict) -> dict[str, Any]:
    """Extract the optional output section.

    Raises:
        ValueError: If the section is not a dictionary.
    """
    if "output" not in data:
        return {}
    output_data = data["output"]
    if not isinstance(output_data, dict):
        raise ValueError("Section 'output' must be a dictionary")
    output: dict[str, Any] = {}
    if "format" in output_data:
        output["output_format"] = _normalize_string(str(output_data["format"])).lower()
    if output_data.get("path") is not None:
        output["output_path"] = _normalize_string(str(output_data["path"]))
    if "record_timing" in output_data:
        output["record_timing"] = bool(output_data["record_timing"])
    return output


def build_config(values: dict[str, Any]) -> RunConfig:
    """Validate a flat dict of RunConfig fields.

    Raises:
        ValueError: With the offending field when validation fails.
    """
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise ValueError(f"Invalid configuration: {problems}") from e


def _read_config_values(path: Path | str) -> dict[str, Any]:
    config_path = Path(path) if isinstance(path, str) else path

    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    try:
        with config_path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in configuration file: {e}") from e

    if not isinstance(data, dict):
        raise ValueError("Configuration file must contain a JSON object")

    values: dict[str, Any] = {}
    weights = _load_weights_config(data)
    if weights is not None:
        values["weights"] = weights
    values.update(_load_limits_config(data))
    values.update(_load_output_config(data))

    for name in ("backend", "digits", "seed", "log_level", "log_format"):
        if name in data:
            values[name] = data[name]
    if isinstance(values.get("backend"), str):
        values["backend"] = _normalize_string(values["backend"]).lower()
    if "log_level" in values and not isinstance(values["log_level"], str):
        raise ValueError("Field 'log_level' must be a string")
    return values


def load_config(path: Path | str) -> RunConfig:
    """Load and validate a run configuration from a JSON file.

    Args:
        path: Path to JSON configuration file (string or Path object).

    Returns:
        Validated RunConfig.

    Raises:
        FileNotFoundError: If configuration file does not exist.
        ValueError: If configuration is invalid or contains malformed JSON.
    """
    return build_config(_read_config_values(path))


def resolve_config(
    path: Path | str | None = None,
    overrides: dict[str, Any] | None = None,
    settings: DwbcSettings | None = None,
) -> RunConfig:
    """Merge defaults, config file, environment and CLI overrides.

    Args:
        path: Config file; falls back to DWBC_CONFIG, then to no file.
        overrides: CLI values; None entries are ignored.
        settings: Environment settings (read from os.environ when omitted).

    Returns:
        Validated RunConfig.

    Raises:
        FileNotFoundError: If the named config file does not exist.
        ValueError: If the merged configuration is invalid.
    """
    settings = settings if settings is not None else DwbcSettings()
    path = path if path is not None else settings.config
    values: dict[str, Any] = _read_config_values(path) if path else {}
    values.update(settings.overrides())
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_config(values)


__all__ = [
    "VALID_LOG_LEVELS",
    "ENV_PREFIX",
    "WeightSpec",
    "RunConfig",
    "DwbcSettings",
    "build_config",
    "load_config",
    "resolve_config",
]
