"""Structured logging configuration for the DWBC toolkit.

This module provides logging configuration with structured output (JSON or
text), run ID tracking and per-component verbosity. Console output always goes
to stderr: stdout is reserved for the records the CLI emits.

Examples:
    Interactive setup with text format:
        >>> from dwbc.logging_config import LoggingConfig, setup_logging
        >>> setup_logging(LoggingConfig(level="DEBUG", format="text"))
        >>> logger = get_logger(__name__)
        >>> logger.debug("Residue in z1 extracted")

    Batch verification writing JSON lines to a file:
        >>> config = LoggingConfig(
        ...     level="INFO",
        ...     format="json",
        ...     output="file",
        ...     file_path="/var/log/dwbc/verify.log",
        ...     component_levels={"residue": "DEBUG"}
        ... )
        >>> setup_logging(config)
"""

import json
import logging
import logging.handlers
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .correlation import RunIdFilter


@dataclass
class LoggingConfig:
    """Configuration for the toolkit logging system.

    Attributes:
        level: Global log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        format: Output format ("json" or "text").
        output: Output destination ("console" or "file").
        file_path: Path to log file (required if output="file").
        max_bytes: Maximum log file size before rotation (default 10MB).
        backup_count: Number of backup files to keep (default 5).
        component_levels: Per-module log levels (e.g., {"residue": "DEBUG"}).

    Examples:
        >>> config = LoggingConfig(level="INFO", format="json")
    """

    level: str = "WARNING"
    format: str = "text"  # or "json"
    output: str = "console"  # or "file"
    file_path: str | None = None
    max_bytes: int = 10_485_760  # 10MB
    backup_count: int = 5
    component_levels: dict[str, str] = field(default_factory=dict)


def _component(name: str) -> str:
    # "dwbc.residue" -> "residue"
    return name.split(".")[-1] if "." in name else name


def _timestamp(record: logging.LogRecord) -> str:
    return datetime.fromtimestamp(record.created, tz=timezone.utc).strftime("%Y-%m-%d %H:%M:%S")


class JSONFormatter(logging.Formatter):
    """Formatter that outputs logs as single-line JSON.

    Includes standard fields: timestamp, level, logger, message, run_id,
    component, service.
    """

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON.

        Args:
            record: Log record to format.

        Returns:
            Single-line JSON string.
        """
        log_data = {
            "timestamp": _timestamp(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "run_id": getattr(record, "run_id", "N/A"),
            "component": _component(record.name),
            "service": "dwbc",
        }

        if record.levelno == logging.DEBUG:
            log_data["file"] = record.filename
            log_data["line"] = record.lineno
            log_data["function"] = record.funcName

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data)


class TextFormatter(logging.Formatter):
    """Formatter that outputs logs as human-readable text.

    Format: timestamp LEVEL [component] [run_id=ID] message
    """

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as text.

        Args:
            record: Log record to format.

        Returns:
            Formatted text string.
        """
        run_id = getattr(record, "run_id", "N/A")
        message = (
            f"{_timestamp(record)} {record.levelname} [{_component(record.name)}] "
            f"[run_id={run_id}] {record.getMessage()}"
        )

        if record.levelno == logging.DEBUG:
            message += f" ({record.filename}:{record.lineno})"

        if record.exc_info:
            message += "\n" + self.formatException(record.exc_info)

        return message


def setup_logging(config: LoggingConfig) -> None:
    """Configure Python logging with structured output.

    Replaces the root handlers with one stderr or rotating-file handler
    carrying the RunIdFilter.

    Args:
        config: Logging configuration.

    Raises:
        ValueError: If output="file" but file_path not provided, or a level
            name is unknown.
    """
    if config.output == "file" and not config.file_path:
        raise ValueError("file_path required when output='file'")

    level = getattr(logging, config.level.upper(), None)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level: {config.level}")

    formatter: logging.Formatter = JSONFormatter() if config.format == "json" else TextFormatter()

    handler: logging.Handler
    if config.output == "console":
        handler = logging.StreamHandler()  # stderr
    else:
        assert config.file_path is not None
        handler = logging.handlers.RotatingFileHandler(
            config.file_path,
            maxBytes=config.max_bytes,
            backupCount=config.backup_count,
        )
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(formatter)
    handler.addFilter(RunIdFilter())

    root_logger = logging.getLogger()
    for existing in root_logger.handlers[:]:
        root_logger.removeHandler(existing)
    root_logger.addHandler(handler)
    root_logger.setLevel(level)

    for component, component_level in config.component_levels.items():
        logger_name = component if component.startswith("dwbc") else f"dwbc.{component}"
        logging.getLogger(logger_name).setLevel(getattr(logging, component_level.upper()))


def get_logger(name: str) -> logging.Logger:
    """Get logger with standard configuration.

    Args:
        name: Logger name (typically __name__).

    Returns:
        Logger inheriting the root configuration.
    """
    return logging.getLogger(name)


__all__ = [
    "LoggingConfig",
    "setup_logging",
    "get_logger",
    "JSONFormatter",
    "TextFormatter",
]
