"""Run ID tracking for log correlation.

Every CLI command and every verification suite runs inside a run context.
The run ID is stamped onto each log record so that the log lines of one
computation can be pulled out of a shared log file.

Run IDs are derived from the command and its resolved configuration, so the
same command with the same configuration and seed always logs under the same
ID. Ad-hoc contexts without a payload fall back to a random UUID4.

Examples:
    Command-scoped context:
        >>> from dwbc.correlation import RunContext
        >>> with RunContext(payload={"command": "efp", "n": 4}) as run_id:
        ...     logger.info("Computing routes")  # run_id in log

    Manual context control:
        >>> set_run_context(derive_run_id({"suite": "identity2", "seed": 7}))
        >>> logger.info("Trial 1")
        >>> clear_run_context()
"""

import hashlib
import json
import logging
import uuid
from contextvars import ContextVar, Token
from typing import Any

_run_context: ContextVar[str | None] = ContextVar("run_id", default=None)


def generate_run_id() -> str:
    """Generate a random run ID.

    Returns:
        Lowercase UUID4 hex string without hyphens (32 characters).
    """
    return uuid.uuid4().hex


def derive_run_id(payload: dict[str, Any]) -> str:
    """Derive a reproducible run ID from a JSON-serializable payload.

    Args:
        payload: Command name and resolved configuration.

    Returns:
        First 16 hex characters of the SHA-256 of the canonical JSON form.

    Examples:
        >>> derive_run_id({"a": 1}) == derive_run_id({"a": 1})
        True
    """
    canonical = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def set_run_context(run_id: str) -> None:
    """Set the run ID for the current context.

    Args:
        run_id: Run ID to set.
    """
    _run_context.set(run_id)


def get_run_context() -> str | None:
    """Get the run ID of the current context.

    Returns:
        Current run ID, or None if not set.
    """
    return _run_context.get()


def clear_run_context() -> None:
    """Clear the run ID of the current context."""
    _run_context.set(None)


class RunContext:
    """Context manager for run ID scope.

    Uses the given run ID, derives one from ``payload``, or generates a random
    one, sets it in the context and restores the previous value on exit.

    Attributes:
        run_id: The run ID for this context.

    Examples:
        >>> with RunContext(payload={"command": "partition", "n": 3}) as run_id:
        ...     assert get_run_context() == run_id
    """

    def __init__(self, run_id: str | None = None, payload: dict[str, Any] | None = None):
        """Initialize run context.

        Args:
            run_id: Explicit run ID. Takes precedence over ``payload``.
            payload: Data to derive a reproducible run ID from.
        """
        if run_id is None:
            run_id = derive_run_id(payload) if payload is not None else generate_run_id()
        self.run_id = run_id
        self._token: Token | None = None

    def __enter__(self) -> str:
        self._token = _run_context.set(self.run_id)
        return self.run_id

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self._token is not None:
            _run_context.reset(self._token)


class RunIdFilter(logging.Filter):
    """Logging filter that injects the run ID into log records.

    Adds a ``run_id`` attribute to each LogRecord; ``"N/A"`` outside any
    run context.
    """

    def filter(self, record: logging.LogRecord) -> bool:
        """Add run ID to log record.

        Args:
            record: Log record to modify.

        Returns:
            True (always allows record through).
        """
        record.run_id = get_run_context() or "N/A"
        return True


__all__ = [
    "generate_run_id",
    "derive_run_id",
    "set_run_context",
    "get_run_context",
    "clear_run_context",
    "RunContext",
    "RunIdFilter",
]
