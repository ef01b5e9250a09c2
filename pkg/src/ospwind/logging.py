# SPDX-License-Identifier: MPL-2.0
"""Structured logging for enumeration runs and sweep workers.

Records always go to stderr so stdout stays a clean data stream. A trace id bound in
the parent process is handed to sweep worker processes through ``worker_initializer``
so every line of one ``ospwind verify`` run can be correlated.
"""
from __future__ import annotations

import logging
import os
import sys
import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any

import structlog
from structlog.contextvars import bind_contextvars, clear_contextvars, get_contextvars

__all__ = [
    "bind_context",
    "bind_trace",
    "clear_trace",
    "configure_logging",
    "get_log_level",
    "get_logger",
    "get_trace_id",
    "timed",
    "worker_initializer",
]

_TRACE_ID: ContextVar[str | None] = ContextVar("trace_id", default=None)
_CONFIGURED = False
_LEVEL = logging.INFO


def _resolve_level(level: str | int | None) -> int:
    if level is None:
        level = os.getenv("OSPWIND_LOG_LEVEL", "INFO")
    if isinstance(level, str):
        return getattr(logging, level.upper(), logging.INFO)
    return int(level)


def _renderer() -> Any:
    if os.getenv("OSPWIND_LOG_FORMAT", "json").lower() == "console":
        return structlog.dev.ConsoleRenderer(colors=False)
    return structlog.processors.JSONRenderer(sort_keys=True)


def configure_logging(level: str | int | None = None, force: bool = False) -> None:
    """Configure structlog once per process.

    ``OSPWIND_LOG_LEVEL`` picks the threshold and ``OSPWIND_LOG_FORMAT`` switches
    between JSON lines (default) and a plain console rendering.
    """

    global _CONFIGURED, _LEVEL
    if _CONFIGURED and not force:
        return

    resolved_level = _resolve_level(level)
    logging.basicConfig(level=resolved_level, format="%(message)s", stream=sys.stderr, force=True)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.TimeStamper(fmt="iso", key="timestamp"),
            structlog.stdlib.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            _renderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.make_filtering_bound_logger(resolved_level),
        cache_logger_on_first_use=not force,
    )

    clear_contextvars()
    _TRACE_ID.set(None)
    _LEVEL = resolved_level
    _CONFIGURED = True


def get_logger(name: str | None = None) -> Any:
    """Return a configured structlog logger."""

    configure_logging()
    return structlog.get_logger(name)


def bind_trace(trace_id: str | None = None) -> str:
    """Bind a trace id: explicit value, else ``OSPWIND_TRACE_ID``, else a fresh uuid4."""

    configure_logging()
    resolved = trace_id or os.getenv("OSPWIND_TRACE_ID") or uuid.uuid4().hex
    _TRACE_ID.set(resolved)
    bind_contextvars(trace_id=resolved)
    return resolved


def bind_context(**values: Any) -> dict[str, Any]:
    configure_logging()
    bind_contextvars(**values)
    return get_contextvars()


def get_trace_id() -> str | None:
    return _TRACE_ID.get()


def get_log_level() -> int:
    """Threshold this process logs at; sweep workers inherit it through the pool initializer."""

    configure_logging()
    return _LEVEL


def clear_trace() -> None:
    _TRACE_ID.set(None)
    clear_contextvars()


def worker_initializer(trace_id: str | None, level: str | int | None = None) -> None:
    """Pool initializer: reconfigure logging in a sweep worker and rebind the parent trace."""

    configure_logging(level, force=True)
    bind_trace(trace_id)
    bind_context(worker_pid=os.getpid())


@contextmanager
def timed(logger: Any, event: str, **fields: Any) -> Iterator[dict[str, Any]]:
    """Log ``<event>-complete`` with ``elapsed_ms`` once the block exits.

    The yielded dict is merged into the completion record, so callers can attach
    results (counts, verdicts) computed inside the block. The record is written even
    when the block raises or an enclosing generator is closed early; ``status`` is
    then ``"error"`` or ``"closed"`` instead of ``"ok"``.
    """

    extra: dict[str, Any] = {}
    status = "ok"
    start = time.perf_counter()
    logger.debug(f"{event}-start", **fields)
    try:
        yield extra
    except GeneratorExit:
        status = "closed"
        raise
    except BaseException:
        status = "error"
        raise
    finally:
        elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
        logger.debug(f"{event}-complete", elapsed_ms=elapsed_ms, status=status, **fields, **extra)
