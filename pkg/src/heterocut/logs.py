"""Logging setup: stdlib loggers rendered through rich."""

from __future__ import annotations
import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "heterocut"


def configure_logging(level: str = "info", console: Console | None = None) -> logging.Logger:
    """
    Install a RichHandler on the package logger.

    Safe to call more than once; the previous rich handler is replaced.

    Args:
        level: One of debug, info, warning, error
        console: Console to render to (defaults to stderr)

    Returns:
        The configured package logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False
    return logger
