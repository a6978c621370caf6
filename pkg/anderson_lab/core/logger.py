"""Logging configuration.

Logs go to standard error; standard output is reserved for JSON reports.
"""
import logging
import sys
from typing import Optional

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_configured = False


def setup_logging(level: Optional[str] = None) -> None:
    """
    Configure the root ``anderson_lab`` logger once.

    Args:
        level: Level name such as "DEBUG"; defaults to the configured level
    """
    global _configured

    if level is None:
        from anderson_lab.core.config import settings
        level = settings.log_level

    logger = logging.getLogger("anderson_lab")
    logger.setLevel(getattr(logging, str(level).upper(), logging.WARNING))

    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        logger.addHandler(handler)
        logger.propagate = False
        _configured = True


def get_logger(name: str) -> logging.Logger:
    """Return a logger under the ``anderson_lab`` namespace."""
    if not name.startswith("anderson_lab"):
        name = f"anderson_lab.{name}"
    return logging.getLogger(name)
