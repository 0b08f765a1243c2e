"""Logging configuration."""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from triagetree.config import settings

_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
    level: Optional[str] = None, json_format: Optional[bool] = None
) -> logging.Logger:
    """
    Configure root logging.

    Log records go to stderr so that command output on stdout stays clean.

    Args:
        level: Level name, defaults to settings.log_level
        json_format: Emit JSON lines, defaults to settings.log_json

    Returns:
        The configured root logger
    """
    level_name = (level or settings.log_level).upper()
    use_json = settings.log_json if json_format is None else json_format

    logger = logging.getLogger()
    logger.setLevel(getattr(logging, level_name))

    # Remove existing handlers
    logger.handlers = []

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(getattr(logging, level_name))

    if use_json:
        formatter: logging.Formatter = jsonlogger.JsonFormatter(
            _FORMAT, datefmt=_DATEFMT
        )
    else:
        formatter = logging.Formatter(_FORMAT, datefmt=_DATEFMT)

    handler.setFormatter(formatter)
    logger.addHandler(handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module.

    Args:
        name: Name of the logger (typically __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)
