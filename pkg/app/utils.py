"""
Utility functions shared by the engine modules and the command line.
"""

import logging
import json
import time
import functools
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from app.config import SYSTEM_LOG_PATH, LOG_LEVEL, JSON_INDENT

# Set up logging
def setup_logger(name: str, log_file: Path, level: str = LOG_LEVEL) -> logging.Logger:
    """Set up a logger with file and console handlers."""
    log_level = getattr(logging, level.upper(), logging.WARNING)
    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    # Re-imports must not stack handlers
    if logger.handlers:
        return logger

    # File handler for persistent logging
    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(log_level)
    file_formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    file_handler.setFormatter(file_formatter)

    # Console handler on stderr; stdout carries JSON only
    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_formatter = logging.Formatter('%(levelname)s: %(message)s')
    console_handler.setFormatter(console_formatter)

    # Add handlers
    logger.addHandler(file_handler)
    logger.addHandler(console_handler)

    return logger

# Set up system logger
system_logger = setup_logger('system', SYSTEM_LOG_PATH / f"system_{datetime.now().strftime('%Y%m%d')}.log")

# Utility function for timing operations
def time_operation(func):
    """Decorator to time function execution."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.time()
        result = func(*args, **kwargs)
        end_time = time.time()
        system_logger.debug(f"Function {func.__name__} took {end_time - start_time:.4f} seconds to execute")
        return result
    return wrapper

def format_rational(value: Fraction) -> str:
    """Render an exact rational as "a" or "a/b"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def dump_json(payload: Dict[str, Any], pretty: bool = False, indent: Optional[int] = None) -> str:
    """
    Serialize a report payload deterministically.

    Keys are sorted so that output is byte-identical for identical input.
    """
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=indent if indent is not None else JSON_INDENT)
    return json.dumps(payload, sort_keys=True)
