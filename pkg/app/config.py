"""
Configuration management for the free-module toolkit.
This module loads environment variables and provides configuration settings for all components.
"""

import os
import logging
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables from .env file
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = DATA_DIR / "logs"
SYSTEM_LOG_PATH = LOGS_DIR / "system_logs"

# Create directories if they don't exist
for directory in [LOGS_DIR, SYSTEM_LOG_PATH]:
    directory.mkdir(parents=True, exist_ok=True)


def _int_setting(name: str, default: int, minimum: int = 0) -> int:
    """Read an integer setting, falling back to the default on bad input."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logging.getLogger("system").warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default
    if value < minimum:
        logging.getLogger("system").warning(f"Ignoring {name}={value} below {minimum}, using {default}")
        return default
    return value


# Logging Configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

# Verification Configuration
DEFAULT_JOBS = _int_setting("DEFAULT_JOBS", 1, minimum=1)

# Submodule search: default bound is max(STRUCTURE_MIN_BOUND, ceil(1 - (n+1)p(0)/n) + 2)
STRUCTURE_MIN_BOUND = _int_setting("STRUCTURE_MIN_BOUND", 8, minimum=1)

# Tensor Configuration
TENSOR_DEGREE_MARGIN = _int_setting("TENSOR_DEGREE_MARGIN", 6, minimum=2)
SPLIT_CHECK_DEGREE = _int_setting("SPLIT_CHECK_DEGREE", 8, minimum=1)

# Output Configuration
JSON_INDENT = _int_setting("JSON_INDENT", 2, minimum=0)
