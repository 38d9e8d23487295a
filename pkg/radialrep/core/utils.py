"""
Run-level helpers: logging, configuration files and run directories.
"""

import datetime
import json
import logging
import os
from typing import Any, Callable, Dict, Optional, TextIO, Tuple

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "common_configs", "default.yaml")

FILE_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
CONSOLE_LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

Loader = Callable[[TextIO], Any]
Dumper = Callable[[Any, TextIO], None]

_FORMATS: Dict[str, Tuple[Loader, Dumper]] = {
    ".yaml": (yaml.safe_load, lambda data, f: yaml.safe_dump(data, f, default_flow_style=False, sort_keys=True)),
    ".yml": (yaml.safe_load, lambda data, f: yaml.safe_dump(data, f, default_flow_style=False, sort_keys=True)),
    ".json": (json.load, lambda data, f: json.dump(data, f, indent=2, sort_keys=True)),
}


def _timestamp() -> str:
    return datetime.datetime.now().strftime("%Y%m%d_%H%M%S")


def _format_for(path: str) -> Tuple[Loader, Dumper]:
    fmt = _FORMATS.get(os.path.splitext(path)[1].lower())
    if fmt is None:
        raise ValueError(f"Unsupported file format: {path} (expected one of {', '.join(sorted(_FORMATS))})")
    return fmt


def setup_logging(
    log_dir: str,
    log_level: int = logging.INFO,
    console_level: int = logging.INFO,
    filename: Optional[str] = None
) -> logging.Logger:
    """
    Send log records of a verification run to `log_dir` and to the console.

    Handlers installed by an earlier call are replaced, so repeated runs in one
    process do not write to stale log files.

    Args:
        log_dir: Directory for the log file (created if missing)
        log_level: Level of the file handler
        console_level: Level of the console handler
        filename: Log file name (default: radialrep_<timestamp>.log)

    Returns:
        The root logger
    """
    os.makedirs(log_dir, exist_ok=True)
    root_logger = logging.getLogger()
    root_logger.setLevel(min(log_level, console_level))
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        if isinstance(handler, logging.FileHandler):
            handler.close()

    handlers = [
        (logging.FileHandler(os.path.join(log_dir, filename or f"radialrep_{_timestamp()}.log"), encoding="utf-8"),
         log_level, FILE_LOG_FORMAT),
        (logging.StreamHandler(), console_level, CONSOLE_LOG_FORMAT),
    ]
    for handler, level, fmt in handlers:
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(fmt))
        root_logger.addHandler(handler)
    return root_logger


def load_config(config_path: str) -> Any:
    """
    Read a YAML or JSON file (configuration, problem or suite), chosen by extension.

    An empty file gives an empty dict.
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Config file not found: {config_path}")
    loader, _ = _format_for(config_path)
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = loader(f)
    except Exception as e:
        logger.error(f"Error loading {config_path}: {str(e)}")
        raise
    return {} if data is None else data


def load_default_config() -> Dict[str, Any]:
    return load_config(DEFAULT_CONFIG_PATH)


def merge_config(base: Dict[str, Any], override: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Recursive dict merge; values in `override` win."""
    merged = dict(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def save_config(config: Dict[str, Any], output_path: str) -> None:
    """Write the effective configuration next to the reports it produced."""
    _, dumper = _format_for(output_path)
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        dumper(config, f)
    logger.info(f"Configuration saved to {output_path}")


def create_run_directory(base_dir: str, run_prefix: str = "run") -> str:
    """
    Create `<base_dir>/<run_prefix>_<timestamp>`.

    Two runs started within the same second get `_1`, `_2`, ... suffixes.
    """
    stem = os.path.join(base_dir, f"{run_prefix}_{_timestamp()}")
    run_dir, n = stem, 0
    while os.path.exists(run_dir):
        n += 1
        run_dir = f"{stem}_{n}"
    os.makedirs(run_dir)
    logger.info(f"Created run directory: {run_dir}")
    return run_dir
