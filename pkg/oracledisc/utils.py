"""
Utility functions for the oracle discrimination toolkit.
Handles file output, logging setup, argument parsing and console formatting.
"""

import json
import logging
from pathlib import Path
from typing import Any, List, Optional, Tuple

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel


# Reports go to stdout; everything human-facing goes to stderr.
console = Console(stderr=True)


def setup_logging(level: str = "WARNING", log_file: Optional[Path] = None) -> logging.Logger:
    """
    Configure the package logger.

    Args:
        level: Logging level name
        log_file: Optional file receiving a plain-text copy of the log

    Returns:
        The `oracledisc` logger
    """
    logger = logging.getLogger("oracledisc")
    logger.setLevel(level.upper())

    # Remove existing handlers
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    logger.addHandler(RichHandler(console=console, show_path=False, rich_tracebacks=False))

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file, encoding="utf-8")
        formatter = logging.Formatter(
            "%(asctime)s [%(levelname)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.propagate = False
    return logger


def dumps_json(data: Any) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_text(file_path: Path, text: str, ensure_parents: bool = True):
    """
    Write a text file atomically.

    Args:
        file_path: Destination path
        text: Content to write
        ensure_parents: Create parent directories if needed
    """
    if ensure_parents:
        file_path.parent.mkdir(parents=True, exist_ok=True)

    # Write to temporary file first, then move
    temp_file = file_path.with_suffix(file_path.suffix + ".tmp")
    try:
        temp_file.write_text(text, encoding="utf-8")
        temp_file.replace(file_path)
    except Exception:
        if temp_file.exists():
            temp_file.unlink()
        raise


def write_json(file_path: Path, data: Any, ensure_parents: bool = True):
    """Write a JSON report atomically."""
    write_text(file_path, dumps_json(data), ensure_parents)


def format_duration(seconds: float) -> str:
    """
    Format duration in human-readable format.

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.1f}s"
    else:
        minutes = int(seconds // 60)
        secs = int(seconds % 60)
        return f"{minutes}m {secs}s"


def parse_float_list(text: str) -> List[float]:
    """Parse a comma-separated list of numbers."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("Expected a comma-separated list of numbers")
    try:
        return [float(item) for item in items]
    except ValueError as e:
        raise ValueError(f"Invalid number list {text!r}: {e}")


def parse_range(text: str) -> Tuple[int, int, int]:
    """Parse `start:stop:step` (stop inclusive, step defaults to 1)."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"Expected start:stop[:step], got {text!r}")
    try:
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise ValueError(f"Range bounds must be integers, got {text!r}")
    if start < 1 or stop < start or step < 1:
        raise ValueError(f"Range must satisfy 1 <= start <= stop and step >= 1, got {text!r}")
    return start, stop, step


def print_panel(content: str, title: Optional[str] = None, style: str = "blue"):
    """Print content in a panel."""
    console.print(Panel(content, title=title, border_style=style))
