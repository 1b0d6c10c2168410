"""Utilities for loading and working with shuffle tool configuration."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, MutableMapping, Optional

DEFAULT_CONFIG_NAME = "config.json"
CONFIG_ENV_VAR = "SHUFFLES_CONFIG"

DEFAULT_BUDGET = 1_000_000
DEFAULT_UPTO = 1000
MIN_INTEGER_BITS = 64
DEFAULT_MAX_PARTS = 10_000
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

DEFAULT_CONFIG: Dict[str, Any] = {
    "enumeration": {
        "budget": DEFAULT_BUDGET,
        "upto": DEFAULT_UPTO,
    },
    "arithmetic": {
        "integer_bits": MIN_INTEGER_BITS,
    },
    "canonical": {
        "max_parts": DEFAULT_MAX_PARTS,
    },
    "logging": {
        "level": DEFAULT_LOG_LEVEL,
        "format": DEFAULT_LOG_FORMAT,
    },
}


@dataclass
class EnumerationConfig:
    """Step budget and coverage bound used by enumeration-backed commands."""

    budget: int = DEFAULT_BUDGET
    upto: int = DEFAULT_UPTO

    def to_dict(self) -> Dict[str, Any]:
        return {"budget": self.budget, "upto": self.upto}


@dataclass
class ArithmeticConfig:
    integer_bits: int = MIN_INTEGER_BITS

    def to_dict(self) -> Dict[str, Any]:
        return {"integer_bits": self.integer_bits}


@dataclass
class CanonicalConfig:
    max_parts: int = DEFAULT_MAX_PARTS

    def to_dict(self) -> Dict[str, Any]:
        return {"max_parts": self.max_parts}


@dataclass
class LoggingConfig:
    level: str = DEFAULT_LOG_LEVEL
    format: str = DEFAULT_LOG_FORMAT

    def level_number(self) -> int:
        return logging.getLevelName(self.level)

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "format": self.format}


@dataclass
class ShuffleConfig:
    """Runtime configuration for the shuffle library and command line."""

    enumeration: EnumerationConfig
    arithmetic: ArithmeticConfig
    canonical: CanonicalConfig
    logging: LoggingConfig
    source_path: Optional[Path] = None

    def to_json_dict(self) -> Dict[str, Any]:
        """Return a JSON-compatible dictionary representing the configuration."""

        return {
            "enumeration": self.enumeration.to_dict(),
            "arithmetic": self.arithmetic.to_dict(),
            "canonical": self.canonical.to_dict(),
            "logging": self.logging.to_dict(),
        }


def _coerce_positive_int(value: Any, *, default: int, minimum: int = 1) -> int:
    if isinstance(value, bool):
        return default
    try:
        number = int(value)
    except (TypeError, ValueError):
        return default
    if number < minimum:
        return default
    return number


def _coerce_log_level(value: Any) -> str:
    text = str(value or "").strip().upper()
    if isinstance(logging.getLevelName(text), int):
        return text
    return DEFAULT_LOG_LEVEL


def _merge_dict(base: MutableMapping[str, Any], overlay: Mapping[str, Any]) -> MutableMapping[str, Any]:
    for key, value in overlay.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), MutableMapping):
            base[key] = _merge_dict(base[key], value)
        else:
            base[key] = value
    return base


def _section(merged: Mapping[str, Any], name: str) -> Mapping[str, Any]:
    value = merged.get(name)
    return value if isinstance(value, Mapping) else {}


def load_config(config_path: Optional[os.PathLike[str] | str] = None) -> ShuffleConfig:
    """Load configuration from JSON, applying defaults as needed."""

    provided_path = Path(config_path) if config_path else None
    env_path = Path(os.environ[CONFIG_ENV_VAR]) if os.environ.get(CONFIG_ENV_VAR) else None

    default_paths: List[Optional[Path]] = []
    if provided_path is None and env_path is None:
        default_paths.append(Path.cwd() / DEFAULT_CONFIG_NAME)
        default_paths.append(Path(__file__).resolve().parent.parent / DEFAULT_CONFIG_NAME)

    search_paths = [provided_path, env_path, *default_paths]

    config_file: Optional[Path] = None
    for candidate in search_paths:
        if candidate and candidate.exists():
            config_file = candidate
            break

    loaded_data: Any = {}
    source_path: Optional[Path] = None
    if config_file:
        try:
            with config_file.open("r", encoding="utf-8") as fh:
                loaded_data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            logging.getLogger(__name__).warning("Ignoring unreadable config %s: %s", config_file, exc)
            loaded_data = {}
        source_path = config_file.resolve()
    if not isinstance(loaded_data, Mapping):
        loaded_data = {}

    merged: Dict[str, Any] = json.loads(json.dumps(DEFAULT_CONFIG))  # deep copy
    _merge_dict(merged, loaded_data)

    enumeration = _section(merged, "enumeration")
    arithmetic = _section(merged, "arithmetic")
    canonical = _section(merged, "canonical")
    logging_section = _section(merged, "logging")

    log_format = logging_section.get("format")
    if not isinstance(log_format, str) or not log_format.strip():
        log_format = DEFAULT_LOG_FORMAT

    return ShuffleConfig(
        enumeration=EnumerationConfig(
            budget=_coerce_positive_int(enumeration.get("budget"), default=DEFAULT_BUDGET),
            upto=_coerce_positive_int(enumeration.get("upto"), default=DEFAULT_UPTO, minimum=0),
        ),
        arithmetic=ArithmeticConfig(
            integer_bits=_coerce_positive_int(
                arithmetic.get("integer_bits"), default=MIN_INTEGER_BITS, minimum=MIN_INTEGER_BITS
            ),
        ),
        canonical=CanonicalConfig(
            max_parts=_coerce_positive_int(canonical.get("max_parts"), default=DEFAULT_MAX_PARTS),
        ),
        logging=LoggingConfig(level=_coerce_log_level(logging_section.get("level")), format=log_format),
        source_path=source_path,
    )
