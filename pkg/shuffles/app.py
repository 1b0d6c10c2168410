"""Application factory wiring configuration, logging and shuffle loading."""
from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .config import ShuffleConfig, load_config
from .core import MixedShuffle, load_shuffle
from .fixtures import bundled_fixture_path

PACKAGE_LOGGER = "shuffles"


def configure_logging(config: ShuffleConfig) -> logging.Logger:
    """Attach one stderr handler to the package logger; safe to call twice."""

    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(config.logging.level_number())
    formatter = logging.Formatter(config.logging.format)
    for existing in [h for h in logger.handlers if getattr(h, "_shuffles_handler", False)]:
        logger.removeHandler(existing)
    handler = logging.StreamHandler(sys.stderr)
    handler._shuffles_handler = True  # type: ignore[attr-defined]
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger


@dataclass
class ShuffleApp:
    config: ShuffleConfig
    logger: logging.Logger

    @property
    def budget(self) -> int:
        return self.config.enumeration.budget

    @property
    def upto(self) -> int:
        return self.config.enumeration.upto

    @property
    def max_parts(self) -> int:
        return self.config.canonical.max_parts

    def load(self, path: os.PathLike[str] | str) -> MixedShuffle:
        """Load a spec document, falling back to a bundled fixture by name."""

        candidate = Path(path)
        if not candidate.exists():
            bundled = bundled_fixture_path(str(path))
            if bundled is not None:
                self.logger.debug("Using bundled fixture %s", bundled)
                candidate = bundled
        return load_shuffle(candidate, integer_bits=self.config.arithmetic.integer_bits)


def create_app(config_path: Optional[str | Path] = None) -> ShuffleApp:
    """Create and configure the application."""

    app_config = load_config(config_path)
    logger = configure_logging(app_config)
    if app_config.source_path is None:
        logger.debug("No configuration file found; using defaults")
    return ShuffleApp(config=app_config, logger=logger)
