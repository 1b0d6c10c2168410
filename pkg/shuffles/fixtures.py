"""Bundled shuffle fixtures and the ``examples`` writer."""
from __future__ import annotations

import logging
import shutil
from pathlib import Path
from typing import List, Optional

from .core import MixedShuffle, load_shuffle
from .errors import FixtureError
from .expr import DEFAULT_INTEGER_BITS

logger = logging.getLogger(__name__)

FIXTURE_DIRECTORY = Path(__file__).resolve().parent / "fixtures"
FIXTURE_NAMES: List[str] = [
    "identity.json",
    "evens_odds.json",
    "three_ladder.json",
    "sharkovskii.json",
    "sharkovskii_reversed.json",
]


def _normalize_name(name: str) -> str:
    text = Path(str(name)).name
    return text if text.endswith(".json") else f"{text}.json"


def bundled_fixture_path(name: str) -> Optional[Path]:
    """Return the bundled file called ``name`` (``.json`` optional), if any."""

    filename = _normalize_name(name)
    if filename not in FIXTURE_NAMES:
        return None
    path = FIXTURE_DIRECTORY / filename
    return path if path.exists() else None


def load_fixture(name: str, *, integer_bits: int = DEFAULT_INTEGER_BITS) -> MixedShuffle:
    path = bundled_fixture_path(name)
    if path is None:
        raise FixtureError(f"No bundled fixture named {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return load_shuffle(path, integer_bits=integer_bits)


def write_fixtures(directory: Path | str) -> List[Path]:
    """Copy every bundled fixture into ``directory`` and return the new paths."""

    target = Path(directory)
    try:
        target.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise FixtureError(f"Unable to create fixture directory {target}: {exc}") from exc

    written: List[Path] = []
    for filename in FIXTURE_NAMES:
        source = FIXTURE_DIRECTORY / filename
        if not source.exists():
            raise FixtureError(f"Bundled fixture {filename} is missing from {FIXTURE_DIRECTORY}")
        destination = target / filename
        try:
            shutil.copyfile(source, destination)
        except OSError as exc:
            raise FixtureError(f"Unable to write {destination}: {exc}") from exc
        written.append(destination)
    logger.info("Wrote %d fixtures to %s", len(written), target)
    return written
