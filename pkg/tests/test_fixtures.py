"""Tests for the bundled fixtures and the fixture writer."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from shuffles.core import load_shuffle, order_type
from shuffles.errors import FixtureError
from shuffles.fixtures import FIXTURE_NAMES, bundled_fixture_path, load_fixture, write_fixtures


def test_write_fixtures_copies_every_file(tmp_path):
    target = tmp_path / "nested" / "fixtures"
    written = write_fixtures(target)
    assert [path.name for path in written] == FIXTURE_NAMES
    for path in written:
        document = json.loads(path.read_text(encoding="utf-8"))
        assert document["components"]
        reloaded = load_shuffle(path)
        assert order_type(reloaded) == order_type(load_fixture(path.name))


def test_bundled_names_accept_optional_suffix():
    assert bundled_fixture_path("identity") == bundled_fixture_path("identity.json")
    assert bundled_fixture_path("missing") is None


def test_unknown_fixture_raises():
    with pytest.raises(FixtureError) as excinfo:
        load_fixture("nonexistent")
    assert "evens_odds.json" in str(excinfo.value)


def test_write_fixtures_reports_unwritable_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("occupied")
    with pytest.raises(FixtureError):
        write_fixtures(blocker / "below")
