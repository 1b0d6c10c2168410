"""Tests for shuffle presentations, enumeration and verification."""
from __future__ import annotations

import json
import sys
from itertools import islice
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from shuffles.core import (
    Address,
    FinitePrefix,
    FiniteRange,
    MinusInf,
    PlusInf,
    Shape,
    build_shuffle,
    degree,
    dump_shuffle,
    enumerate_support,
    iter_support,
    load_shuffle,
    make_component,
    order_isomorphic,
    order_type,
    shuffle_to_document,
    sign,
    verify,
)
from shuffles.errors import (
    EmptyDomain,
    MixedOrientation,
    OmegaFamilyNotLast,
    SpecDocumentError,
    UndeclaredVariable,
)
from shuffles.fixtures import load_fixture
from shuffles.ordinal import render_order_type
from shuffles.values import value_from_document

DATA = Path(__file__).resolve().parent / "data"


def _load(name: str):
    return load_shuffle(DATA / f"{name}.json")


def test_domains_validate_and_negate():
    with pytest.raises(EmptyDomain):
        FinitePrefix(0)
    with pytest.raises(EmptyDomain):
        FiniteRange(3, 1)
    assert FinitePrefix(3).negated() == FiniteRange(-2, 0)
    assert FiniteRange(-2, 0).negated() == FinitePrefix(3)
    assert FiniteRange(1, 4).negated() == FiniteRange(-4, -1)
    assert PlusInf().negated() == MinusInf()
    assert list(MinusInf().values_within(2)) == [-2, -1, 0]


def test_mixed_orientation_is_rejected():
    value = value_from_document({"expr": "i0 + i1"}, 2)
    with pytest.raises(MixedOrientation):
        make_component((PlusInf(), MinusInf()), value)


def test_build_shuffle_classifies_components():
    ladder = load_fixture("three_ladder")
    component = ladder.components[0]
    assert component.shape is Shape.STRICT_UNIFORM
    assert component.degree == 2
    assert component.sign == 1
    generalized = build_shuffle(
        {"components": [{"domains": [{"kind": "plus_inf"}, {"kind": "finite_prefix", "m": 2}], "expr": "2*i0 + i1"}]}
    )
    assert generalized.components[0].shape is Shape.GENERALIZED
    assert generalized.components[0].degree is None


@pytest.mark.parametrize(
    ("document", "error"),
    [
        ({"components": []}, SpecDocumentError),
        ({"components": [{"domains": [], "expr": "0"}]}, EmptyDomain),
        ({"components": [{"domains": [{"kind": "sideways"}], "expr": "0"}]}, SpecDocumentError),
        ({"components": [{"domains": [{"kind": "finite_prefix"}], "expr": "0"}]}, SpecDocumentError),
        ({"components": [{"domains": [{"kind": "plus_inf"}], "expr": "i1"}]}, UndeclaredVariable),
        ({"components": [{"domains": [{"kind": "plus_inf"}], "expr": "t"}]}, UndeclaredVariable),
        (
            {
                "components": [
                    {"domains": [{"kind": "plus_inf"}], "expr": "2*t + i0", "omega": True},
                    {"domains": [{"kind": "plus_inf"}], "expr": "i0"},
                ]
            },
            OmegaFamilyNotLast,
        ),
        ({"components": [{"domains": [{"kind": "minus_inf"}], "table": [0], "sign": "+"}]}, SpecDocumentError),
    ],
)
def test_build_shuffle_rejects_invalid_documents(document, error):
    with pytest.raises(error):
        build_shuffle(document)


def test_enumeration_order_is_deterministic():
    evens_odds = load_fixture("evens_odds")
    first = [(entry.round, entry.value, entry.address.as_tuple()) for entry in islice(iter_support(evens_odds), 4)]
    assert first == [(0, 0, (0, 0)), (1, 2, (0, 1)), (1, 1, (1, 0)), (1, 3, (1, 1))]


def test_enumerate_support_examples():
    evens_odds = load_fixture("evens_odds")
    pairs = {(value, address.as_tuple()) for value, address in enumerate_support(evens_odds, 9)}
    assert {(0, (0, 0)), (1, (1, 0)), (2, (0, 1))} <= pairs

    bench = _load("bench")
    assert {(value, address.as_tuple()) for value, address in enumerate_support(bench, 100)} == {
        (1, (0,)),
        (0, (1,)),
        (3, (2,)),
    }

    reversed_fixture = load_fixture("sharkovskii_reversed")
    found = {(value, address.as_tuple()) for value, address in enumerate_support(reversed_fixture, 200)}
    assert (36, (1, -3, -4)) in found


def test_verify_identity_and_fixtures():
    for name in ("identity", "evens_odds", "sharkovskii"):
        report = verify(load_fixture(name), 200, 1_000_000)
        assert report.passed, name
        assert report.budget_used > 0
        assert not report.exhaustive


def test_verify_reports_duplicates_and_missing_values():
    report = verify(_load("prime_powers"), 10, 1000)
    assert not report.passed
    value, first, second = report.duplicates[0]
    assert value == 4
    assert (first.as_tuple(), second.as_tuple()) == ((0, 1), (2, 0))
    assert 5 in report.missing
    assert report.budget_used == 1000
    assert report.note


def test_verify_on_finite_presentation_is_exhaustive():
    report = verify(_load("bench"), 3, 1000)
    assert report.exhaustive
    assert report.missing == [2]
    assert report.note == ""


def test_verify_rejects_negative_values():
    report = verify(_load("shift"), 50, 100_000)
    assert not report.passed
    assert [(value, address.as_tuple()) for value, address in report.out_of_range] == [(-1, (0,))]
    assert report.missing == []
    assert not report.duplicates
    assert report.to_json()["out_of_range"] == [[-1, [0]]]


def test_three_ladder_misses_zero():
    report = verify(load_fixture("three_ladder"), 20, 2000)
    assert report.missing == [0]
    assert not report.duplicates


def test_reversed_fixture_repeats_powers_of_two_and_misses_zero():
    report = verify(load_fixture("sharkovskii_reversed"), 50, 5000)
    assert report.missing == [0]
    repeated = {value for value, _, _ in report.duplicates}
    assert {1, 2, 4, 8} <= repeated
    assert all(value & (value - 1) == 0 for value in repeated)
    assert report.skipped > 0


def test_order_types_of_fixtures():
    expected = {
        "identity": "w",
        "evens_odds": "w*2",
        "three_ladder": "w*3",
        "sharkovskii": "w^2 + w*",
        "sharkovskii_reversed": "w + w*^2",
    }
    for name, text in expected.items():
        assert render_order_type(order_type(load_fixture(name))) == text, name


def test_degree_and_sign_descriptors():
    assert str(degree(load_fixture("three_ladder"))) == "(1, [2])"
    assert str(sign(load_fixture("three_ladder"))) == "(0, [+])"
    assert str(degree(load_fixture("sharkovskii_reversed"))) == "(2, [1, 3])"
    assert str(sign(load_fixture("sharkovskii_reversed"))) == "(0, [+, -])"
    assert str(degree(load_fixture("sharkovskii"))) == "(3, [0, 3, 1])"
    assert str(degree(_load("bench"))) == "(1, [0])"
    assert str(sign(_load("reversed_naturals"))) == "(0, [-])"


def test_omega_family_presentations():
    odds = _load("evens_then_odd_points")
    assert odds.component_count is None
    assert verify(odds, 60, 100_000).passed
    assert render_order_type(order_type(odds)) == "w*2"
    assert str(degree(odds)) == "(w, [1, 0])"
    assert str(sign(odds)) == "(+, [+, 0])"

    ladders = _load("omega_ladders")
    assert verify(ladders, 100, 100_000).passed
    assert render_order_type(order_type(ladders)) == "w^2"

    snakes = _load("omega_snakes")
    assert verify(snakes, 100, 100_000).passed
    assert render_order_type(order_type(snakes)) == "1 + (w*)·w"


def test_order_isomorphic_ignores_leading_bench():
    bench_then_ladder = build_shuffle(
        {
            "components": [
                {"domains": [{"kind": "finite_prefix", "m": 2}], "expr": "i0"},
                {"domains": [{"kind": "plus_inf"}], "expr": "i0 + 2"},
            ]
        }
    )
    assert order_isomorphic(bench_then_ladder, load_fixture("identity"))
    assert not order_isomorphic(load_fixture("evens_odds"), load_fixture("identity"))


def test_load_shuffle_defaults_label_and_wraps_errors(tmp_path):
    source = tmp_path / "swap.json"
    source.write_text(json.dumps({"components": [{"domains": [{"kind": "plus_inf"}], "expr": "i0"}]}))
    assert load_shuffle(source).label == "swap"

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(SpecDocumentError) as excinfo:
        load_shuffle(broken)
    assert isinstance(excinfo.value.__cause__, json.JSONDecodeError)

    with pytest.raises(SpecDocumentError):
        load_shuffle(tmp_path / "missing.json")


def test_dump_and_reload_preserve_values(tmp_path):
    original = load_fixture("sharkovskii")
    target = dump_shuffle(original, tmp_path / "out" / "copy.json")
    reloaded = load_shuffle(target)
    assert shuffle_to_document(reloaded) == shuffle_to_document(original)
    for t, indices in [(0, (0,)), (1, (2, 3)), (2, (-4,))]:
        assert reloaded.evaluate(t, indices) == original.evaluate(t, indices)


def test_address_equality_ignores_display_form():
    assert Address(0, (1, 1), implicit_t=True) == Address(0, (1, 1))
    assert str(Address(0, (1, 1), implicit_t=True)) == "(1,1)"
    assert str(Address(1, (-3, -4))) == "(1,-3,-4)"
