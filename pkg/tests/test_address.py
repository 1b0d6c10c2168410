"""Tests for addresses, comparison and the induced order."""
from __future__ import annotations

import bisect
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from shuffles.address import (
    AddressBook,
    Comparison,
    address_of,
    lex_compare,
    order_equivalent,
    parse_address,
    precedes,
    segment_successor,
    sort_prefix,
    value_at,
)
from shuffles.algebra import compose, involution
from shuffles.core import Address, build_shuffle, load_shuffle
from shuffles.errors import (
    AddressSyntaxError,
    DomainViolation,
    GeneralizedShapeUnsupported,
    NotFoundWithinBudget,
)
from shuffles.fixtures import FIXTURE_NAMES, load_fixture

DATA = Path(__file__).resolve().parent / "data"
BUDGET = 1_000_000

EVENS_ODDS = load_fixture("evens_odds")


def _sharkovskii_key(value: int):
    if value == 0:
        return (-1,)
    power = 0
    odd = value
    while odd % 2 == 0:
        odd //= 2
        power += 1
    if odd > 1:
        return (0, power, odd)
    return (1, -power)


def test_addresses_of_evens_and_odds():
    assert address_of(EVENS_ODDS, 3, BUDGET).as_tuple() == (1, 1)
    assert address_of(EVENS_ODDS, 4, BUDGET).as_tuple() == (0, 2)
    assert str(address_of(EVENS_ODDS, 3, BUDGET)) == "(1,1)"
    chain = [8, 22, 5, 21]
    for x, y in zip(chain, chain[1:]):
        assert precedes(EVENS_ODDS, x, y, BUDGET)
        assert not precedes(EVENS_ODDS, y, x, BUDGET)


def test_addresses_in_sharkovskii_presentations():
    sharkovskii = load_fixture("sharkovskii")
    assert address_of(sharkovskii, 3, BUDGET).as_tuple() == (1, 0, 0)
    assert address_of(sharkovskii, 1, BUDGET).as_tuple() == (2, 0)
    assert address_of(sharkovskii, 0, BUDGET).as_tuple() == (0, 0)

    reversed_fixture = load_fixture("sharkovskii_reversed")
    assert address_of(reversed_fixture, 2, BUDGET).as_tuple() == (0, 1)
    assert address_of(reversed_fixture, 36, BUDGET).as_tuple() == (1, -3, -4)
    assert address_of(reversed_fixture, 3, BUDGET).as_tuple() == (1, -1, -1)
    chain = [4, 14, 15, 3]
    for x, y in zip(chain, chain[1:]):
        assert precedes(reversed_fixture, x, y, BUDGET)
        assert not precedes(reversed_fixture, y, x, BUDGET)


def test_missing_value_reports_budget():
    ladder = load_fixture("three_ladder")
    with pytest.raises(NotFoundWithinBudget) as excinfo:
        address_of(ladder, 0, 500)
    assert excinfo.value.value == 0
    assert excinfo.value.budget_used == 500
    assert excinfo.value.exit_code == 1


def test_finite_presentation_reports_complete_enumeration():
    bench = load_shuffle(DATA / "bench.json")
    with pytest.raises(NotFoundWithinBudget) as excinfo:
        address_of(bench, 2, BUDGET)
    assert "completely" in str(excinfo.value)
    assert address_of(bench, 3, BUDGET).as_tuple() == (2,)


def test_address_book_reuses_previous_steps():
    book = AddressBook(load_fixture("identity"))
    book.lookup(50, BUDGET)
    used = book.steps_used
    assert book.lookup(10, BUDGET) == Address(0, (10,))
    assert book.steps_used == used


def test_sort_examples():
    sharkovskii = load_fixture("sharkovskii")
    assert sort_prefix(sharkovskii, [1, 2, 3, 5, 6, 10], BUDGET) == [3, 5, 6, 10, 2, 1]
    assert sort_prefix(EVENS_ODDS, [1, 2, 3, 4], BUDGET) == [2, 4, 1, 3]


def test_sharkovskii_fixture_induces_sharkovskii_order():
    sharkovskii = load_fixture("sharkovskii")
    values = list(range(513))
    assert sort_prefix(sharkovskii, values, BUDGET) == sorted(values, key=_sharkovskii_key)


WINDOW = 1000
WINDOW_BUDGET = 400_000
FIXTURE_STEMS = [name[: -len(".json")] for name in FIXTURE_NAMES]


@pytest.fixture(scope="module", params=FIXTURE_STEMS)
def placed(request):
    """A fixture with the address key of every value up to ``WINDOW`` it reaches."""

    shuffle = load_fixture(request.param)
    keys = {}
    for value in range(WINDOW + 1):
        try:
            keys[value] = address_of(shuffle, value, WINDOW_BUDGET).as_tuple()
        except NotFoundWithinBudget:
            continue
    return shuffle, keys


def test_window_misses_only_documented_gaps(placed):
    shuffle, keys = placed
    missing = sorted(set(range(WINDOW + 1)) - set(keys))
    assert missing == ([0] if shuffle.label in {"three_ladder", "sharkovskii_reversed"} else [])


@settings(max_examples=2000, deadline=None)
@given(data=st.data())
def test_order_is_a_strict_total_order(placed, data):
    shuffle, keys = placed
    values = st.sampled_from(sorted(keys))
    x, y, z = data.draw(values), data.draw(values), data.draw(values)
    forward = precedes(shuffle, x, y, WINDOW_BUDGET)
    backward = precedes(shuffle, y, x, WINDOW_BUDGET)
    assert [forward, backward, x == y].count(True) == 1
    if forward and precedes(shuffle, y, z, WINDOW_BUDGET):
        assert precedes(shuffle, x, z, WINDOW_BUDGET)


def test_segment_successor_has_nothing_in_between(placed):
    shuffle, keys = placed
    ordered = sorted(keys.values())
    for x in range(301):
        if x not in keys:
            continue
        following = segment_successor(shuffle, x, WINDOW_BUDGET)
        if following is None:
            continue
        lower = keys[x]
        upper = address_of(shuffle, following, WINDOW_BUDGET).as_tuple()
        assert lower < upper
        assert bisect.bisect_left(ordered, upper) - bisect.bisect_right(ordered, lower) == 0


def test_segment_successor_stops_at_segment_end():
    sharkovskii = load_fixture("sharkovskii")
    assert segment_successor(sharkovskii, 0, BUDGET) is None
    assert segment_successor(sharkovskii, 1, BUDGET) is None
    assert segment_successor(sharkovskii, 8, BUDGET) == 4
    assert segment_successor(sharkovskii, 3, BUDGET) == 5


def test_segment_successor_steps_over_repeated_values():
    reversed_fixture = load_fixture("sharkovskii_reversed")
    assert segment_successor(reversed_fixture, 3, BUDGET) is None
    assert segment_successor(reversed_fixture, 6, BUDGET) is None
    assert segment_successor(reversed_fixture, 5, BUDGET) == 3
    assert segment_successor(reversed_fixture, 2, BUDGET) == 4


def test_lex_compare_prefix_rule():
    assert lex_compare((0, 4), (0, 11)) is Comparison.LT
    assert lex_compare((1, 3), (1, 3, 5)) is Comparison.LT
    assert lex_compare((1, 3, 5), (1, 3)) is Comparison.GT
    assert lex_compare(Address(2, (-1,)), (2, -1)) is Comparison.EQ


def test_value_at_and_parse_address():
    reversed_fixture = load_fixture("sharkovskii_reversed")
    assert value_at(reversed_fixture, parse_address("(1,-3,-4)", reversed_fixture)) == 36
    identity = load_fixture("identity")
    address = parse_address("( 7 )", identity)
    assert address.implicit_t
    assert value_at(identity, address) == 7

    with pytest.raises(DomainViolation):
        value_at(reversed_fixture, Address(1, (2, -1)))
    with pytest.raises(DomainViolation):
        value_at(reversed_fixture, Address(1, (-1,)))
    with pytest.raises(DomainViolation):
        value_at(reversed_fixture, Address(5, (0,)))


@pytest.mark.parametrize("text", ["1,2", "(1;2)", "()", "(a)", "(-1,2)", "(\u0661,2)"])
def test_parse_address_rejects_malformed_text(text):
    with pytest.raises(AddressSyntaxError) as excinfo:
        parse_address(text)
    assert excinfo.value.exit_code == 2


def test_order_equivalence():
    swap = load_shuffle(DATA / "swap.json")
    assert order_equivalent(EVENS_ODDS, compose(swap, EVENS_ODDS))
    assert not order_equivalent(load_fixture("three_ladder"), EVENS_ODDS)
    identity = load_fixture("identity")
    assert not order_equivalent(identity, involution(identity))


def test_order_equivalence_needs_strict_shapes():
    positive = load_shuffle(DATA / "positive_sharkovskii.json")
    generalized = compose(positive, EVENS_ODDS)
    with pytest.raises(GeneralizedShapeUnsupported):
        order_equivalent(generalized, EVENS_ODDS)
    mixed = build_shuffle(
        {"components": [{"domains": [{"kind": "plus_inf"}, {"kind": "finite_prefix", "m": 2}], "expr": "2*i0 + i1"}]}
    )
    with pytest.raises(GeneralizedShapeUnsupported):
        order_equivalent(EVENS_ODDS, mixed)
