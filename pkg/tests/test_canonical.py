"""Tests for part sequences, canonical partitions, transfers and diagrams."""
from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from shuffles.address import sort_prefix
from shuffles.algebra import involution
from shuffles.canonical import (
    LADDER,
    SNAKE,
    OmegaRepeat,
    PartKind,
    PartSequence,
    bench,
    canonicalize,
    diagram,
    diagram_dot,
    diagram_of_parts,
    parse_parts,
    part_order_type,
    part_type_sequence,
    render_parts,
    transfer,
)
from shuffles.core import build_shuffle, load_shuffle, order_type, verify
from shuffles.errors import (
    NoSuchPair,
    OrderTypeError,
    PartSequenceTooLarge,
    PartSyntaxError,
    TransferError,
)
from shuffles.fixtures import FIXTURE_NAMES, load_fixture

DATA = Path(__file__).resolve().parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"
BUDGET = 100_000


def _golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


@pytest.fixture()
def example():
    return load_shuffle(DATA / "canonical_example.json")


@pytest.mark.parametrize(
    ("text", "expected", "unique"),
    [
        ("S,B2,L", "S,L", False),
        ("L,B2,S", "L,B2,S", True),
        ("B1,B2,L", "L", True),
        ("B2,B3", "B5", True),
        ("B3,S,L", "B3,S,L", False),
        ("s, b4, b1", "S", True),
    ],
)
def test_canonicalize_examples(text, expected, unique):
    sequence, is_unique = canonicalize(parse_parts(text))
    assert render_parts(sequence) == expected
    assert is_unique is unique


@pytest.mark.parametrize("text", ["L,X", "B0", "", "B-1"])
def test_parse_parts_rejects_malformed_text(text):
    with pytest.raises(PartSyntaxError) as excinfo:
        parse_parts(text)
    assert excinfo.value.exit_code == 2


def test_unknown_bench_lengths_merge_but_have_no_order_type():
    sequence, _ = canonicalize(parse_parts("B?,B2"))
    assert sequence.blocks == (bench(),)
    with pytest.raises(OrderTypeError):
        part_order_type(sequence)


def test_part_sequences_of_fixtures():
    sharkovskii = part_type_sequence(load_fixture("sharkovskii"))
    assert sharkovskii.blocks == (bench(1), OmegaRepeat((LADDER,), 1), SNAKE)
    sequence, unique = canonicalize(sharkovskii)
    assert render_parts(sequence) == "(L)^w,S"
    assert unique

    reversed_parts, unique = canonicalize(part_type_sequence(load_fixture("sharkovskii_reversed")))
    assert render_parts(reversed_parts) == "L,(S)^w*"
    assert unique

    assert render_parts(part_type_sequence(load_fixture("three_ladder"))) == "L,L,L"


def test_benches_repeated_omega_times_become_segments():
    generalized = build_shuffle(
        {"components": [{"domains": [{"kind": "plus_inf"}, {"kind": "finite_prefix", "m": 2}], "expr": "2*i0 + i1"}]}
    )
    raw = part_type_sequence(generalized)
    assert raw.blocks == (OmegaRepeat((bench(2),), 1),)
    sequence, unique = canonicalize(raw)
    assert sequence.blocks == (LADDER,)
    assert unique
    assert part_order_type(sequence) == order_type(generalized)


@pytest.mark.parametrize("name", [name[: -len(".json")] for name in FIXTURE_NAMES])
def test_part_order_type_matches_presentation(name):
    shuffle = load_fixture(name)
    raw = part_type_sequence(shuffle)
    assert part_order_type(raw) == order_type(shuffle)
    assert part_order_type(canonicalize(raw)[0]) == order_type(shuffle)


def test_omega_family_part_sequence():
    snakes = load_shuffle(DATA / "omega_snakes.json")
    sequence = part_type_sequence(snakes)
    assert render_parts(sequence) == "B1,(S)^w"
    assert part_order_type(sequence) == order_type(snakes)


def test_part_sequence_size_is_bounded():
    with pytest.raises(PartSequenceTooLarge):
        part_type_sequence(load_fixture("three_ladder"), max_parts=2)


def test_canonical_example_is_not_unique(example):
    sequence, unique = canonicalize(part_type_sequence(example))
    assert render_parts(sequence) == "B3,S,L"
    assert not unique
    assert verify(example, 40, BUDGET).passed
    assert diagram(example) == "•-• o-o"


def test_transfer_ladder_to_snake(example):
    moved = transfer(example, 1, 1)
    snake = moved.components[1]
    ladder = moved.components[2]
    assert [snake.value.evaluate((index,)) for index in (-2, -1, 0)] == [2, 0, 7]
    assert [ladder.value.evaluate((index,)) for index in range(3)] == [9, 11, 13]
    values = list(range(31))
    assert sort_prefix(moved, values, BUDGET) == sort_prefix(example, values, BUDGET)
    assert verify(moved, 40, BUDGET).passed


def test_transfer_snake_to_ladder(example):
    moved = transfer(example, 1, 1, "snake_to_ladder")
    assert moved.components[1].value.evaluate((0,)) == 2
    assert [moved.components[2].value.evaluate((index,)) for index in range(3)] == [0, 7, 9]
    values = list(range(31))
    assert sort_prefix(moved, values, BUDGET) == sort_prefix(example, values, BUDGET)


def test_transfer_of_several_elements_keeps_order(example):
    moved = transfer(example, 1, 3)
    assert [moved.components[1].value.evaluate((index,)) for index in (-1, 0)] == [9, 11]
    values = list(range(31))
    assert sort_prefix(moved, values, BUDGET) == sort_prefix(example, values, BUDGET)


def test_transfer_rejects_bad_requests(example):
    with pytest.raises(NoSuchPair):
        transfer(example, 0, 1)
    with pytest.raises(NoSuchPair):
        transfer(example, 2, 1)
    with pytest.raises(TransferError):
        transfer(example, 1, 0)
    with pytest.raises(TransferError):
        transfer(example, 1, 1, "sideways")


@pytest.mark.parametrize(
    ("name", "golden"),
    [
        ("evens_odds", "evens_odds.txt"),
        ("three_ladder", "three_ladder.txt"),
        ("sharkovskii", "sharkovskii.txt"),
        ("sharkovskii_reversed", "sharkovskii_reversed.txt"),
    ],
)
def test_diagram_matches_golden(name, golden):
    assert diagram(load_fixture(name)) + "\n" == _golden(golden)


def test_involution_diagram_flips_glyphs():
    assert diagram(involution(load_fixture("three_ladder"))) + "\n" == _golden("three_ladder_involution.txt")


def test_diagram_dot_matches_golden():
    assert diagram_dot(load_fixture("evens_odds")) == _golden("evens_odds.dot")


def test_diagram_of_adjacent_pairs():
    assert diagram_of_parts(parse_parts("L,S,B2")) == "•-o-• •-•"
    assert diagram_of_parts(PartSequence((OmegaRepeat((SNAKE,), -1),))) == "... o-• o-• ... o-•"


_PART_TOKENS = st.lists(st.sampled_from(["L", "S", "B1", "B2", "B3"]), min_size=1, max_size=8).map(",".join)


def _reducible(left, right) -> bool:
    if left.kind is PartKind.BENCH and right.kind in {PartKind.BENCH, PartKind.LADDER}:
        return True
    return left.kind is PartKind.SNAKE and right.kind is PartKind.BENCH


@settings(max_examples=300, deadline=None)
@given(_PART_TOKENS)
def test_canonicalize_properties(text):
    original = parse_parts(text)
    sequence, unique = canonicalize(original)
    assert part_order_type(sequence) == part_order_type(original)
    again, unique_again = canonicalize(sequence)
    assert again == sequence
    assert unique_again is unique
    for left, right in zip(sequence.blocks, sequence.blocks[1:]):
        assert not _reducible(left, right)
    snake_then_ladder = any(
        left.kind is PartKind.SNAKE and right.kind is PartKind.LADDER
        for left, right in zip(sequence.blocks, sequence.blocks[1:])
    )
    assert unique is not snake_then_ladder
