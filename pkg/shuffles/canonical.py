"""Part sequences, canonical partitions, snake/ladder transfers and diagrams.

A part sequence lists the innermost segments of a shuffle in order: ladders,
snakes and benches. Outer infinite indices become :class:`OmegaRepeat` blocks
(ω-many copies for a positive index, ω*-many for a negative one).
"""
from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .core import MinusInf, MixedShuffle, PlusInf, UniformComponent, make_component
from .errors import NoSuchPair, OrderTypeError, PartSequenceTooLarge, PartSyntaxError, TransferError
from .ordinal import OrderType, fin, mul_omega, omega, omega_star, repeat_omega, sum_order_types
from .values import TAIL_REST, TableValue

logger = logging.getLogger(__name__)

DEFAULT_MAX_PARTS = 10_000

LADDER_GLYPH = "•-o"
SNAKE_GLYPH = "o-•"
BENCH_GLYPH = "•-•"
LADDER_SNAKE_GLYPH = "•-o-•"
SNAKE_LADDER_GLYPH = "o-o"
ELLIPSIS = "..."


class PartKind(enum.Enum):
    LADDER = "L"
    SNAKE = "S"
    BENCH = "B"


@dataclass(frozen=True)
class PartType:
    kind: PartKind
    length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is PartKind.BENCH and self.length is not None and self.length < 1:
            raise PartSyntaxError(f"Bench length must be positive, got {self.length}")

    def __str__(self) -> str:
        if self.kind is PartKind.BENCH:
            return f"B{self.length if self.length is not None else '?'}"
        return self.kind.value


LADDER = PartType(PartKind.LADDER)
SNAKE = PartType(PartKind.SNAKE)


def bench(length: Optional[int] = None) -> PartType:
    return PartType(PartKind.BENCH, length)


@dataclass(frozen=True)
class OmegaRepeat:
    """``body`` repeated ω-many (``sign`` +1) or ω*-many (``sign`` -1) times."""

    body: Tuple["Block", ...]
    sign: int = 1

    def __str__(self) -> str:
        marker = "w" if self.sign > 0 else "w*"
        return "(" + ",".join(str(block) for block in self.body) + f")^{marker}"


Block = Union[PartType, OmegaRepeat]


@dataclass(frozen=True)
class PartSequence:
    blocks: Tuple[Block, ...]

    def __str__(self) -> str:
        return render_parts(self)

    @property
    def is_finite(self) -> bool:
        return all(isinstance(block, PartType) for block in self.blocks)


# ---------------------------------------------------------------------------
# From shuffles to part sequences


def _component_blocks(component: UniformComponent, max_parts: int) -> List[Block]:
    innermost = component.domains[-1]
    if innermost.is_finite:
        blocks: List[Block] = [bench(innermost.size)]
    else:
        blocks = [LADDER if innermost.orientation > 0 else SNAKE]
    for domain in reversed(component.domains[:-1]):
        if domain.is_finite:
            size = domain.size or 1
            if len(blocks) * size > max_parts:
                raise PartSequenceTooLarge(
                    f"Expanding a finite domain of size {size} exceeds {max_parts} parts"
                )
            blocks = blocks * size
        else:
            blocks = [OmegaRepeat(tuple(blocks), domain.orientation)]
    return blocks


def part_type_sequence(shuffle: MixedShuffle, max_parts: int = DEFAULT_MAX_PARTS) -> PartSequence:
    blocks: List[Block] = []
    for component in shuffle.components:
        blocks.extend(_component_blocks(component, max_parts))
        if len(blocks) > max_parts:
            raise PartSequenceTooLarge(f"{shuffle.label or 'shuffle'} has more than {max_parts} parts")
    if shuffle.family is not None:
        blocks.append(OmegaRepeat(tuple(_component_blocks(shuffle.family, max_parts)), 1))
    return PartSequence(tuple(blocks))


# ---------------------------------------------------------------------------
# Canonical partitions


def _first_part(block: Block) -> Optional[PartType]:
    if isinstance(block, PartType):
        return block
    if block.sign > 0 and block.body:
        return _first_part(block.body[0])
    return None


def _last_part(block: Block) -> Optional[PartType]:
    if isinstance(block, PartType):
        return block
    if block.sign < 0 and block.body:
        return _last_part(block.body[-1])
    return None


def _is_kind(part: Optional[PartType], kind: PartKind) -> bool:
    return part is not None and part.kind is kind


def _merge(left: Block, right: Block) -> Optional[List[Block]]:
    if isinstance(left, PartType) and isinstance(right, PartType):
        if left.kind is PartKind.BENCH and right.kind is PartKind.BENCH:
            if left.length is None or right.length is None:
                return [bench()]
            return [bench(left.length + right.length)]
    if _is_kind(_last_part(left), PartKind.SNAKE) and isinstance(right, PartType) and right.kind is PartKind.BENCH:
        return [left]
    if isinstance(left, PartType) and left.kind is PartKind.BENCH and _is_kind(_first_part(right), PartKind.LADDER):
        return [right]
    return None


def _canonical_block(block: Block) -> Block:
    if isinstance(block, PartType):
        return block
    body = _canonical_blocks(block.body)
    if len(body) == 1 and isinstance(body[0], PartType) and body[0].kind is PartKind.BENCH:
        # ω copies of a bench form a ladder, ω* copies a snake
        return LADDER if block.sign > 0 else SNAKE
    return OmegaRepeat(tuple(body), block.sign)


def _canonical_blocks(blocks: Sequence[Block]) -> List[Block]:
    reduced = [_canonical_block(block) for block in blocks]
    position = 0
    while position < len(reduced) - 1:
        merged = _merge(reduced[position], reduced[position + 1])
        if merged is None:
            position += 1
            continue
        reduced[position : position + 2] = merged
        position = max(0, position - 1)
    return reduced


def _has_snake_ladder(blocks: Sequence[Block]) -> bool:
    for left, right in zip(blocks, blocks[1:]):
        if _is_kind(_last_part(left), PartKind.SNAKE) and _is_kind(_first_part(right), PartKind.LADDER):
            return True
    for block in blocks:
        if isinstance(block, OmegaRepeat):
            if _has_snake_ladder(block.body):
                return True
            if _is_kind(_last_part_of(block.body), PartKind.SNAKE) and _is_kind(
                _first_part_of(block.body), PartKind.LADDER
            ):
                return True
    return False


def _first_part_of(blocks: Sequence[Block]) -> Optional[PartType]:
    return _first_part(blocks[0]) if blocks else None


def _last_part_of(blocks: Sequence[Block]) -> Optional[PartType]:
    return _last_part(blocks[-1]) if blocks else None


def canonicalize(sequence: PartSequence) -> Tuple[PartSequence, bool]:
    """Minimize benches by merging; report whether the result is unique.

    Benches merge with each other, into a preceding snake and into a
    following ladder. The canonical partition is unique exactly when no
    snake is immediately followed by a ladder.
    """

    blocks = _canonical_blocks(sequence.blocks)
    return PartSequence(tuple(blocks)), not _has_snake_ladder(blocks)


def _block_order_type(block: Block) -> OrderType:
    if isinstance(block, PartType):
        if block.kind is PartKind.LADDER:
            return OrderType((omega(),))
        if block.kind is PartKind.SNAKE:
            return OrderType((omega_star(),))
        if block.length is None:
            raise OrderTypeError("A bench of unknown length has no definite order type")
        return OrderType((fin(block.length),))
    body = sum_order_types([_block_order_type(item) for item in block.body])
    if block.sign > 0:
        return repeat_omega(body)
    return mul_omega(body, -1)


def part_order_type(sequence: PartSequence) -> OrderType:
    return sum_order_types([_block_order_type(block) for block in sequence.blocks])


# ---------------------------------------------------------------------------
# Text forms


_PART_PATTERN = re.compile(r"^(?:L|S|B(?P<length>[0-9]+|\?)?)$")


def parse_parts(text: str) -> PartSequence:
    """Parse a finite comma-separated list such as ``B3,S,L``."""

    blocks: List[Block] = []
    for raw in text.split(","):
        token = raw.strip().upper()
        match = _PART_PATTERN.match(token)
        if match is None:
            raise PartSyntaxError(f"Invalid part {raw.strip()!r}; expected L, S, B<n> or B?")
        if token == "L":
            blocks.append(LADDER)
        elif token == "S":
            blocks.append(SNAKE)
        else:
            length = match.group("length")
            blocks.append(bench(int(length) if length and length != "?" else None))
    return PartSequence(tuple(blocks))


def render_parts(sequence: PartSequence) -> str:
    return ",".join(str(block) for block in sequence.blocks)


# ---------------------------------------------------------------------------
# Transfers


def _single_segment(shuffle: MixedShuffle, t: int, orientation: int) -> Optional[UniformComponent]:
    if not 0 <= t < len(shuffle.components):
        return None
    component = shuffle.components[t]
    if len(component.domains) != 1 or component.sign != orientation:
        return None
    return component


def transfer(
    shuffle: MixedShuffle,
    pair_index: int,
    n: int,
    direction: str = "ladder_to_snake",
) -> MixedShuffle:
    """Move ``n`` elements across the snake at ``pair_index`` and the ladder after it.

    ``ladder_to_snake`` appends the ladder's first ``n`` elements to the top
    of the snake; ``snake_to_ladder`` moves the snake's top ``n`` elements to
    the front of the ladder. The induced order is unchanged.
    """

    if n < 1:
        raise TransferError(f"Transfers move at least one element, got {n}")
    snake = _single_segment(shuffle, pair_index, -1)
    ladder = _single_segment(shuffle, pair_index + 1, 1)
    if snake is None or ladder is None:
        raise NoSuchPair(
            f"Components {pair_index} and {pair_index + 1} of {shuffle.label or 'the shuffle'} "
            "are not a single-segment snake followed by a single-segment ladder"
        )

    if direction == "ladder_to_snake":
        moved = [ladder.value.evaluate((position,)) for position in range(n)]
        new_snake = TableValue(tuple(reversed(moved)), TAIL_REST, -1, snake.value, 0)
        new_ladder = TableValue((), TAIL_REST, 1, ladder.value, n)
    elif direction == "snake_to_ladder":
        moved = [snake.value.evaluate((-position,)) for position in range(n)]
        new_snake = TableValue((), TAIL_REST, -1, snake.value, n)
        new_ladder = TableValue(tuple(reversed(moved)), TAIL_REST, 1, ladder.value, 0)
    else:
        raise TransferError(f"Unknown transfer direction {direction!r}")

    components = list(shuffle.components)
    components[pair_index] = make_component((MinusInf(),), new_snake)
    components[pair_index + 1] = make_component((PlusInf(),), new_ladder)
    logger.debug("Transferred %d elements %s at pair %d", n, direction, pair_index)
    return MixedShuffle(tuple(components), shuffle.family, shuffle.label, shuffle.integer_bits)


# ---------------------------------------------------------------------------
# Diagrams


_GLYPHS = {PartKind.LADDER: LADDER_GLYPH, PartKind.SNAKE: SNAKE_GLYPH, PartKind.BENCH: BENCH_GLYPH}


def _render_blocks(blocks: Sequence[Block]) -> List[str]:
    tokens: List[str] = []
    position = 0
    while position < len(blocks):
        block = blocks[position]
        following = blocks[position + 1] if position + 1 < len(blocks) else None
        if isinstance(block, PartType) and isinstance(following, PartType):
            if block.kind is PartKind.LADDER and following.kind is PartKind.SNAKE:
                tokens.append(LADDER_SNAKE_GLYPH)
                position += 2
                continue
            if block.kind is PartKind.SNAKE and following.kind is PartKind.LADDER:
                tokens.append(SNAKE_LADDER_GLYPH)
                position += 2
                continue
        if isinstance(block, PartType):
            tokens.append(_GLYPHS[block.kind])
        else:
            copy = " ".join(_render_blocks(block.body))
            if block.sign > 0:
                tokens.extend([copy, copy, ELLIPSIS, copy, ELLIPSIS])
            else:
                tokens.extend([ELLIPSIS, copy, copy, ELLIPSIS, copy])
        position += 1
    return tokens


def diagram(shuffle: MixedShuffle, max_parts: int = DEFAULT_MAX_PARTS) -> str:
    """Render the canonical part sequence of ``shuffle`` with ladder/snake/bench glyphs."""

    sequence, _ = canonicalize(part_type_sequence(shuffle, max_parts))
    return diagram_of_parts(sequence)


def diagram_of_parts(sequence: PartSequence) -> str:
    return " ".join(_render_blocks(sequence.blocks))


def diagram_dot(shuffle: MixedShuffle, max_parts: int = DEFAULT_MAX_PARTS) -> str:
    """Return the diagram as a DOT digraph with one node per glyph."""

    tokens = diagram(shuffle, max_parts).split(" ")
    lines = ["digraph shuffle {"]
    for position, token in enumerate(tokens):
        lines.append(f'  n{position} [label="{token}"];')
    for position in range(len(tokens) - 1):
        lines.append(f"  n{position} -> n{position + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
