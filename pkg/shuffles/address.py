"""Addresses and the total order they induce on the natural numbers.

``x`` precedes ``y`` exactly when the address of ``x`` is lexicographically
smaller than the address of ``y``, a strict prefix preceding its extensions.
Address lookups walk the same dovetail as support enumeration and remember
every value they pass, so repeated queries on one shuffle never re-enumerate.
"""
from __future__ import annotations

import enum
import functools
import logging
import re
import threading
import weakref
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import (
    Address,
    MixedShuffle,
    Shape,
    SupportEntry,
    degree,
    format_address,
    iter_support,
    sign,
)
from .errors import (
    AddressSyntaxError,
    DomainViolation,
    GeneralizedShapeUnsupported,
    NotFoundWithinBudget,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Address",
    "AddressBook",
    "Comparison",
    "address_book",
    "address_of",
    "format_address",
    "lex_compare",
    "order_equivalent",
    "parse_address",
    "precedes",
    "segment_successor",
    "sort_prefix",
    "value_at",
]


class Comparison(enum.Enum):
    LT = "<"
    EQ = "="
    GT = ">"


class AddressBook:
    """Value to address memo for one shuffle, filled by a resumable dovetail."""

    def __init__(self, shuffle: MixedShuffle) -> None:
        self._shuffle = shuffle
        self._cursor: Optional[Iterator[SupportEntry]] = iter_support(shuffle)
        self._known: Dict[int, Address] = {}
        self._lock = threading.Lock()
        self.steps_used = 0

    @property
    def exhausted(self) -> bool:
        return self._cursor is None

    def lookup(self, value: int, budget: int) -> Address:
        with self._lock:
            known = self._known.get(value)
            if known is not None:
                return known
            while self._cursor is not None and self.steps_used < budget:
                entry = next(self._cursor, None)
                if entry is None:
                    self._cursor = None
                    break
                self.steps_used += 1
                if entry.value is None or entry.value in self._known:
                    continue
                self._known[entry.value] = entry.address
                if entry.value == value:
                    logger.debug("Located %d at %s after %d steps", value, entry.address, self.steps_used)
                    return entry.address
            detail = "the presentation was enumerated completely" if self._cursor is None else ""
            raise NotFoundWithinBudget(value, self.steps_used, detail)


_BOOKS: "weakref.WeakKeyDictionary[MixedShuffle, AddressBook]" = weakref.WeakKeyDictionary()
_BOOKS_LOCK = threading.Lock()


def address_book(shuffle: MixedShuffle) -> AddressBook:
    with _BOOKS_LOCK:
        book = _BOOKS.get(shuffle)
        if book is None:
            book = AddressBook(shuffle)
            _BOOKS[shuffle] = book
        return book


def address_of(shuffle: MixedShuffle, value: int, budget: int) -> Address:
    """Return the address of ``value``: the first dovetail tuple producing it."""

    return address_book(shuffle).lookup(value, budget)


def value_at(shuffle: MixedShuffle, address: Address) -> int:
    if not shuffle.has_component(address.t):
        raise DomainViolation(f"{format_address(address)} names no component of {shuffle.label or 'the shuffle'}")
    component = shuffle.component(address.t)
    if len(address.indices) != len(component.domains):
        raise DomainViolation(
            f"{format_address(address)} has {len(address.indices)} indices, "
            f"component {address.t} has {len(component.domains)} domains"
        )
    for index, domain in zip(address.indices, component.domains):
        if not domain.contains(index):
            raise DomainViolation(f"Index {index} of {format_address(address)} is outside {domain.kind}")
    return shuffle.evaluate(address.t, address.indices)


def _flatten(address: Address | Sequence[int]) -> Tuple[int, ...]:
    if isinstance(address, Address):
        return address.as_tuple()
    return tuple(address)


def lex_compare(first: Address | Sequence[int], second: Address | Sequence[int]) -> Comparison:
    left, right = _flatten(first), _flatten(second)
    for a, b in zip(left, right):
        if a != b:
            return Comparison.LT if a < b else Comparison.GT
    if len(left) == len(right):
        return Comparison.EQ
    return Comparison.LT if len(left) < len(right) else Comparison.GT


def precedes(shuffle: MixedShuffle, x: int, y: int, budget: int) -> bool:
    if x == y:
        return False
    return lex_compare(address_of(shuffle, x, budget), address_of(shuffle, y, budget)) is Comparison.LT


def sort_prefix(shuffle: MixedShuffle, values: Iterable[int], budget: int) -> List[int]:
    """Sort ``values`` by the order the shuffle induces."""

    items = list(values)
    addresses = {value: address_of(shuffle, value, budget) for value in items}

    def compare(x: int, y: int) -> int:
        result = lex_compare(addresses[x], addresses[y])
        return -1 if result is Comparison.LT else (1 if result is Comparison.GT else 0)

    return sorted(items, key=functools.cmp_to_key(compare))


def segment_successor(shuffle: MixedShuffle, value: int, budget: int) -> Optional[int]:
    """Return the next value along the segment of ``value``, if any.

    The last index moves by +1, which walks a ladder upwards and a snake
    towards its maximal end at index 0. Index tuples whose value first
    appears at another address are stepped over.
    """

    address = address_of(shuffle, value, budget)
    component = shuffle.component(address.t)
    head = address.indices[:-1]
    following = address.indices[-1]
    for _ in range(budget):
        following += 1
        if not component.domains[-1].contains(following):
            return None
        candidate = shuffle.evaluate(address.t, head + (following,))
        located = address_of(shuffle, candidate, budget)
        if located.t == address.t and located.indices == head + (following,):
            return candidate
    raise NotFoundWithinBudget(
        value, budget, f"no unshadowed index follows {format_address(address)} within {budget} steps"
    )


def order_equivalent(first: MixedShuffle, second: MixedShuffle) -> bool:
    """Compare degree descriptors (finite sizes included) and sign descriptors."""

    for shuffle in (first, second):
        components = shuffle.components + ((shuffle.family,) if shuffle.family is not None else ())
        if any(component.shape is Shape.GENERALIZED for component in components):
            raise GeneralizedShapeUnsupported(
                f"{shuffle.label or 'shuffle'} has a generalized component; order equivalence is undefined"
            )
    return degree(first) == degree(second) and sign(first) == sign(second)


_ADDRESS_PATTERN = re.compile(r"^\(\s*-?[0-9]+(\s*,\s*-?[0-9]+)*\s*\)$")


def parse_address(text: str, shuffle: Optional[MixedShuffle] = None) -> Address:
    """Parse ``(t,i1,...,ik)``, or the bare ``(i1,...,ik)`` for a single-component ``shuffle``."""

    stripped = text.strip()
    if not _ADDRESS_PATTERN.match(stripped):
        raise AddressSyntaxError(f"Invalid address {text!r}; expected e.g. (1,-3,-4)")
    numbers = [int(part) for part in stripped[1:-1].split(",")]
    if shuffle is not None and shuffle.single_component:
        return Address(0, tuple(numbers), implicit_t=True)
    if numbers[0] < 0:
        raise AddressSyntaxError(f"Component index must be natural in {text!r}")
    return Address(numbers[0], tuple(numbers[1:]))
