"""Value maps: the functions that turn an index tuple into a natural number.

A component's values come from one of three representations: a closed-form
expression, a finite table with a tail rule, or the composition of two value
maps. All three evaluate positional index tuples and can be negated for the
involution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from .errors import DomainViolation, NotFoundWithinBudget, SpecDocumentError, ShuffleError
from .expr import (
    DEFAULT_INTEGER_BITS,
    Evaluator,
    Neg,
    SegmentExpr,
    Var,
    compile_expr,
    parse_expr,
    render_expr,
    substitute,
)

FAMILY_VARIABLE = "t"

TAIL_IDENTITY = "identity"
TAIL_NONE = "none"
TAIL_REST = "rest"


def index_names(arity: int) -> Tuple[str, ...]:
    return tuple(f"i{position}" for position in range(arity))


class ValueMap:
    """Common interface of the value-map representations."""

    names: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.names)

    def evaluate(self, values: Sequence[int]) -> int:  # pragma: no cover - interface
        raise NotImplementedError

    def negated(self) -> "ValueMap":  # pragma: no cover - interface
        raise NotImplementedError

    def to_document(self) -> Dict[str, Any]:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class ExprValue(ValueMap):
    expr: SegmentExpr
    names: Tuple[str, ...]
    integer_bits: int = DEFAULT_INTEGER_BITS
    _evaluator: Evaluator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_evaluator", compile_expr(self.expr, self.names, self.integer_bits))

    def evaluate(self, values: Sequence[int]) -> int:
        return self._evaluator(values)

    def negated(self) -> "ExprValue":
        mapping = {name: Neg(Var(name)) for name in self.names if name != FAMILY_VARIABLE}
        return ExprValue(substitute(self.expr, mapping), self.names, self.integer_bits)

    def to_document(self) -> Dict[str, Any]:
        return {"expr": render_expr(self.expr)}


@dataclass(frozen=True)
class TableValue(ValueMap):
    """A single-index map read from ``table`` by position ``orientation * index``.

    Beyond the table the tail decides: ``identity`` returns the position,
    ``none`` means the value is unknown (the table's validity bound was
    reached) and ``rest`` continues with another value map shifted by
    ``rest_offset``.
    """

    table: Tuple[int, ...]
    tail: str = TAIL_NONE
    orientation: int = 1
    rest: Optional[ValueMap] = None
    rest_offset: int = 0
    names: Tuple[str, ...] = ("i0",)

    def __post_init__(self) -> None:
        if self.tail not in {TAIL_IDENTITY, TAIL_NONE, TAIL_REST}:
            raise SpecDocumentError(f"Unknown table tail {self.tail!r}")
        if (self.tail == TAIL_REST) != (self.rest is not None):
            raise SpecDocumentError("A 'rest' tail needs exactly one continuation value map")
        if self.rest is not None and self.rest.arity != 1:
            raise SpecDocumentError("Table continuations must take a single index")

    def evaluate(self, values: Sequence[int]) -> int:
        (index,) = values
        position = self.orientation * index
        if position < 0:
            raise DomainViolation(f"Index {index} lies outside a table of sign {self.orientation:+d}")
        if position < len(self.table):
            return self.table[position]
        if self.tail == TAIL_IDENTITY:
            return position
        if self.tail == TAIL_REST and self.rest is not None:
            shifted = position - len(self.table) + self.rest_offset
            return self.rest.evaluate((self.orientation * shifted,))
        raise NotFoundWithinBudget(
            None, len(self.table), f"table holds {len(self.table)} entries, index {index} is beyond it"
        )

    def negated(self) -> "TableValue":
        rest = self.rest.negated() if self.rest is not None else None
        return TableValue(self.table, self.tail, -self.orientation, rest, self.rest_offset)

    def to_document(self) -> Dict[str, Any]:
        tail: Any = self.tail
        if self.rest is not None:
            tail = {"rest": self.rest.to_document(), "offset": self.rest_offset}
        return {
            "table": list(self.table),
            "tail": tail,
            "sign": "+" if self.orientation > 0 else "-",
        }


@dataclass(frozen=True)
class ComposedValue(ValueMap):
    """``outer(I[:keep] + (sign * inner(I[keep:]),))``."""

    outer: ValueMap
    inner: ValueMap
    keep: int
    sign: int

    @property
    def names(self) -> Tuple[str, ...]:  # type: ignore[override]
        return index_names(self.keep + self.inner.arity)

    def evaluate(self, values: Sequence[int]) -> int:
        head = tuple(values[: self.keep])
        innermost = self.sign * self.inner.evaluate(values[self.keep :])
        return self.outer.evaluate(head + (innermost,))

    def negated(self) -> "ComposedValue":
        return ComposedValue(self.outer.negated(), self.inner.negated(), self.keep, -self.sign)

    def to_document(self) -> Dict[str, Any]:
        return {
            "compose": {
                "outer": self.outer.to_document(),
                "inner": self.inner.to_document(),
                "keep": self.keep,
                "sign": "+" if self.sign > 0 else "-",
            }
        }


def _parse_sign(raw: Any, *, default: int = 1) -> int:
    if raw is None:
        return default
    if raw in {"+", 1, "plus"}:
        return 1
    if raw in {"-", -1, "minus"}:
        return -1
    raise SpecDocumentError(f"Invalid sign {raw!r}; expected '+' or '-'")


def _parse_int_list(raw: Any, label: str) -> Tuple[int, ...]:
    if not isinstance(raw, list) or not all(
        isinstance(item, int) and not isinstance(item, bool) for item in raw
    ):
        raise SpecDocumentError(f"{label} must be a list of integers")
    return tuple(raw)


def value_from_document(
    document: Mapping[str, Any],
    arity: int,
    *,
    family: bool = False,
    integer_bits: int = DEFAULT_INTEGER_BITS,
) -> ValueMap:
    """Build the value map described by a component (or nested) document."""

    if not isinstance(document, Mapping):
        raise SpecDocumentError(f"Value description must be an object, got {document!r}")

    if "expr" in document:
        names = index_names(arity)
        if family:
            names = (FAMILY_VARIABLE,) + names
        text = document["expr"]
        if not isinstance(text, str):
            raise SpecDocumentError("'expr' must be a string")
        return ExprValue(parse_expr(text, names), names, integer_bits)

    if "table" in document:
        if family:
            raise SpecDocumentError("ω-family templates must be given by an expression")
        if arity != 1:
            raise SpecDocumentError("Table-backed values need exactly one index domain")
        table = _parse_int_list(document["table"], "'table'")
        orientation = _parse_sign(document.get("sign"))
        raw_tail = document.get("tail", TAIL_NONE)
        if isinstance(raw_tail, Mapping):
            if "rest" not in raw_tail:
                raise SpecDocumentError("A table tail object needs a 'rest' entry")
            rest = value_from_document(raw_tail["rest"], 1, integer_bits=integer_bits)
            offset = raw_tail.get("offset", 0)
            if not isinstance(offset, int) or offset < 0:
                raise SpecDocumentError("Table tail 'offset' must be a natural number")
            return TableValue(table, TAIL_REST, orientation, rest, offset)
        if raw_tail not in {TAIL_IDENTITY, TAIL_NONE}:
            raise SpecDocumentError(f"Unknown table tail {raw_tail!r}")
        return TableValue(table, raw_tail, orientation)

    if "compose" in document:
        if family:
            raise SpecDocumentError("ω-family templates must be given by an expression")
        spec = document["compose"]
        if not isinstance(spec, Mapping):
            raise SpecDocumentError("'compose' must be an object")
        keep = spec.get("keep")
        if not isinstance(keep, int) or not 0 <= keep < arity:
            raise SpecDocumentError(f"'keep' must be an integer in [0, {arity})")
        try:
            outer = value_from_document(spec["outer"], keep + 1, integer_bits=integer_bits)
            inner = value_from_document(spec["inner"], arity - keep, integer_bits=integer_bits)
        except KeyError as exc:
            raise SpecDocumentError(f"'compose' is missing {exc.args[0]!r}") from exc
        return ComposedValue(outer, inner, keep, _parse_sign(spec.get("sign")))

    raise SpecDocumentError("A component needs one of 'expr', 'table' or 'compose'")


def safe_evaluate(value: ValueMap, values: Sequence[int]) -> Optional[int]:
    """Evaluate ``value`` and return ``None`` where it is undefined."""

    try:
        return value.evaluate(values)
    except ShuffleError:
        return None
