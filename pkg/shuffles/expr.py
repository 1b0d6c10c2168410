"""Closed-form integer expressions used as segment value maps.

The language has integer literals, index variables, ``+``, ``-``, ``*``,
unary minus and ``^`` (integer power, right associative, binding tighter than
``*``)::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := '-' unary | power
    power := atom ['^' unary]
    atom  := INT | VAR | '(' expr ')'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import ArithmeticOverflow, ExprSyntaxError, NegativeExponent, UndeclaredVariable

DEFAULT_INTEGER_BITS = 64


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: "SegmentExpr"
    right: "SegmentExpr"


@dataclass(frozen=True)
class Sub:
    left: "SegmentExpr"
    right: "SegmentExpr"


@dataclass(frozen=True)
class Mul:
    left: "SegmentExpr"
    right: "SegmentExpr"


@dataclass(frozen=True)
class Neg:
    operand: "SegmentExpr"


@dataclass(frozen=True)
class Pow:
    base: "SegmentExpr"
    exponent: "SegmentExpr"


SegmentExpr = Union[IntLit, Var, Add, Sub, Mul, Neg, Pow]


_TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<int>[0-9]+)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)

Token = Tuple[str, str, int]


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    length = len(text)
    while position < length:
        if text[position:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExprSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup or "op"
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(("end", "", length))
    return tokens


class _Parser:
    def __init__(self, text: str, allowed_vars: Iterable[str]) -> None:
        self.tokens = _tokenize(text)
        self.index = 0
        self.allowed = frozenset(allowed_vars)

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, value: str) -> None:
        kind, text, position = self.advance()
        if kind != "op" or text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"Expected {value!r} but found {found}", position)

    def parse(self) -> SegmentExpr:
        node = self.expr()
        kind, text, position = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"Unexpected token {text!r}", position)
        return node

    def expr(self) -> SegmentExpr:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in {"+", "-"}:
                self.advance()
                right = self.term()
                node = Add(node, right) if text == "+" else Sub(node, right)
            else:
                return node

    def term(self) -> SegmentExpr:
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self) -> SegmentExpr:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> SegmentExpr:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self) -> SegmentExpr:
        kind, text, position = self.advance()
        if kind == "int":
            return IntLit(int(text))
        if kind == "var":
            if text not in self.allowed:
                raise UndeclaredVariable(text, position)
            return Var(text)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"Unexpected {found}", position)


def parse_expr(text: str, allowed_vars: Iterable[str]) -> SegmentExpr:
    """Parse ``text`` into an expression tree over ``allowed_vars``."""

    if not text or not text.strip():
        raise ExprSyntaxError("Empty expression", 0)
    return _Parser(text, allowed_vars).parse()


_PREC_SUM = 1
_PREC_PRODUCT = 2
_PREC_UNARY = 3
_PREC_ATOM = 5


def _precedence(node: SegmentExpr) -> int:
    match node:
        case Add() | Sub():
            return _PREC_SUM
        case Mul():
            return _PREC_PRODUCT
        case Neg():
            return _PREC_UNARY
        case Pow():
            return 4
        case IntLit(value) if value < 0:
            return _PREC_SUM
        case _:
            return _PREC_ATOM


def _render(node: SegmentExpr, minimum: int) -> str:
    match node:
        case IntLit(value):
            text = str(value)
        case Var(name):
            text = name
        case Add(left, right):
            text = f"{_render(left, _PREC_SUM)} + {_render(right, _PREC_PRODUCT)}"
        case Sub(left, right):
            text = f"{_render(left, _PREC_SUM)} - {_render(right, _PREC_PRODUCT)}"
        case Mul(left, right):
            text = f"{_render(left, _PREC_PRODUCT)}*{_render(right, _PREC_UNARY)}"
        case Neg(operand):
            text = f"-{_render(operand, _PREC_UNARY)}"
        case Pow(base, exponent):
            text = f"{_render(base, _PREC_ATOM)}^{_render(exponent, _PREC_UNARY)}"
        case _:
            raise TypeError(f"Unhandled expression node {node!r}")
    if _precedence(node) < minimum:
        return f"({text})"
    return text


def render_expr(node: SegmentExpr) -> str:
    """Return the canonical text form of ``node``."""

    return _render(node, _PREC_SUM)


def variables(node: SegmentExpr) -> FrozenSet[str]:
    match node:
        case Var(name):
            return frozenset({name})
        case IntLit():
            return frozenset()
        case Neg(operand):
            return variables(operand)
        case Add(left, right) | Sub(left, right) | Mul(left, right):
            return variables(left) | variables(right)
        case Pow(base, exponent):
            return variables(base) | variables(exponent)
    raise TypeError(f"Unhandled expression node {node!r}")


def substitute(node: SegmentExpr, mapping: Mapping[str, SegmentExpr]) -> SegmentExpr:
    """Replace variables simultaneously according to ``mapping``."""

    match node:
        case Var(name):
            return mapping.get(name, node)
        case IntLit():
            return node
        case Neg(operand):
            return Neg(substitute(operand, mapping))
        case Add(left, right):
            return Add(substitute(left, mapping), substitute(right, mapping))
        case Sub(left, right):
            return Sub(substitute(left, mapping), substitute(right, mapping))
        case Mul(left, right):
            return Mul(substitute(left, mapping), substitute(right, mapping))
        case Pow(base, exponent):
            return Pow(substitute(base, mapping), substitute(exponent, mapping))
    raise TypeError(f"Unhandled expression node {node!r}")


Evaluator = Callable[[Sequence[int]], int]


def _power(base: int, exponent: int, bits: int) -> int:
    if exponent < 0:
        raise NegativeExponent(f"Negative exponent {exponent} for base {base}")
    magnitude = abs(base)
    # |base|^exponent >= 2^((bitlen-1)*exponent); reject before computing when
    # that bound is already out of range and leave the boundary to the caller.
    if magnitude > 1 and (magnitude.bit_length() - 1) * exponent > bits:
        raise ArithmeticOverflow(f"{base}^{exponent} exceeds {bits}-bit integers")
    return base**exponent


def compile_expr(
    node: SegmentExpr,
    names: Sequence[str],
    integer_bits: int = DEFAULT_INTEGER_BITS,
) -> Evaluator:
    """Compile ``node`` into a function of positional values for ``names``.

    Every intermediate result is checked against the signed range of
    ``integer_bits``; overflow raises :class:`ArithmeticOverflow` instead of
    wrapping.
    """

    slots: Dict[str, int] = {name: index for index, name in enumerate(names)}
    upper = 1 << (integer_bits - 1)
    lower = -upper

    def checked(value: int) -> int:
        if value < lower or value >= upper:
            raise ArithmeticOverflow(f"Value {value} exceeds {integer_bits}-bit integers")
        return value

    def build(current: SegmentExpr) -> Evaluator:
        match current:
            case IntLit(value):
                constant = checked(value)
                return lambda env: constant
            case Var(name):
                if name not in slots:
                    raise UndeclaredVariable(name)
                slot = slots[name]
                return lambda env: env[slot]
            case Neg(operand):
                inner = build(operand)
                return lambda env: checked(-inner(env))
            case Add(left, right):
                lhs, rhs = build(left), build(right)
                return lambda env: checked(lhs(env) + rhs(env))
            case Sub(left, right):
                lhs, rhs = build(left), build(right)
                return lambda env: checked(lhs(env) - rhs(env))
            case Mul(left, right):
                lhs, rhs = build(left), build(right)
                return lambda env: checked(lhs(env) * rhs(env))
            case Pow(base, exponent):
                lhs, rhs = build(base), build(exponent)
                return lambda env: checked(_power(lhs(env), rhs(env), integer_bits - 1))
        raise TypeError(f"Unhandled expression node {current!r}")

    return build(node)


def eval_expr(
    node: SegmentExpr,
    bindings: Mapping[str, int],
    integer_bits: int = DEFAULT_INTEGER_BITS,
) -> int:
    """Evaluate ``node`` exactly under ``bindings``."""

    names = tuple(bindings)
    evaluator = compile_expr(node, names, integer_bits)
    return evaluator(tuple(bindings[name] for name in names))
