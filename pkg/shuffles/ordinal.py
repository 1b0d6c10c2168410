"""Order types built from finite chains, ω and ω* by concatenation.

Atoms store ``coeff`` concatenated copies of ``ω^power`` (or ``ω*^power``);
the text form writes the coefficient on the right, e.g. ``w^2*3``. An order
type may end with a block repeated ω-many times (``prefix + (block)·w``), which
is how shuffles with infinitely many components are typed.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import OrderTypeError, OrderTypeSyntaxError


class AtomKind(enum.Enum):
    FIN = "fin"
    OMEGA = "omega"
    OMEGA_STAR = "omega_star"


@dataclass(frozen=True)
class OrderTypeAtom:
    kind: AtomKind
    coeff: int = 1
    power: int = 1
    size: int = 0

    def __post_init__(self) -> None:
        if self.kind is AtomKind.FIN:
            if self.size < 1:
                raise OrderTypeError(f"Finite atom needs size >= 1, got {self.size}")
        elif self.coeff < 1 or self.power < 1:
            raise OrderTypeError(
                f"Infinite atom needs coeff >= 1 and power >= 1, got {self.coeff}, {self.power}"
            )

    @property
    def is_infinite(self) -> bool:
        return self.kind is not AtomKind.FIN


def fin(size: int) -> OrderTypeAtom:
    return OrderTypeAtom(AtomKind.FIN, size=size)


def omega(power: int = 1, coeff: int = 1) -> OrderTypeAtom:
    return OrderTypeAtom(AtomKind.OMEGA, coeff=coeff, power=power)


def omega_star(power: int = 1, coeff: int = 1) -> OrderTypeAtom:
    return OrderTypeAtom(AtomKind.OMEGA_STAR, coeff=coeff, power=power)


Atoms = Tuple[OrderTypeAtom, ...]


@dataclass(frozen=True)
class OrderType:
    """Normalized atom list, optionally followed by an ω-repeated block."""

    atoms: Atoms = ()
    tail: Optional[Atoms] = None

    @property
    def repeats_omega(self) -> bool:
        return self.tail is not None

    @property
    def is_empty(self) -> bool:
        return not self.atoms and self.tail is None

    def __str__(self) -> str:
        return render_order_type(self)


EMPTY = OrderType()


def _rewrite_pair(left: OrderTypeAtom, right: OrderTypeAtom) -> Optional[List[OrderTypeAtom]]:
    if left.kind is AtomKind.FIN and right.kind is AtomKind.FIN:
        return [fin(left.size + right.size)]
    if left.kind is AtomKind.FIN and right.kind is AtomKind.OMEGA:
        return [right]
    if left.kind is AtomKind.OMEGA_STAR and right.kind is AtomKind.FIN:
        return [left]
    if left.kind is right.kind:
        if left.power == right.power:
            return [OrderTypeAtom(left.kind, coeff=left.coeff + right.coeff, power=left.power)]
        # a·ω^p + b·ω^q = b·ω^q and b·ω*^q + a·ω*^p = b·ω*^q for p < q
        if left.kind is AtomKind.OMEGA and left.power < right.power:
            return [right]
        if left.kind is AtomKind.OMEGA_STAR and left.power > right.power:
            return [left]
    return None


def _normalize_atoms(raw: Iterable[OrderTypeAtom]) -> Atoms:
    atoms = list(raw)
    position = 0
    while position < len(atoms) - 1:
        replacement = _rewrite_pair(atoms[position], atoms[position + 1])
        if replacement is None:
            position += 1
            continue
        atoms[position : position + 2] = replacement
        position = max(0, position - 1)
    return tuple(atoms)


def normalize(raw: Sequence[OrderTypeAtom]) -> OrderType:
    """Rewrite ``raw`` leftmost-first until no adjacent pair can be merged."""

    return OrderType(_normalize_atoms(raw))


def _orientation(atoms: Sequence[OrderTypeAtom]) -> Optional[AtomKind]:
    kinds = {atom.kind for atom in atoms if atom.is_infinite}
    if len(kinds) > 1:
        return None
    return kinds.pop() if kinds else AtomKind.FIN


def _highest(atoms: Sequence[OrderTypeAtom]) -> int:
    return max((atom.power for atom in atoms if atom.is_infinite), default=0)


def highest_power(tau: OrderType) -> int:
    """Return the largest exponent of ω or ω* occurring in ``tau``."""

    power = _highest(tau.atoms)
    if tau.tail is not None:
        power = max(power, _highest(tau.tail) + 1)
    return power


def _attach_tail(prefix: Atoms, block: Atoms) -> OrderType:
    block = _normalize_atoms(block)
    if not block:
        return OrderType(_normalize_atoms(prefix))
    if _orientation(block) in {AtomKind.FIN, AtomKind.OMEGA}:
        return OrderType(_normalize_atoms(prefix + (omega(_highest(block) + 1),)))
    prefix = _normalize_atoms(prefix)
    if prefix and _normalize_atoms(prefix + block) == block:
        prefix = ()
    return OrderType(prefix, block)


def repeat_omega(tau: OrderType) -> OrderType:
    """Return ω-many concatenated copies of ``tau``."""

    if tau.tail is not None:
        raise OrderTypeError("Cannot repeat an order type that already repeats ω-many times")
    if not tau.atoms:
        raise OrderTypeError("Cannot repeat the empty order type")
    return _attach_tail((), tau.atoms)


def sum_order_types(parts: Sequence[OrderType]) -> OrderType:
    """Concatenate ``parts`` in order and normalize the result."""

    prefix: List[OrderTypeAtom] = []
    for index, part in enumerate(parts):
        if part.tail is not None and index != len(parts) - 1:
            raise OrderTypeError("Only the last summand may repeat ω-many times")
        prefix.extend(part.atoms)
    if parts and parts[-1].tail is not None:
        return _attach_tail(tuple(prefix), parts[-1].tail)
    return normalize(prefix)


def mul_finite(tau: OrderType, m: int) -> OrderType:
    """Return ``m`` concatenated copies of ``tau``."""

    if m < 1:
        raise OrderTypeError(f"Finite multiplier must be positive, got {m}")
    if m == 1:
        return tau
    if tau.tail is not None:
        raise OrderTypeError("Cannot concatenate copies of an ω-repeated order type")
    return normalize(list(tau.atoms) * m)


def mul_omega(tau: OrderType, sign: int) -> OrderType:
    """Return ω-many (``sign`` > 0) or ω*-many (``sign`` < 0) copies of ``tau``."""

    if tau.is_empty:
        raise OrderTypeError("Cannot multiply the empty order type by ω")
    if tau.tail is not None:
        raise OrderTypeError("Cannot multiply an ω-repeated order type by ω")
    orientation = _orientation(tau.atoms)
    wanted = AtomKind.OMEGA if sign > 0 else AtomKind.OMEGA_STAR
    if orientation not in {AtomKind.FIN, wanted}:
        raise OrderTypeError(f"Mixed orientation in {render_order_type(tau)} for sign {sign:+d}")
    power = _highest(tau.atoms) + 1
    return OrderType((OrderTypeAtom(wanted, power=power),))


def render_atom(atom: OrderTypeAtom) -> str:
    if atom.kind is AtomKind.FIN:
        return str(atom.size)
    text = "w*" if atom.kind is AtomKind.OMEGA_STAR else "w"
    if atom.power != 1:
        text += f"^{atom.power}"
    if atom.coeff != 1:
        text += f"*{atom.coeff}"
    return text


def render_order_type(tau: OrderType) -> str:
    """Render ``tau`` as e.g. ``w^2*2``, ``w + w*^2`` or ``1 + (w*)·w``."""

    pieces = [render_atom(atom) for atom in tau.atoms]
    if tau.tail is not None:
        block = " + ".join(render_atom(atom) for atom in tau.tail)
        pieces.append(f"({block})·w")
    if not pieces:
        return "0"
    return " + ".join(pieces)


_ATOM_PATTERN = re.compile(r"^w(?P<star>\*)?(?:\^(?P<power>[0-9]+))?(?:\*(?P<coeff>[0-9]+))?$")
_TAIL_PATTERN = re.compile(r"^\((?P<body>.*)\)·w$")


def _parse_atom(text: str) -> OrderTypeAtom:
    if text.isascii() and text.isdigit():
        size = int(text)
        if size < 1:
            raise OrderTypeSyntaxError(f"Finite atom must be positive: {text!r}")
        return fin(size)
    match = _ATOM_PATTERN.match(text)
    if match is None:
        raise OrderTypeSyntaxError(f"Invalid order type atom: {text!r}")
    power = int(match.group("power") or 1)
    coeff = int(match.group("coeff") or 1)
    if power < 1 or coeff < 1:
        raise OrderTypeSyntaxError(f"Invalid order type atom: {text!r}")
    kind = AtomKind.OMEGA_STAR if match.group("star") else AtomKind.OMEGA
    return OrderTypeAtom(kind, coeff=coeff, power=power)


def _split_top_level(text: str) -> List[str]:
    pieces: List[str] = []
    depth = 0
    current: List[str] = []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "+" and depth == 0:
            pieces.append("".join(current).strip())
            current = []
            continue
        current.append(char)
    pieces.append("".join(current).strip())
    return pieces


def parse_order_type(text: str) -> OrderType:
    """Parse the text produced by :func:`render_order_type`."""

    stripped = text.strip()
    if stripped == "0":
        return EMPTY
    pieces = _split_top_level(stripped)
    atoms: List[OrderTypeAtom] = []
    tail: Optional[Atoms] = None
    for index, piece in enumerate(pieces):
        match = _TAIL_PATTERN.match(piece)
        if match is not None:
            if index != len(pieces) - 1:
                raise OrderTypeSyntaxError("An ω-repeated block may only appear last")
            tail = tuple(_parse_atom(part) for part in _split_top_level(match.group("body")))
            continue
        if not piece:
            raise OrderTypeSyntaxError(f"Empty summand in {text!r}")
        atoms.append(_parse_atom(piece))
    if tail is not None:
        return _attach_tail(tuple(atoms), tail)
    return normalize(atoms)
