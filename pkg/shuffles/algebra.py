"""Involution, composition and the group of single-segment shuffles."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .address import address_of
from .core import (
    IndexDomain,
    MinusInf,
    MixedShuffle,
    PlusInf,
    UniformComponent,
    component_order_type,
    make_component,
    verify,
)
from .errors import (
    BenchPresent,
    GeneralizedShapeUnsupported,
    MultiComponentUnsupported,
    NotAPermutation,
    NotFoundWithinBudget,
    NotVerified,
    ShuffleError,
    SignMismatch,
)
from .expr import Neg, Var, parse_expr, substitute
from .ordinal import OrderType, mul_finite, mul_omega
from .values import (
    TAIL_IDENTITY,
    TAIL_NONE,
    ComposedValue,
    ExprValue,
    TableValue,
    ValueMap,
    index_names,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Involution


def _negate_component(component: UniformComponent) -> UniformComponent:
    return make_component(
        tuple(domain.negated() for domain in component.domains),
        component.value.negated(),
    )


def involution(shuffle: MixedShuffle) -> MixedShuffle:
    """Negate every index of every component, keeping component order."""

    family = _negate_component(shuffle.family) if shuffle.family is not None else None
    return MixedShuffle(
        tuple(_negate_component(component) for component in shuffle.components),
        family,
        _starred(shuffle.label),
        shuffle.integer_bits,
    )


def reverse_order(shuffle: MixedShuffle) -> MixedShuffle:
    """Involution that also reverses the component list.

    This presents the reverse of the induced order for shuffles with several
    components; for a single component it equals :func:`involution`.
    """

    if shuffle.family is not None:
        raise MultiComponentUnsupported("Cannot reverse the component order of an ω-family")
    return MixedShuffle(
        tuple(_negate_component(component) for component in reversed(shuffle.components)),
        None,
        _starred(shuffle.label),
        shuffle.integer_bits,
    )


def _starred(label: str) -> str:
    if label.endswith("*"):
        return label[:-1]
    return f"{label}*" if label else ""


# ---------------------------------------------------------------------------
# Composition


def _single_component(shuffle: MixedShuffle, role: str) -> UniformComponent:
    if shuffle.family is not None or len(shuffle.components) != 1:
        raise MultiComponentUnsupported(f"Composition needs a single-component {role}")
    component = shuffle.components[0]
    if component.is_bench:
        raise BenchPresent(f"The {role} is a bench; benches cannot be composed")
    return component


def _check_composable(outer: MixedShuffle, inner: MixedShuffle) -> Tuple[UniformComponent, UniformComponent]:
    left = _single_component(outer, "left operand")
    right = _single_component(inner, "right operand")
    if left.sign != right.sign:
        raise SignMismatch(f"Cannot compose signs {left.sign:+d} and {right.sign:+d}")
    if left.domains[-1].is_finite:
        raise GeneralizedShapeUnsupported("The left operand's innermost domain must be infinite")
    return left, right


def _compose_values(outer: ValueMap, inner: ValueMap, keep: int, sign_value: int) -> ValueMap:
    if isinstance(outer, ExprValue) and isinstance(inner, ExprValue):
        renamed = substitute(
            inner.expr,
            {name: Var(f"i{keep + position}") for position, name in enumerate(inner.names)},
        )
        replacement = renamed if sign_value > 0 else Neg(renamed)
        expr = substitute(outer.expr, {f"i{keep}": replacement})
        return ExprValue(expr, index_names(keep + inner.arity), outer.integer_bits)
    return ComposedValue(outer, inner, keep, sign_value)


def compose(outer: MixedShuffle, inner: MixedShuffle) -> MixedShuffle:
    """Replace the innermost segments of ``outer`` by copies of ``inner``.

    ``r(I, J) = s(I, ε·u(J))`` where ``I`` are the outer indices without the
    innermost one.
    """

    left, right = _check_composable(outer, inner)
    keep = len(left.domains) - 1
    value = _compose_values(left.value, right.value, keep, left.sign)
    component = make_component(left.domains[:-1] + right.domains, value)
    label = f"{outer.label}∘{inner.label}" if outer.label or inner.label else ""
    return MixedShuffle((component,), None, label, outer.integer_bits)


def composition_order_type(outer: MixedShuffle, inner: MixedShuffle) -> OrderType:
    """Order type of ``compose(outer, inner)`` without building it."""

    left, right = _check_composable(outer, inner)
    tau = component_order_type(right)
    for domain in reversed(left.domains[:-1]):
        if domain.is_finite:
            tau = mul_finite(tau, domain.size or 1)
        else:
            tau = mul_omega(tau, domain.orientation)
    return tau


# ---------------------------------------------------------------------------
# The group of single-segment shuffles


@dataclass(frozen=True)
class I1Element:
    """A single-segment shuffle read as the bijection ``n -> s(sign * n)``."""

    shuffle: MixedShuffle
    sign: int

    @property
    def value(self) -> ValueMap:
        return self.shuffle.components[0].value

    def permutation(self, n: int) -> int:
        return self.value.evaluate((self.sign * n,))


def is_invertible(shuffle: MixedShuffle) -> bool:
    return (
        shuffle.family is None
        and len(shuffle.components) == 1
        and len(shuffle.components[0].domains) == 1
        and not shuffle.components[0].is_bench
    )


def as_i1(shuffle: MixedShuffle) -> I1Element:
    if not is_invertible(shuffle):
        raise MultiComponentUnsupported(
            f"{shuffle.label or 'shuffle'} is not a single component over one infinite domain"
        )
    return I1Element(shuffle, shuffle.components[0].sign)


def _domain_for(sign_value: int) -> IndexDomain:
    return PlusInf() if sign_value > 0 else MinusInf()


def identity_element(sign_value: int = 1) -> I1Element:
    text = "i0" if sign_value > 0 else "-i0"
    value = ExprValue(parse_expr(text, ("i0",)), ("i0",))
    component = make_component((_domain_for(sign_value),), value)
    label = "identity" if sign_value > 0 else "identity-"
    return I1Element(MixedShuffle((component,), None, label), 1 if sign_value > 0 else -1)


def _table_element(table: Sequence[int], tail: str, sign_value: int, label: str) -> I1Element:
    value = TableValue(tuple(table), tail, sign_value)
    component = make_component((_domain_for(sign_value),), value)
    return I1Element(MixedShuffle((component,), None, label), sign_value)


def from_finite_permutation(perm: Sequence[int], sign_value: int = 1) -> I1Element:
    """Embed a permutation of ``0..n-1`` as ``(perm[0], ..., perm[n-1], n, n+1, ...)``."""

    values = list(perm)
    if sorted(values) != list(range(len(values))):
        raise NotAPermutation(f"{values!r} is not a permutation of 0..{len(values) - 1}")
    sign_value = 1 if sign_value > 0 else -1
    return _table_element(values, TAIL_IDENTITY, sign_value, f"perm{values!r}")


def invert_I1(element: I1Element | MixedShuffle, upto: int, budget: int) -> I1Element:
    """Return a table-backed inverse valid on ``0..upto``."""

    if isinstance(element, MixedShuffle):
        element = as_i1(element)
    report = verify(element.shuffle, upto, budget)
    if not report.passed:
        raise NotVerified(
            f"{element.shuffle.label or 'shuffle'} is not verified up to {upto}: "
            f"{len(report.missing)} missing, {len(report.duplicates)} duplicated, "
            f"{len(report.out_of_range)} negative"
        )
    label = f"{element.shuffle.label}^-1" if element.shuffle.label else ""

    value = element.value
    if (
        isinstance(value, TableValue)
        and value.tail == TAIL_IDENTITY
        and sorted(value.table) == list(range(len(value.table)))
    ):
        inverse = [0] * len(value.table)
        for position, image in enumerate(value.table):
            inverse[image] = position
        return _table_element(inverse, TAIL_IDENTITY, element.sign, label)

    images = [element.permutation(n) for n in range(upto + 1)]
    length = max([upto, *images]) + 1
    table: List[int] = []
    for target in range(length):
        address = address_of(element.shuffle, target, budget)
        table.append(element.sign * address.indices[0])
    logger.debug("Inverse of %s tabulated on %d positions", element.shuffle.label, length)
    return _table_element(table, TAIL_NONE, element.sign, label)


@dataclass(frozen=True)
class GroupFailure:
    axiom: str
    elements: Tuple[int, ...]
    witness: str


@dataclass
class GroupCheckReport:
    upto: int
    element_count: int
    failures: List[GroupFailure] = field(default_factory=list)
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def failures_for(self, axiom: str) -> List[GroupFailure]:
        return [failure for failure in self.failures if failure.axiom == axiom]

    def to_json(self) -> Dict[str, object]:
        return {
            "upto": self.upto,
            "elements": self.element_count,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": [
                {"axiom": failure.axiom, "elements": list(failure.elements), "witness": failure.witness}
                for failure in self.failures
            ],
        }


def _first_difference(
    left: MixedShuffle,
    right: MixedShuffle,
    sign_value: int,
    upto: int,
    report: GroupCheckReport,
) -> Optional[int]:
    first = left.components[0].value
    second = right.components[0].value
    for n in range(upto + 1):
        point = (sign_value * n,)
        try:
            a = first.evaluate(point)
            b = second.evaluate(point)
        except NotFoundWithinBudget:
            # past the end of a tabulated inverse
            report.skipped += 1
            continue
        except ShuffleError:
            return n
        if a != b:
            return n
    return None


def group_check(elements: Sequence[I1Element | MixedShuffle], upto: int, budget: int) -> GroupCheckReport:
    """Check closure, associativity, identity and inverse laws on ``0..upto``."""

    members = [item if isinstance(item, I1Element) else as_i1(item) for item in elements]
    report = GroupCheckReport(upto=upto, element_count=len(members))
    if not members:
        return report
    sign_value = members[0].sign
    for position, member in enumerate(members):
        if member.sign != sign_value:
            raise SignMismatch(f"Element {position} has sign {member.sign:+d}, expected {sign_value:+d}")

    shuffles = [member.shuffle for member in members]
    identity = identity_element(sign_value).shuffle

    verified: List[bool] = []
    for position, shuffle in enumerate(shuffles):
        outcome = verify(shuffle, upto, budget)
        verified.append(outcome.passed)
        if not outcome.passed:
            if outcome.out_of_range:
                witness = f"negative {outcome.out_of_range[0][0]}"
            elif outcome.missing:
                witness = f"missing {outcome.missing[0]}"
            else:
                witness = f"duplicate {outcome.duplicates[0][0]}"
            report.failures.append(GroupFailure("closure", (position,), witness))

    for a, left in enumerate(shuffles):
        for b, right in enumerate(shuffles):
            if not (verified[a] and verified[b]):
                continue
            product = compose(left, right)
            outcome = verify(product, upto, budget)
            if outcome.out_of_range:
                report.failures.append(
                    GroupFailure("closure", (a, b), f"negative {outcome.out_of_range[0][0]}")
                )
            elif outcome.duplicates:
                report.failures.append(
                    GroupFailure("closure", (a, b), f"duplicate {outcome.duplicates[0][0]}")
                )
            elif outcome.missing:
                if outcome.skipped:
                    report.skipped += outcome.skipped
                else:
                    report.failures.append(GroupFailure("closure", (a, b), f"missing {outcome.missing[0]}"))

    for a, first in enumerate(shuffles):
        for b, second in enumerate(shuffles):
            left_pair = compose(first, second)
            for c, third in enumerate(shuffles):
                point = _first_difference(
                    compose(left_pair, third), compose(first, compose(second, third)), sign_value, upto, report
                )
                if point is not None:
                    report.failures.append(GroupFailure("associativity", (a, b, c), f"differs at {point}"))

    for a, shuffle in enumerate(shuffles):
        for product in (compose(identity, shuffle), compose(shuffle, identity)):
            point = _first_difference(product, shuffle, sign_value, upto, report)
            if point is not None:
                report.failures.append(GroupFailure("identity", (a,), f"differs at {point}"))

    for a, member in enumerate(members):
        if not verified[a]:
            continue
        inverse = invert_I1(member, upto, budget).shuffle
        for product in (compose(member.shuffle, inverse), compose(inverse, member.shuffle)):
            point = _first_difference(product, identity, sign_value, upto, report)
            if point is not None:
                report.failures.append(GroupFailure("inverse", (a,), f"differs at {point}"))

    if report.passed:
        logger.info("Group axioms hold for %d elements up to %d", len(members), upto)
    return report
