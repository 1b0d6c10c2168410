"""Finite presentations of shuffles of the natural numbers.

A shuffle is presented as an ordered list of uniform components, each a tuple
of index domains plus a value map, optionally followed by one ω-family
template whose value map also reads the component index ``t``. Nothing is
materialized: support enumeration walks index tuples in a deterministic
dovetail, round ``r`` covering the tuples with ``t <= r`` and every
``|index| <= r`` that were not covered before.
"""
from __future__ import annotations

import enum
import json
import logging
import os
from dataclasses import dataclass, field
from itertools import count
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    DomainViolation,
    EmptyDomain,
    MixedOrientation,
    OmegaFamilyNotLast,
    ShuffleError,
    SpecDocumentError,
)
from .expr import DEFAULT_INTEGER_BITS
from .ordinal import OrderType, fin, mul_finite, mul_omega, repeat_omega, sum_order_types
from .values import TableValue, ValueMap, value_from_document

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Index domains


class IndexDomain:
    kind: str = ""

    @property
    def is_finite(self) -> bool:
        return self.orientation == 0

    @property
    def orientation(self) -> int:
        return 0

    @property
    def size(self) -> Optional[int]:
        return None

    def contains(self, index: int) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    def values_within(self, radius: int) -> range:  # pragma: no cover - interface
        raise NotImplementedError

    def extent(self) -> Optional[int]:
        """Largest ``|index|`` in the domain, ``None`` when unbounded."""

        return None

    def edge_values(self, radius: int) -> Tuple[int, ...]:
        return tuple(value for value in {-radius, radius} if self.contains(value))

    def negated(self) -> "IndexDomain":  # pragma: no cover - interface
        raise NotImplementedError

    def signature(self) -> Union[int, str]:
        return self.size if self.size is not None else ("+inf" if self.orientation > 0 else "-inf")

    def to_document(self) -> Dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class FinitePrefix(IndexDomain):
    """``{0, ..., m - 1}``."""

    m: int
    kind = "finite_prefix"

    def __post_init__(self) -> None:
        if self.m < 1:
            raise EmptyDomain(f"finite_prefix needs m >= 1, got {self.m}")

    @property
    def size(self) -> Optional[int]:
        return self.m

    def contains(self, index: int) -> bool:
        return 0 <= index < self.m

    def values_within(self, radius: int) -> range:
        return range(0, min(self.m - 1, radius) + 1)

    def extent(self) -> Optional[int]:
        return self.m - 1

    def edge_values(self, radius: int) -> Tuple[int, ...]:
        return (radius,) if radius < self.m else ()

    def negated(self) -> IndexDomain:
        return FiniteRange(-self.m + 1, 0)

    def to_document(self) -> Dict[str, Any]:
        return {"kind": self.kind, "m": self.m}


@dataclass(frozen=True)
class FiniteRange(IndexDomain):
    """``{n, ..., m}``."""

    n: int
    m: int
    kind = "finite_range"

    def __post_init__(self) -> None:
        if self.n > self.m:
            raise EmptyDomain(f"finite_range needs n <= m, got [{self.n}, {self.m}]")

    @property
    def size(self) -> Optional[int]:
        return self.m - self.n + 1

    def contains(self, index: int) -> bool:
        return self.n <= index <= self.m

    def values_within(self, radius: int) -> range:
        return range(max(self.n, -radius), min(self.m, radius) + 1)

    def extent(self) -> Optional[int]:
        return max(abs(self.n), abs(self.m))

    def negated(self) -> IndexDomain:
        if self.m == 0:
            return FinitePrefix(-self.n + 1)
        return FiniteRange(-self.m, -self.n)

    def to_document(self) -> Dict[str, Any]:
        return {"kind": self.kind, "n": self.n, "m": self.m}


@dataclass(frozen=True)
class PlusInf(IndexDomain):
    kind = "plus_inf"

    @property
    def orientation(self) -> int:
        return 1

    def contains(self, index: int) -> bool:
        return index >= 0

    def values_within(self, radius: int) -> range:
        return range(0, radius + 1)

    def edge_values(self, radius: int) -> Tuple[int, ...]:
        return (radius,)

    def negated(self) -> IndexDomain:
        return MinusInf()


@dataclass(frozen=True)
class MinusInf(IndexDomain):
    kind = "minus_inf"

    @property
    def orientation(self) -> int:
        return -1

    def contains(self, index: int) -> bool:
        return index <= 0

    def values_within(self, radius: int) -> range:
        return range(-radius, 1)

    def edge_values(self, radius: int) -> Tuple[int, ...]:
        return (-radius,)

    def negated(self) -> IndexDomain:
        return PlusInf()


def domain_from_document(document: Any) -> IndexDomain:
    if not isinstance(document, Mapping):
        raise SpecDocumentError(f"Domain must be an object, got {document!r}")
    kind = document.get("kind")
    try:
        if kind == "finite_prefix":
            return FinitePrefix(int(document["m"]))
        if kind == "finite_range":
            return FiniteRange(int(document["n"]), int(document["m"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecDocumentError(f"Invalid {kind} domain {dict(document)!r}") from exc
    if kind == "plus_inf":
        return PlusInf()
    if kind == "minus_inf":
        return MinusInf()
    raise SpecDocumentError(f"Unknown domain kind {kind!r}")


# ---------------------------------------------------------------------------
# Components and shuffles


class Shape(enum.Enum):
    STRICT_UNIFORM = "strict_uniform"
    GENERALIZED = "generalized"


def classify_shape(domains: Sequence[IndexDomain]) -> Shape:
    """Return the parity class of a domain tuple.

    Strict tuples are a finite first domain followed by infinite ones (even
    degree) or infinite domains only (odd degree).
    """

    if all(not domain.is_finite for domain in domains[1:]):
        return Shape.STRICT_UNIFORM
    return Shape.GENERALIZED


@dataclass(frozen=True)
class UniformComponent:
    domains: Tuple[IndexDomain, ...]
    value: ValueMap
    shape: Shape = Shape.STRICT_UNIFORM

    @property
    def sign(self) -> int:
        orientations = {domain.orientation for domain in self.domains if not domain.is_finite}
        return orientations.pop() if orientations else 0

    @property
    def is_bench(self) -> bool:
        return self.sign == 0

    @property
    def infinite_count(self) -> int:
        return sum(1 for domain in self.domains if not domain.is_finite)

    @property
    def degree(self) -> Optional[int]:
        """Degree for strict shapes, ``None`` for generalized ones."""

        if self.shape is Shape.GENERALIZED:
            return None
        infinite = self.infinite_count
        if self.domains[0].is_finite:
            return 2 * infinite
        return 2 * infinite - 1

    def signature(self) -> Tuple[Union[int, str], ...]:
        return tuple(domain.signature() for domain in self.domains)

    def extent(self) -> Optional[int]:
        extents = [domain.extent() for domain in self.domains]
        if any(value is None for value in extents):
            return None
        return max(value for value in extents if value is not None)


def make_component(domains: Sequence[IndexDomain], value: ValueMap) -> UniformComponent:
    """Validate a domain tuple against its value map and classify it."""

    domains = tuple(domains)
    if not domains:
        raise EmptyDomain("A component needs at least one index domain")
    orientations = {domain.orientation for domain in domains if not domain.is_finite}
    if len(orientations) > 1:
        raise MixedOrientation(
            "A component may not mix plus_inf and minus_inf domains: "
            + ", ".join(domain.kind for domain in domains)
        )
    if isinstance(value, TableValue) and orientations and orientations != {value.orientation}:
        raise SpecDocumentError("Table sign does not match the orientation of its domain")
    return UniformComponent(domains, value, classify_shape(domains))


@dataclass(frozen=True)
class Address:
    """``(t, i_1, ..., i_k)``: component index plus one index per domain.

    Addresses in a single-component presentation have ``implicit_t`` set and
    are written as the bare index tuple, ``t`` being 0 throughout.
    """

    t: int
    indices: Tuple[int, ...]
    implicit_t: bool = field(default=False, compare=False)

    def as_tuple(self) -> Tuple[int, ...]:
        if self.implicit_t:
            return self.indices
        return (self.t,) + self.indices

    def __str__(self) -> str:
        return format_address(self)


def format_address(address: Address) -> str:
    return "(" + ",".join(str(value) for value in address.as_tuple()) + ")"


@dataclass(frozen=True, eq=False)
class MixedShuffle:
    """A finite list of uniform components, optionally ending in an ω-family.

    Instances compare and hash by identity so per-shuffle caches can key on
    them.
    """

    components: Tuple[UniformComponent, ...]
    family: Optional[UniformComponent] = None
    label: str = ""
    integer_bits: int = DEFAULT_INTEGER_BITS

    @property
    def finite_count(self) -> int:
        return len(self.components)

    @property
    def component_count(self) -> Optional[int]:
        """Number of components, ``None`` for ω-many."""

        return None if self.family is not None else len(self.components)

    @property
    def single_component(self) -> bool:
        return self.family is None and len(self.components) == 1

    def has_component(self, t: int) -> bool:
        return 0 <= t < len(self.components) or (self.family is not None and t >= len(self.components))

    def component(self, t: int) -> UniformComponent:
        if 0 <= t < len(self.components):
            return self.components[t]
        if self.family is not None and t >= len(self.components):
            return self.family
        raise DomainViolation(f"Component index {t} is out of range")

    def evaluate(self, t: int, indices: Sequence[int]) -> int:
        component = self.component(t)
        if t >= len(self.components):
            return component.value.evaluate((t,) + tuple(indices))
        return component.value.evaluate(tuple(indices))

    def is_finite_presentation(self) -> bool:
        return self.family is None and all(component.extent() is not None for component in self.components)


# ---------------------------------------------------------------------------
# Spec documents


def _component_from_document(
    document: Any, *, family: bool, integer_bits: int
) -> UniformComponent:
    if not isinstance(document, Mapping):
        raise SpecDocumentError(f"Component must be an object, got {document!r}")
    raw_domains = document.get("domains")
    if raw_domains is None and "table" in document:
        # a bare table runs over one infinite index of its own sign
        raw_domains = [{"kind": "minus_inf" if document.get("sign") == "-" else "plus_inf"}]
    if not isinstance(raw_domains, list):
        raise SpecDocumentError("Component 'domains' must be a list")
    domains = tuple(domain_from_document(item) for item in raw_domains)
    if not domains:
        raise EmptyDomain("A component needs at least one index domain")
    value = value_from_document(document, len(domains), family=family, integer_bits=integer_bits)
    return make_component(domains, value)


def build_shuffle(
    document: Mapping[str, Any],
    *,
    integer_bits: int = DEFAULT_INTEGER_BITS,
) -> MixedShuffle:
    """Validate a shuffle spec document and return its presentation.

    Coverage of the natural numbers is not checked here; see :func:`verify`.
    """

    if not isinstance(document, Mapping):
        raise SpecDocumentError("A shuffle document must be a JSON object")
    raw_components = document.get("components", [])
    if not isinstance(raw_components, list):
        raise SpecDocumentError("'components' must be a list")

    components: List[UniformComponent] = []
    family: Optional[UniformComponent] = None
    for position, raw in enumerate(raw_components):
        is_family = isinstance(raw, Mapping) and bool(raw.get("omega", False))
        if is_family and (position != len(raw_components) - 1 or "omega_family" in document):
            raise OmegaFamilyNotLast(f"Component {position} is an ω-family but is not the final block")
        component = _component_from_document(raw, family=is_family, integer_bits=integer_bits)
        if is_family:
            family = component
        else:
            components.append(component)

    if document.get("omega_family") is not None:
        family = _component_from_document(
            document["omega_family"], family=True, integer_bits=integer_bits
        )

    if not components and family is None:
        raise SpecDocumentError("A shuffle needs at least one component")

    label = document.get("label", "")
    return MixedShuffle(tuple(components), family, str(label) if label is not None else "", integer_bits)


def _component_to_document(component: UniformComponent) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"domains": [domain.to_document() for domain in component.domains]}
    payload.update(component.value.to_document())
    return payload


def shuffle_to_document(shuffle: MixedShuffle) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "label": shuffle.label,
        "components": [_component_to_document(component) for component in shuffle.components],
    }
    if shuffle.family is not None:
        payload["omega_family"] = _component_to_document(shuffle.family)
    return payload


def load_shuffle(
    path: os.PathLike[str] | str,
    *,
    integer_bits: int = DEFAULT_INTEGER_BITS,
) -> MixedShuffle:
    source = Path(path)
    try:
        document = json.loads(source.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecDocumentError(f"Unable to read shuffle document {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecDocumentError(f"Invalid JSON in {source}: {exc}") from exc
    if isinstance(document, dict) and not document.get("label"):
        document["label"] = source.stem
    return build_shuffle(document, integer_bits=integer_bits)


def dump_shuffle(shuffle: MixedShuffle, path: os.PathLike[str] | str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(shuffle_to_document(shuffle), indent=2) + "\n", encoding="utf-8")
    return target


# ---------------------------------------------------------------------------
# Degree and sign


@dataclass(frozen=True)
class ComponentDegree:
    degree: Optional[int]
    signature: Tuple[Union[int, str], ...]

    def __str__(self) -> str:
        if self.degree is not None:
            return str(self.degree)
        return "(" + ", ".join(str(part) for part in self.signature) + ")"


@dataclass(frozen=True)
class DegreeDescriptor:
    """Component count (``None`` for ω) and per-component degrees.

    Equality compares the full domain signatures, so two ladders built on
    finite first domains of different sizes are told apart.
    """

    count: Optional[int]
    components: Tuple[ComponentDegree, ...]

    def __str__(self) -> str:
        head = "w" if self.count is None else str(self.count)
        return f"({head}, [" + ", ".join(str(entry) for entry in self.components) + "])"

    def to_json(self) -> Dict[str, Any]:
        return {
            "count": "w" if self.count is None else self.count,
            "components": [
                {"degree": entry.degree, "signature": list(entry.signature)} for entry in self.components
            ],
        }


def _sign_symbol(value: int) -> str:
    return "+" if value > 0 else ("-" if value < 0 else "0")


@dataclass(frozen=True)
class SignDescriptor:
    count_sign: int
    components: Tuple[int, ...]

    def __str__(self) -> str:
        return f"({_sign_symbol(self.count_sign)}, [" + ", ".join(
            _sign_symbol(value) for value in self.components
        ) + "])"

    def to_json(self) -> Dict[str, Any]:
        return {
            "count": _sign_symbol(self.count_sign),
            "components": [_sign_symbol(value) for value in self.components],
        }


def _all_components(shuffle: MixedShuffle) -> Tuple[UniformComponent, ...]:
    if shuffle.family is None:
        return shuffle.components
    return shuffle.components + (shuffle.family,)


def degree(shuffle: MixedShuffle) -> DegreeDescriptor:
    entries = tuple(
        ComponentDegree(component.degree, component.signature()) for component in _all_components(shuffle)
    )
    return DegreeDescriptor(shuffle.component_count, entries)


def sign(shuffle: MixedShuffle) -> SignDescriptor:
    return SignDescriptor(
        1 if shuffle.family is not None else 0,
        tuple(component.sign for component in _all_components(shuffle)),
    )


# ---------------------------------------------------------------------------
# Dovetail enumeration


@dataclass(frozen=True)
class SupportEntry:
    round: int
    value: Optional[int]
    address: Address


def _shell(domains: Sequence[IndexDomain], radius: int, need_edge: bool) -> Iterator[Tuple[int, ...]]:
    """Yield index tuples with every ``|i| <= radius`` in lexicographic order.

    With ``need_edge`` only tuples touching ``|i| == radius`` are produced.
    """

    reachable = [False] * (len(domains) + 1)
    for position in range(len(domains) - 1, -1, -1):
        reachable[position] = reachable[position + 1] or bool(domains[position].edge_values(radius))
    prefix: List[int] = []

    def walk(position: int, touched: bool) -> Iterator[Tuple[int, ...]]:
        if position == len(domains):
            yield tuple(prefix)
            return
        if need_edge and not touched and not reachable[position]:
            return
        domain = domains[position]
        if need_edge and not touched and position == len(domains) - 1:
            candidates: Sequence[int] = sorted(domain.edge_values(radius))
        else:
            candidates = domain.values_within(radius)
        for value in candidates:
            prefix.append(value)
            yield from walk(position + 1, touched or abs(value) == radius)
            prefix.pop()

    return walk(0, not need_edge)


def _last_round(shuffle: MixedShuffle) -> Optional[int]:
    if not shuffle.is_finite_presentation():
        return None
    extents = [component.extent() or 0 for component in shuffle.components]
    return max([len(shuffle.components) - 1, *extents])


def iter_index_tuples(shuffle: MixedShuffle) -> Iterator[Tuple[int, Address]]:
    """Yield ``(round, address)`` for every index tuple, each exactly once."""

    last = _last_round(shuffle)
    implicit = shuffle.single_component
    for radius in count():
        if last is not None and radius > last:
            return
        top = radius if shuffle.family is not None else min(radius, len(shuffle.components) - 1)
        for t in range(top + 1):
            component = shuffle.component(t)
            for indices in _shell(component.domains, radius, need_edge=(t != radius)):
                yield radius, Address(t, indices, implicit)


def iter_support(shuffle: MixedShuffle) -> Iterator[SupportEntry]:
    """Yield every index tuple with its value, ``None`` where undefined."""

    components = shuffle.components
    finite = len(components)
    for radius, address in iter_index_tuples(shuffle):
        t = address.t
        try:
            if t < finite:
                value: Optional[int] = components[t].value.evaluate(address.indices)
            else:
                value = shuffle.family.value.evaluate((t,) + address.indices)  # type: ignore[union-attr]
        except ShuffleError:
            value = None
        yield SupportEntry(radius, value, address)


def enumerate_support(shuffle: MixedShuffle, budget: int) -> List[Tuple[int, Address]]:
    """Return ``(value, address)`` pairs from the first ``budget`` steps."""

    pairs: List[Tuple[int, Address]] = []
    skipped = 0
    for steps, entry in enumerate(iter_support(shuffle), start=1):
        if steps > budget:
            break
        if entry.value is None:
            skipped += 1
        else:
            pairs.append((entry.value, entry.address))
    if skipped:
        logger.warning("Skipped %d index tuples with undefined values in %s", skipped, shuffle.label or "shuffle")
    return pairs


# ---------------------------------------------------------------------------
# Verification


@dataclass
class VerificationReport:
    checked_up_to: int
    covered: List[bool]
    duplicates: List[Tuple[int, Address, Address]] = field(default_factory=list)
    missing: List[int] = field(default_factory=list)
    out_of_range: List[Tuple[int, Address]] = field(default_factory=list)
    budget_used: int = 0
    exhaustive: bool = False
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.duplicates and not self.missing and not self.out_of_range

    @property
    def note(self) -> str:
        if self.missing and not self.exhaustive:
            return "missing values may be found with a larger budget"
        return ""

    def to_json(self) -> Dict[str, Any]:
        return {
            "checked_up_to": self.checked_up_to,
            "passed": self.passed,
            "duplicates": [
                [value, list(first.as_tuple()), list(second.as_tuple())]
                for value, first, second in self.duplicates
            ],
            "missing": list(self.missing),
            "out_of_range": [[value, list(address.as_tuple())] for value, address in self.out_of_range],
            "budget_used": self.budget_used,
            "exhaustive": self.exhaustive,
            "skipped": self.skipped,
        }


def verify(shuffle: MixedShuffle, upto: int, budget: int) -> VerificationReport:
    """Check injectivity and coverage of ``0..upto`` within ``budget`` steps.

    Enumeration stops at the end of the round in which ``0..upto`` became
    covered, or when the budget runs out.
    """

    covered = [False] * (upto + 1)
    remaining = upto + 1
    seen: Dict[int, Address] = {}
    report = VerificationReport(checked_up_to=upto, covered=covered)
    current_round = 0
    exhausted = True
    for entry in iter_support(shuffle):
        if entry.round != current_round:
            if remaining == 0:
                exhausted = False
                break
            current_round = entry.round
        if report.budget_used >= budget:
            exhausted = False
            break
        report.budget_used += 1
        value = entry.value
        if value is None:
            report.skipped += 1
            continue
        if value < 0:
            report.out_of_range.append((value, entry.address))
            continue
        first = seen.get(value)
        if first is not None:
            report.duplicates.append((value, first, entry.address))
            continue
        seen[value] = entry.address
        if 0 <= value <= upto and not covered[value]:
            covered[value] = True
            remaining -= 1
    report.exhaustive = exhausted
    report.missing = [value for value, hit in enumerate(covered) if not hit]
    if report.passed:
        logger.info("%s verified up to %d in %d steps", shuffle.label or "shuffle", upto, report.budget_used)
    elif report.missing and not exhausted:
        logger.warning(
            "%s: %d values up to %d not found within %d steps",
            shuffle.label or "shuffle",
            len(report.missing),
            upto,
            report.budget_used,
        )
    return report


# ---------------------------------------------------------------------------
# Order types


def component_order_type(component: UniformComponent) -> OrderType:
    """Fold a domain tuple from the innermost index outwards."""

    tau = OrderType((fin(1),))
    for domain in reversed(component.domains):
        if domain.is_finite:
            tau = mul_finite(tau, domain.size or 1)
        else:
            tau = mul_omega(tau, domain.orientation)
    return tau


def order_type(shuffle: MixedShuffle) -> OrderType:
    parts = [component_order_type(component) for component in shuffle.components]
    if shuffle.family is not None:
        parts.append(repeat_omega(component_order_type(shuffle.family)))
    return sum_order_types(parts)


def order_isomorphic(first: MixedShuffle, second: MixedShuffle) -> bool:
    """Compare the normalized order types of two presentations."""

    return order_type(first) == order_type(second)
