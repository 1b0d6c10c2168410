"""Human-readable and JSON renderings of results printed by the command line."""
from __future__ import annotations

import json
from typing import Any, List, Optional, Sequence

from .address import Comparison
from .algebra import GroupCheckReport
from .canonical import PartSequence, render_parts
from .core import Address, DegreeDescriptor, SignDescriptor, VerificationReport, format_address
from .ordinal import OrderType, render_order_type

_COMPARISON_SYMBOLS = {Comparison.LT: "<", Comparison.EQ: "=", Comparison.GT: ">"}


def dumps(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False)


def address_json(address: Address) -> List[int]:
    return list(address.as_tuple())


def comparison_text(x: int, y: int, result: Comparison) -> str:
    return f"{x} {_COMPARISON_SYMBOLS[result]} {y}"


def verification_text(report: VerificationReport, label: str = "") -> str:
    name = label or "shuffle"
    lines = []
    if report.passed:
        lines.append(f"{name}: covers 0..{report.checked_up_to} injectively ({report.budget_used} steps)")
    else:
        lines.append(f"{name}: FAILED up to {report.checked_up_to} ({report.budget_used} steps)")
    for value, first, second in report.duplicates[:10]:
        lines.append(f"  duplicate {value} at {format_address(first)} and {format_address(second)}")
    for value, address in report.out_of_range[:10]:
        lines.append(f"  negative value {value} at {format_address(address)}")
    if report.missing:
        shown = ", ".join(str(value) for value in report.missing[:20])
        more = f" (+{len(report.missing) - 20} more)" if len(report.missing) > 20 else ""
        lines.append(f"  missing {shown}{more}")
    if report.note:
        lines.append(f"  note: {report.note}")
    return "\n".join(lines)


def order_type_payload(
    tau: OrderType,
    degree_value: Optional[DegreeDescriptor] = None,
    sign_value: Optional[SignDescriptor] = None,
) -> dict:
    payload: dict = {"order_type": render_order_type(tau)}
    if degree_value is not None:
        payload["degree"] = str(degree_value)
    if sign_value is not None:
        payload["sign"] = str(sign_value)
    return payload


def canonical_text(sequence: PartSequence, unique: bool) -> str:
    return f"{render_parts(sequence)} ({'unique' if unique else 'not unique'})"


def group_report_text(report: GroupCheckReport) -> str:
    if report.passed:
        text = f"group axioms hold for {report.element_count} elements on 0..{report.upto}"
        if report.skipped:
            text += f" ({report.skipped} points undefined)"
        return text
    lines = [f"group axioms FAILED for {report.element_count} elements on 0..{report.upto}"]
    for failure in report.failures:
        elements = ",".join(str(index) for index in failure.elements)
        lines.append(f"  {failure.axiom} [{elements}]: {failure.witness}")
    return "\n".join(lines)


def sequence_text(values: Sequence[int]) -> str:
    return " ".join(str(value) for value in values)
