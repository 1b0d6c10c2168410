"""Command-line front end for shuffle spec files."""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, Sequence

from .address import (
    address_of,
    lex_compare,
    parse_address,
    segment_successor,
    sort_prefix,
    value_at,
)
from .algebra import (
    as_i1,
    compose,
    from_finite_permutation,
    group_check,
    identity_element,
    involution,
    invert_I1,
    reverse_order,
)
from .app import ShuffleApp, create_app
from .canonical import canonicalize, diagram, diagram_dot, parse_parts, part_type_sequence, transfer
from .core import MixedShuffle, degree, order_type, shuffle_to_document, sign, verify
from .errors import ShuffleError
from .fixtures import write_fixtures
from .ordinal import render_order_type
from .summary import (
    address_json,
    canonical_text,
    comparison_text,
    dumps,
    group_report_text,
    order_type_payload,
    sequence_text,
    verification_text,
)


class _Context:
    def __init__(self, app: ShuffleApp, args: argparse.Namespace) -> None:
        self.app = app
        self.args = args
        self.budget = args.budget if args.budget is not None else app.budget
        self.upto = args.upto if args.upto is not None else app.upto

    def emit(self, text: str, payload: object) -> None:
        print(dumps(payload) if self.args.json else text)


def _sign_value(text: str) -> int:
    if text in {"+", "plus"}:
        return 1
    if text in {"-", "minus"}:
        return -1
    raise argparse.ArgumentTypeError(f"sign must be '+' or '-', got {text!r}")


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def _cmd_verify(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    report = verify(shuffle, ctx.upto, ctx.budget)
    ctx.emit(verification_text(report, shuffle.label), report.to_json())
    return 0 if report.passed else 1


def _cmd_address(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    address = address_of(shuffle, ctx.args.x, ctx.budget)
    ctx.emit(str(address), address_json(address))
    return 0


def _cmd_value(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    value = value_at(shuffle, parse_address(ctx.args.address, shuffle))
    ctx.emit(str(value), value)
    return 0


def _cmd_compare(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    x, y = ctx.args.x, ctx.args.y
    result = lex_compare(address_of(shuffle, x, ctx.budget), address_of(shuffle, y, ctx.budget))
    ctx.emit(comparison_text(x, y, result), {"x": x, "y": y, "result": result.value})
    return 0


def _cmd_sort(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    ordered = sort_prefix(shuffle, ctx.args.values, ctx.budget)
    ctx.emit(sequence_text(ordered), ordered)
    return 0


def _cmd_ordertype(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    tau = order_type(shuffle)
    ctx.emit(render_order_type(tau), order_type_payload(tau, degree(shuffle), sign(shuffle)))
    return 0


def _cmd_successor(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    following = segment_successor(shuffle, ctx.args.x, ctx.budget)
    ctx.emit("none" if following is None else str(following), following)
    return 0


def _print_document(ctx: _Context, shuffle: MixedShuffle) -> int:
    print(dumps(shuffle_to_document(shuffle)))
    return 0


def _cmd_involute(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    result = reverse_order(shuffle) if ctx.args.reverse_components else involution(shuffle)
    return _print_document(ctx, result)


def _cmd_compose(ctx: _Context) -> int:
    outer = ctx.app.load(ctx.args.outer)
    inner = ctx.app.load(ctx.args.inner)
    return _print_document(ctx, compose(outer, inner))


def _cmd_identity(ctx: _Context) -> int:
    return _print_document(ctx, identity_element(ctx.args.sign).shuffle)


def _cmd_invert(ctx: _Context) -> int:
    element = as_i1(ctx.app.load(ctx.args.file))
    return _print_document(ctx, invert_I1(element, ctx.upto, ctx.budget).shuffle)


def _cmd_permute(ctx: _Context) -> int:
    return _print_document(ctx, from_finite_permutation(ctx.args.perm, ctx.args.sign).shuffle)


def _cmd_group_check(ctx: _Context) -> int:
    elements = [as_i1(ctx.app.load(path)) for path in ctx.args.files]
    report = group_check(elements, ctx.upto, ctx.budget)
    ctx.emit(group_report_text(report), report.to_json())
    return 0 if report.passed else 1


def _cmd_canonical(ctx: _Context) -> int:
    args = ctx.args
    if args.transfer is not None:
        if args.file is None:
            raise ShuffleError("--transfer needs a shuffle file")
        shuffle = ctx.app.load(args.file)
        pair_index, count = args.transfer
        return _print_document(ctx, transfer(shuffle, pair_index, count, args.direction))
    if args.parts is not None:
        sequence = parse_parts(args.parts)
    elif args.file is not None:
        sequence = part_type_sequence(ctx.app.load(args.file), ctx.app.max_parts)
    else:
        raise ShuffleError("canonical needs a shuffle file or --parts")
    reduced, unique = canonicalize(sequence)
    ctx.emit(canonical_text(reduced, unique), {"parts": str(reduced), "unique": unique})
    return 0


def _cmd_diagram(ctx: _Context) -> int:
    shuffle = ctx.app.load(ctx.args.file)
    if ctx.args.dot:
        sys.stdout.write(diagram_dot(shuffle, ctx.app.max_parts))
        return 0
    text = diagram(shuffle, ctx.app.max_parts)
    ctx.emit(text, {"diagram": text})
    return 0


def _cmd_examples(ctx: _Context) -> int:
    written = write_fixtures(ctx.args.directory)
    ctx.emit("\n".join(str(path) for path in written), [str(path) for path in written])
    return 0


_HANDLERS: Dict[str, Callable[[_Context], int]] = {
    "verify": _cmd_verify,
    "address": _cmd_address,
    "value": _cmd_value,
    "compare": _cmd_compare,
    "sort": _cmd_sort,
    "ordertype": _cmd_ordertype,
    "successor": _cmd_successor,
    "involute": _cmd_involute,
    "compose": _cmd_compose,
    "identity": _cmd_identity,
    "invert": _cmd_invert,
    "permute": _cmd_permute,
    "group-check": _cmd_group_check,
    "canonical": _cmd_canonical,
    "diagram": _cmd_diagram,
    "examples": _cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_natural, help="Enumeration step budget (default from config)")
    common.add_argument("--upto", type=_natural, help="Coverage bound N (default from config)")
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument("--dot", action="store_true", help="DOT output (diagram only)")
    common.add_argument(
        "--config",
        dest="config_path",
        help="Path to configuration file (defaults to standard lookup)",
    )

    parser = argparse.ArgumentParser(prog="shuffle", description="Finitely presented shuffles of the natural numbers")
    subparsers = parser.add_subparsers(dest="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    add("verify", "Check injectivity and coverage of 0..N").add_argument("file")

    sub = add("address", "Print the address of a natural number")
    sub.add_argument("file")
    sub.add_argument("x", type=_natural)

    sub = add("value", "Evaluate a shuffle at an address such as (1,-3,-4)")
    sub.add_argument("file")
    sub.add_argument("address")

    sub = add("compare", "Compare two naturals under the induced order")
    sub.add_argument("file")
    sub.add_argument("x", type=_natural)
    sub.add_argument("y", type=_natural)

    sub = add("sort", "Sort naturals by the induced order")
    sub.add_argument("file")
    sub.add_argument("values", type=_natural, nargs="+")

    add("ordertype", "Print the order type").add_argument("file")

    sub = add("successor", "Print the next value along the segment of x")
    sub.add_argument("file")
    sub.add_argument("x", type=_natural)

    sub = add("involute", "Print the involution as a spec document")
    sub.add_argument("file")
    sub.add_argument(
        "--reverse-components",
        action="store_true",
        help="Also reverse the component list so the induced order is reversed",
    )

    sub = add("compose", "Print the composition OUTER∘INNER as a spec document")
    sub.add_argument("outer")
    sub.add_argument("inner")

    add("identity", "Print the identity element").add_argument("--sign", type=_sign_value, default=1)

    add("invert", "Print a table-backed inverse valid on 0..N").add_argument("file")

    sub = add("permute", "Embed a finite permutation")
    sub.add_argument("perm", type=_natural, nargs="+")
    sub.add_argument("--sign", type=_sign_value, default=1)

    add("group-check", "Check the group axioms pointwise on 0..N").add_argument("files", nargs="+")

    sub = add("canonical", "Canonical part sequence and uniqueness")
    sub.add_argument("file", nargs="?")
    sub.add_argument("--parts", help="Comma-separated part list such as B3,S,L")
    sub.add_argument(
        "--transfer",
        nargs=2,
        type=int,
        metavar=("PAIR", "N"),
        help="Transfer N elements across the snake at component PAIR and the ladder after it",
    )
    sub.add_argument("--direction", choices=("ladder_to_snake", "snake_to_ladder"), default="ladder_to_snake")

    add("diagram", "Print the ladder/snake/bench diagram").add_argument("file")

    add("examples", "Write the bundled fixture files").add_argument("directory")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)

    if args.command is None:
        parser.print_help(sys.stderr)
        return 2

    app = create_app(args.config_path)
    ctx = _Context(app, args)
    try:
        return _HANDLERS[args.command](ctx)
    except ShuffleError as exc:
        if args.json:
            print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        else:
            print(f"Error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover - CLI entry point
    sys.exit(main())
