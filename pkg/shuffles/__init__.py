"""Finitely presented shuffles of the natural numbers."""
from .address import address_of, lex_compare, precedes, segment_successor, sort_prefix, value_at
from .algebra import compose, group_check, identity_element, involution, invert_I1
from .app import create_app
from .canonical import canonicalize, diagram, part_type_sequence, transfer
from .core import MixedShuffle, build_shuffle, degree, load_shuffle, order_type, sign, verify
from .errors import ShuffleError

__all__ = [
    "MixedShuffle",
    "ShuffleError",
    "address_of",
    "build_shuffle",
    "canonicalize",
    "compose",
    "create_app",
    "degree",
    "diagram",
    "group_check",
    "identity_element",
    "involution",
    "invert_I1",
    "lex_compare",
    "load_shuffle",
    "order_type",
    "part_type_sequence",
    "precedes",
    "segment_successor",
    "sign",
    "sort_prefix",
    "transfer",
    "value_at",
    "verify",
]
