"""Exception hierarchy shared by the shuffle modules and the command line."""
from __future__ import annotations

from typing import Optional


class ShuffleError(RuntimeError):
    """Base class for every error raised by the ``shuffles`` package."""

    exit_code = 1


# Parse and usage errors (exit code 2).


class SpecDocumentError(ShuffleError):
    """Raised when a shuffle spec document cannot be read or is malformed."""

    exit_code = 2


class ExprSyntaxError(ShuffleError):
    """Raised when an expression string does not match the grammar."""

    exit_code = 2

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UndeclaredVariable(ShuffleError):
    """Raised when an expression mentions a variable its component lacks."""

    exit_code = 2

    def __init__(self, name: str, position: int = 0) -> None:
        super().__init__(f"Undeclared variable {name!r} at position {position}")
        self.name = name
        self.position = position


class OrderTypeSyntaxError(ShuffleError):
    exit_code = 2


class AddressSyntaxError(ShuffleError):
    exit_code = 2


class PartSyntaxError(ShuffleError):
    exit_code = 2


# Domain errors (exit code 1).


class NegativeExponent(ShuffleError):
    """Raised when a power is evaluated with an exponent below zero."""


class ArithmeticOverflow(ShuffleError):
    """Raised when an intermediate value leaves the signed integer range."""


class EmptyDomain(ShuffleError):
    pass


class MixedOrientation(ShuffleError):
    """Raised when one component mixes ``plus_inf`` and ``minus_inf`` domains."""


class OmegaFamilyNotLast(ShuffleError):
    pass


class DomainViolation(ShuffleError):
    """Raised when an address does not fit the domains of its component."""


class NotFoundWithinBudget(ShuffleError):
    """Raised when a search gives up before locating ``value``.

    The value may lie outside the support or the budget may simply be too
    small; the two cases cannot be told apart. ``budget_used`` lets callers
    retry with a larger budget.
    """

    def __init__(self, value: Optional[int], budget_used: int, detail: str = "") -> None:
        message = f"Value {value} not found within budget ({budget_used} steps used)"
        if detail:
            message = f"{message}: {detail}"
        message += "; it may lie outside the support or the budget may be too small"
        super().__init__(message)
        self.value = value
        self.budget_used = budget_used


class OrderTypeError(ShuffleError):
    pass


class SignMismatch(ShuffleError):
    pass


class BenchPresent(ShuffleError):
    pass


class MultiComponentUnsupported(ShuffleError):
    pass


class NotVerified(ShuffleError):
    """Raised when an operation needs a shuffle verified up to some bound."""


class NotAPermutation(ShuffleError):
    pass


class GeneralizedShapeUnsupported(ShuffleError):
    pass


class NoSuchPair(ShuffleError):
    """Raised when no snake is directly followed by a ladder at the given index."""


class PartSequenceTooLarge(ShuffleError):
    pass


class FixtureError(ShuffleError):
    """Raised when bundled fixture files cannot be located or written."""


class TransferError(ShuffleError):
    """Raised when a snake/ladder transfer is asked to move no elements."""
