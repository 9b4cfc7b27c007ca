"""Exception types shared across the package."""

from __future__ import annotations


class RBRedError(Exception):
    """Base class for all errors raised by rbred."""


class NonUniformError(RBRedError, ValueError):
    """Some node has subtrees of differing black depth."""


class ParseError(RBRedError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SizeLimitError(RBRedError, ValueError):
    """Requested size exceeds the configured cap of an exhaustive or tabular method."""


class InputOverflowError(RBRedError, OverflowError):
    """Input lies outside the exact integer range the fast solvers accept."""


class InvalidCoordError(RBRedError, ValueError):
    pass


class DivisibilityViolation(RBRedError, ArithmeticError):
    """2n + a(n) + o(n) was not a multiple of 3. Indicates a bug, never expected."""


class AllRedError(RBRedError, ZeroDivisionError):
    pass


class EmptyDomainError(RBRedError, RuntimeError):
    pass
