"""Exception hierarchy shared by every bogocert module.

Each exception carries the name of the module that raised it and a short
machine-readable category, which the command line front end maps to an
exit code.
"""

from __future__ import annotations


class BogocertError(Exception):
    category = "internal"

    def __init__(self, message: str, *, module: str = "bogocert") -> None:
        super().__init__(message)
        self.module = module


class DomainError(BogocertError, ValueError):
    """An input violates a documented precondition."""

    category = "domain"


class LiftingError(BogocertError, ArithmeticError):
    category = "lifting"


class ReducibleError(DomainError):
    category = "reducible"


class IrreducibilityNotCertified(DomainError):
    category = "irreducibility-not-certified"


class NotMaximalOrder(DomainError):
    """The power basis order is not maximal at the requested prime."""

    category = "not-maximal-order"


class UnsupportedConfiguration(DomainError):
    category = "unsupported"


class PrecisionExhausted(BogocertError, ArithmeticError):
    category = "precision"


class QuotientTooLarge(BogocertError):
    category = "quotient-too-large"


class SearchExhausted(BogocertError):
    category = "search-exhausted"


class VerificationFailed(BogocertError):
    """A computed object failed its own internal consistency check."""

    category = "verification"
