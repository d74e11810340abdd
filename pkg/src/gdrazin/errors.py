"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DrazinError(Exception):
    """Base class for all library errors."""


class ParseError(DrazinError, ValueError):
    """Malformed scalar literal or matrix file."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class ShapeError(DrazinError, ValueError):
    """Operands have incompatible dimensions."""


class HypothesisError(DrazinError, ValueError):
    """A precondition of an operation does not hold for the given input."""

    def __init__(self, condition: str, detail: str = ""):
        msg = f"hypothesis violated: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.condition = condition


class CertificateError(DrazinError, AssertionError):
    """A condition that must hold by construction failed.

    These are proved identities, so raising this always indicates a bug.
    """

    def __init__(self, failed: list[str]):
        super().__init__("certificate failed: " + ", ".join(failed))
        self.failed = list(failed)


class GenerationError(DrazinError, RuntimeError):
    """A generated instance did not satisfy its own hypotheses."""
