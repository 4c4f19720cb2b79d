"""Exception types shared across the package."""


class CharmatchError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CharmatchError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EvalDomainError(CharmatchError, ValueError):
    """An approximant was evaluated at a point outside its domain."""


class JetDomainError(CharmatchError, ValueError):
    """A jet primitive was applied outside its domain (e.g. ln of a jet
    whose constant term is not positive)."""

    def __init__(self, primitive: str, message: str):
        self.primitive = primitive
        super().__init__(f"{primitive}: {message}")


class SingularSystemError(CharmatchError, ValueError):
    """A linear system that should be solvable is degenerate (zero pivot
    on a triangular diagonal, or a degenerate Pade block)."""


class FamilyMismatchError(CharmatchError, TypeError):
    """A characteristic-number family cannot measure the given approximant."""
