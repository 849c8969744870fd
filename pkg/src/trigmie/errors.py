"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class NumericalDegeneracyError(ArithmeticError):
    """A coefficient denominator vanished to working precision."""
