"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class LiftError(ArithmeticError):
    """Hensel lifting was asked to lift a root that is not simple."""


class BudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the allowed number of candidates."""


class IntegrityError(RuntimeError):
    """A structural assumption behind the counting formulas failed to hold.

    Raised instead of silently correcting, e.g. when an eigenspace over
    Z/p^eZ is not free of the expected rank.
    """
