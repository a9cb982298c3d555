"""Exception hierarchy shared across the toolkit."""


class HopfGaloisError(Exception):
    """Base class for all toolkit errors."""


class StructureError(HopfGaloisError):
    """An input violates a structural precondition (not a subgroup, not
    closed under composition, inconsistent automorphism data, ...)."""


class CapabilityError(HopfGaloisError):
    """A request exceeds a documented size bound of the toolkit."""


class DomainError(HopfGaloisError):
    """An argument lies outside the mathematical domain of an operation."""


class ConsistencyError(HopfGaloisError):
    """An internal invariant failed; signals bad input data or a bug."""


class TheoremViolationError(ConsistencyError):
    """A verified equivalence failed on concrete data; always a bug."""


class FixtureValidationError(HopfGaloisError):
    """A fixture file failed validation; carries every failure found."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
