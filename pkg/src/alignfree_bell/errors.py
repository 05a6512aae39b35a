"""Exception types raised by the simulation pipeline."""


class AlignfreeBellError(Exception):
    """Base class for all library errors."""


class NotHermitian(AlignfreeBellError):
    """Matrix handed to the Hermitian eigensolver is not Hermitian."""


class IndexOutOfRange(AlignfreeBellError):
    """Qubit index outside the register."""


class DegenerateBasis(AlignfreeBellError):
    """Numerically extracted total-spin-zero subspace has the wrong dimension."""


class PartyMismatch(AlignfreeBellError):
    """Setting pair does not consist of one Alice and one Bob setting."""


class WrongFamily(AlignfreeBellError):
    """Outcome classified with the predicate of the other setting family."""


class ClassifierSettingMismatch(AlignfreeBellError):
    """Aggregation requested with a classifier that does not match the table's settings."""


class ConditionHasZeroProbability(AlignfreeBellError):
    """Conditional probability requested on an event of (numerically) zero probability."""


class NoSolution(AlignfreeBellError):
    """Constraint nullspace is empty at the requested threshold."""


class AmbiguousSolution(AlignfreeBellError):
    """Constraint nullspace has dimension greater than one."""

    def __init__(self, message, basis_coefficients):
        super().__init__(message)
        self.basis_coefficients = basis_coefficients


class InsufficientConditioningEvents(AlignfreeBellError):
    """No sampled events satisfy the conditioning clause of a conditional estimate."""
