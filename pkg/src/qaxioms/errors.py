"""Exception hierarchy. The CLI maps each family to an exit code."""


class QAxiomsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(QAxiomsError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 1)."""


class DimensionMismatchError(InvalidInputError):
    pass


class NonFiniteError(InvalidInputError):
    pass


class ZeroStateError(InvalidInputError):
    """The zero vector is not a physical state."""


class NotHermitianError(InvalidInputError):
    pass


class NonUnitaryOperatorError(InvalidInputError):
    """A non-unitary operator was handed to the standard unitary engine."""


class ZeroProbabilityError(InvalidInputError):
    """Collapse onto an outcome the state assigns (numerically) zero probability."""


class SingularOperatorError(QAxiomsError, ValueError):
    """Singular evolution operator; it would map some nonzero state to zero (exit code 2)."""


class NumericContractError(QAxiomsError, ArithmeticError):
    """A numerical postcondition failed, e.g. probabilities not summing to one (exit code 3)."""
