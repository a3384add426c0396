"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError -> 1, PreconditionError
(including its subclasses) -> 2, NoFitError / TheoremViolationError -> 3.
"""


class EpsmultError(Exception):
    """Base class for all package errors."""


class ParseError(EpsmultError):
    """Malformed ideal string, family spec file or CLI argument."""


class PreconditionError(EpsmultError):
    """An operation was called outside its documented domain."""


class DimensionMismatchError(PreconditionError):
    """Operands live in polynomial rings with different variable counts."""


class ZeroIdealError(PreconditionError):
    """The zero ideal has no saturation / H^0 semantics here."""


class InsufficientDataError(PreconditionError):
    """A table is too small for the requested interpolation."""


class NoFitError(EpsmultError):
    """No quasi-polynomial of the requested shape reproduces the table.

    Carries the best period tried and the first index where it failed, so
    callers can report how close the fit came.
    """

    def __init__(self, message, best_period=None, first_fail=None):
        super().__init__(message)
        self.best_period = best_period
        self.first_fail = first_fail


class TheoremViolationError(EpsmultError):
    """A degree-d coefficient came out residue-dependent.

    For Noetherian families of monomial ideals with maximal analytic spread
    this cannot happen; seeing it signals a bug or a non-Noetherian input.
    """
