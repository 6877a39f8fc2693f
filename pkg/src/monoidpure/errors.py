"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MonoidPureError(Exception):
    """Base class for every error raised by this package."""


class InputError(MonoidPureError, ValueError):
    """Malformed or inconsistent input (dimension mismatch, bad file, ...)."""


class DimensionError(InputError):
    pass


class ContainmentError(MonoidPureError, ValueError):
    """A sublattice argument is not contained in the larger lattice."""


class MonoidError(InputError):
    """Generator list does not describe a valid affine monoid."""


class ZeroGeneratorError(MonoidError):
    pass


class NegativeCoordinateError(MonoidError):
    pass


class RedundantGeneratorError(MonoidError):
    """A generator is a nonnegative integer combination of the others.

    ``index`` is the offending position and ``witness`` maps the indices of
    the remaining generators to their coefficients.
    """

    def __init__(self, index: int, witness: dict[int, int], message: str):
        super().__init__(message)
        self.index = index
        self.witness = witness


class PreconditionError(MonoidPureError, ValueError):
    """Operation called outside its domain (e.g. alpha not in (1/m)M)."""


class Undecided(MonoidPureError):
    """A computation hit its budget before reaching an exact answer.

    Never used to hide a wrong answer: callers either surface it as an
    ``undecided`` field or propagate it.
    """

    def __init__(self, reason: str, budget: str | None = None):
        super().__init__(reason)
        self.reason = reason
        self.budget = budget
