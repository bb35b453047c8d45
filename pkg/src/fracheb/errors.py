"""Exception hierarchy shared by all modules."""


class FrachebError(Exception):
    """Base class for all errors raised by :mod:`fracheb`."""


class DomainError(FrachebError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """A Gamma function (or similar) was evaluated at a pole."""


class DivergenceError(FrachebError, ArithmeticError):
    """The requested quantity is infinite, e.g. a divergent Gauss sum."""


class AccuracyError(FrachebError, ArithmeticError):
    """An iterative or adaptive method did not reach its tolerance."""


class UnsupportedCaseError(FrachebError, ValueError):
    """A closed formula was requested outside its range of validity."""


class InadmissibleBoundError(DomainError):
    """The preconditions of an error bound are not met."""
