"""Exception types shared across the package."""


class SlavnovLabError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateParams(SlavnovLabError):
    """A Vandermonde factor, pole factor or prefactor vanishes."""


class NotOnShell(SlavnovLabError):
    """Rapidities that must satisfy the Bethe equations do not."""


class NotConverged(SlavnovLabError):
    """A numerical limit or iteration failed to stabilise."""


class SingularWeight(SlavnovLabError):
    """A Boltzmann weight has a vanishing denominator x - y + 1."""


class CardinalityMismatch(SlavnovLabError):
    """Parameter sets have incompatible sizes."""


class NonFinite(SlavnovLabError):
    """A floating point computation produced NaN or Inf."""


class DivisionByNonUnit(SlavnovLabError, ZeroDivisionError):
    """Division by a jet whose constant term is zero."""


class ZeroDenominator(SlavnovLabError, ZeroDivisionError):
    """A difference quotient was requested at a zero variable."""


class NoSolutionFound(SlavnovLabError):
    """The Bethe solver exhausted its seeds without a valid solution."""
