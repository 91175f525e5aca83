"""Exception types raised by bohrlab."""


class BohrLabError(Exception):
    """Base class for all library errors."""


class DomainError(BohrLabError, ValueError):
    """A radius or point lies outside the open unit disk."""


class SingularInputError(BohrLabError, ArithmeticError):
    """The normalized area S_r/pi reached 1, so S_r/(pi - S_r) is undefined."""


class KindMismatchError(BohrLabError, TypeError):
    """An analytic functional got a harmonic pair, or the other way round."""


class BracketError(BohrLabError, ValueError):
    """The root bracket has no sign change."""


class ConvergenceError(BohrLabError, RuntimeError):
    """An iteration hit its limit before meeting the tolerance."""
