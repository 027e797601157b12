"""Exception types raised by the library."""


class ResetOrbitError(Exception):
    """Base class for all library errors."""


class NonPositiveParameter(ResetOrbitError, ValueError):
    pass


class NotUnderdamped(ResetOrbitError, ValueError):
    pass


class MissingBranch(ResetOrbitError, ValueError):
    """A jump from x2 = 0 needs an explicit sign branch."""


class OriginInput(ResetOrbitError, ValueError):
    pass


class HorizonExceeded(ResetOrbitError, RuntimeError):
    """No event was found before the search horizon."""


class DomainError(ResetOrbitError, ValueError):
    """The point is outside the domain where the quantity is defined."""


class BracketNotFound(ResetOrbitError, RuntimeError):
    pass


class InvalidStart(ResetOrbitError, ValueError):
    pass
