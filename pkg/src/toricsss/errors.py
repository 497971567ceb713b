"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeP(ToricError, ValueError):
    pass


class ReducibleModulus(ToricError, ValueError):
    pass


class FieldTooLarge(ToricError, ValueError):
    pass


class DivisionByZero(ToricError, ZeroDivisionError):
    pass


class SizeOverflow(ToricError, ValueError):
    pass


class RankMismatch(ToricError, ValueError):
    pass


class NotInsideH(ToricError, ValueError):
    pass


class InvalidFamilyParams(ToricError, ValueError):
    pass


class NonConvex(ToricError, ValueError):
    pass


class InvalidCode(ToricError, ValueError):
    pass


class BudgetExceeded(ToricError, RuntimeError):
    """An exhaustive computation would exceed its configured cap."""


class NotFullSupport(ToricError, ValueError):
    pass


class DegenerateScheme(ToricError, ValueError):
    """The full player set cannot recover the secret."""


class UnqualifiedSet(ToricError, ValueError):
    pass


class ProductNotDetermined(ToricError, ValueError):
    pass


class ConstraintViolated(ToricError, ValueError):
    pass
