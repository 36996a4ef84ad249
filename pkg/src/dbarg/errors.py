"""Exception hierarchy shared by every module of the package."""


class DbargError(Exception):
    """Base class for all errors raised by dbarg."""


class InvalidParameterError(DbargError, ValueError):
    pass


class ZeroFactorError(DbargError, ArithmeticError):
    """A product that must be nonzero contains a vanishing factor."""


class NonConvergenceError(DbargError, RuntimeError):
    pass


class DomainError(DbargError, ValueError):
    """Argument outside the region where a closed form is valid."""


class OutOfDomainError(DomainError):
    """|z|^2 lies outside the coherent-state existence annulus."""


class DegenerateDomainError(DbargError, ValueError):
    pass


class UnsupportedError(DbargError, NotImplementedError):
    pass


class NoCoherentStatesError(DbargError, ValueError):
    pass


class NoClosedFormError(DbargError, NotImplementedError):
    pass


class InfeasibleInversionError(DbargError, ValueError):
    pass


class QuadratureError(DbargError, RuntimeError):
    pass
