"""Exception types raised across the package."""


class DicksonError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DicksonError, ValueError):
    """Argument lies outside the region where a formula is evaluated."""


class DegenerateInput(DomainError):
    pass


class ZeroParameter(DomainError):
    pass


class UnsupportedIndex(DomainError):
    pass


class ModulusMismatch(DomainError):
    pass


class BoundExceeded(DomainError):
    pass


class PoleError(DomainError):
    pass


class ParameterPole(DomainError):
    pass


class ConvergenceError(DicksonError, ArithmeticError):
    pass


class IllConditioned(DicksonError, ArithmeticError):
    pass


class EmptyBasis(DicksonError):
    """The Stoll-form linear system has only the trivial solution."""


class FormatUnsupported(DicksonError, ValueError):
    pass
