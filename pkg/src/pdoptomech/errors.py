"""Exception types raised by the library."""


class OptomechError(Exception):
    """Base class for all library errors."""


class DiagonalizationError(OptomechError, ValueError):
    """A parametrically driven cavity cannot be Bogoliubov-diagonalized."""


class SingularMatrixError(OptomechError, ArithmeticError):
    """``omega * I - H`` is singular (omega is an exact eigenvalue)."""


class NotSqueezeLikeError(OptomechError, ValueError):
    """Susceptibility pair does not admit the squeezed normal form."""


class NoPhysicalSqueezingError(OptomechError, ValueError):
    """A requested squeeze ratio has modulus >= 1."""


class UnstableSystemError(OptomechError):
    """The dynamics are unstable, so steady-state spectra do not exist."""


class QuadratureError(OptomechError, ArithmeticError):
    """Adaptive integration could not reach the requested tolerance."""


class DegenerateRouthError(OptomechError, ArithmeticError):
    """A Routh table pivot vanished; use the eigenvalue test instead."""


class ZeroTransmissionError(OptomechError, ZeroDivisionError):
    """Transmission amplitude T_{2,1} is zero."""


class ZeroReflectionError(OptomechError, ZeroDivisionError):
    """Reflection amplitude T_{2,2} is zero."""


class ConfigError(OptomechError, ValueError):
    """Scenario configuration could not be parsed or validated."""
