"""Exception hierarchy shared by the library and the command line."""


class CobosonError(Exception):
    """Base class for all errors raised by :mod:`cobosqueeze`."""


class DomainError(CobosonError, ValueError):
    """An argument lies outside the range where the quantity is defined."""


class DegenerateParameterError(CobosonError, ValueError):
    """Squeezing magnitude ``r = 0``: the operator reduces to the nilpotent ``B``."""


class ResourceCapError(CobosonError):
    """The requested fermionic Fock space exceeds the hard size cap."""


class ToleranceError(CobosonError, ArithmeticError):
    """A computed quantity violates a numerical invariant beyond tolerance."""
