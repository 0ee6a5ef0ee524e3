"""Exception hierarchy shared by every module of the package."""


class MCFError(Exception):
    """Base class for all errors raised by mcfrac."""


class InsufficientPrecision(MCFError):
    """A result depends on coefficients outside the known window."""


class DomainError(MCFError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidCF(MCFError, ValueError):
    """A pre-continued fraction fails a required condition."""


class InvalidEpsilon(MCFError, ValueError):
    """A user-supplied epsilon violates the transform's valuation constraint."""


class InternalError(MCFError):
    """An internal consistency check failed (bug or corrupted precision)."""
