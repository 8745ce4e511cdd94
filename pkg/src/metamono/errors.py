"""Exception types shared across the package."""


class MetamonoError(Exception):
    """Base class for all package errors."""


class ConfigurationError(MetamonoError):
    """A config key, flag, or requested size is out of the supported range."""


class DomainError(MetamonoError):
    """A point or parameter lies outside the domain a routine supports."""


class NumericError(MetamonoError):
    """An iteration failed to converge or produced non-finite values."""


class FormatError(MetamonoError):
    """An input file does not match the expected layout."""


class DegeneracyError(MetamonoError):
    """Orthogonalization hit a numerically dependent pivot."""


class IllConditioningError(MetamonoError):
    """A linear solve was abandoned because the system is too ill-conditioned."""


class OverflowGuardError(MetamonoError):
    """An evaluation was refused because it would overflow double precision."""
