"""Exception types shared across the package."""


class FermientError(Exception):
    """Base class for fermient-specific failures."""


class InvalidCorrelationError(FermientError):
    """Correlation matrix violates Hermiticity or its spectrum leaves [0, 1]."""


class NumericalFailureError(FermientError):
    """A numerical procedure left its validity envelope (residues, tails, fits)."""


class NumberConservationError(FermientError):
    """A state expected to have fixed particle number leaks between sectors."""


class ConfigError(FermientError):
    """Invalid sweep or CLI configuration."""
