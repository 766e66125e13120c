"""Exception hierarchy shared by all modules.

Exit-code mapping for the CLI lives in cli.py; library code raises these.
"""


class IrredError(Exception):
    """Base class for all package errors."""


class InvalidInputError(IrredError, ValueError):
    """Malformed mathematical input (zero polynomials, bad signatures, ...)."""


class ConfigError(IrredError, ValueError):
    """Malformed run configuration; message carries the offending path."""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class VerificationError(IrredError):
    """A mathematical verification failed (field checks, unit basis)."""


class DegeneracyError(IrredError):
    """All twisted norms collapsed to 1; the unit bound degenerates."""


class UnsupportedPrimeError(IrredError):
    """Auxiliary prime cannot be used (divides the index, or is ramified
    where the caller requires unramified splitting)."""


class SizeCapError(IrredError):
    """A configured size cap was exceeded (residue field size, coordinate
    digit guard, continued-fraction period)."""


class BadReductionError(IrredError):
    """Curve model has vanishing reduced discriminant at the given prime."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class EmptySweepError(IrredError):
    """Every residue pair of a family sweep was skipped; the auxiliary
    prime is unusable."""
