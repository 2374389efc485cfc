"""Exception types shared across the package."""


class QQCorrError(Exception):
    """Base class for all package errors."""


class NotHermitian(QQCorrError):
    """Input matrix fails the Hermitian symmetry check."""


class NotPSD(QQCorrError):
    """Input matrix has an eigenvalue below the PSD tolerance floor."""


class InvalidTemperature(QQCorrError):
    """Temperature must be a finite positive number."""


class OverflowGuard(QQCorrError):
    """Boltzmann exponents are not representable even after min-shift rescaling."""


class InvalidRotation(QQCorrError):
    """Matrix is not orthogonal with determinant +1 within tolerance."""


class NoBracket(QQCorrError):
    """Threshold pre-scan found no crossing of the requested level."""


class UnknownPreset(QQCorrError):
    """Figure preset name is not one of fig1..fig6."""


class ConfigError(QQCorrError):
    """Config file is malformed or describes an invalid sweep."""


class SweepPointError(QQCorrError):
    """A measure evaluation failed at an identified grid point."""

    def __init__(self, message, series_value=None, axis_value=None):
        super().__init__(message)
        self.series_value = series_value
        self.axis_value = axis_value
