"""Exception and warning types raised across the package."""


class DuffncError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensionError(DuffncError, ValueError):
    pass


class DomainError(DuffncError, ValueError):
    """A parameter lies outside the physical domain of an operation."""


class ContractViolation(DuffncError, ValueError):
    """An input breaks a documented precondition (e.g. a non-normalized state)."""


class ResonanceError(DuffncError, ValueError):
    """The drive frequency sits on the harmonic resonance, where first-order amplitudes diverge."""


class InvalidConfigError(DuffncError, ValueError):
    pass


class DegenerateFitError(DuffncError, ValueError):
    pass


class NumericalFailure(DuffncError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class AccuracyError(DuffncError, RuntimeError):
    """Two quadrature estimates that should agree do not."""

    def __init__(self, message, coarse, fine):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine


class RegimeWarning(UserWarning):
    """Parameters fall outside the range where the perturbative states were validated."""
