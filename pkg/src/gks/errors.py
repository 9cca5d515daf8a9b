"""Exception types shared across the solver."""


class GksError(Exception):
    """Base class for all solver errors."""


class ConfigError(GksError):
    """Invalid or inconsistent run configuration."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonPhysicalState(GksError):
    """Negative density or internal energy encountered."""

    def __init__(self, message, where=None):
        if where is not None:
            message = f"{message} at {where}"
        super().__init__(message)
        self.where = where


class SingularMomentSystem(GksError):
    """Moment matrix factorization failed (non-physical lambda)."""


class VacuumFormation(GksError):
    """Riemann problem states generate vacuum."""


class NoVortexFound(GksError):
    """No recirculation detected where a vortex was expected."""


class DegenerateError(GksError):
    """Degenerate input to a diagnostic (e.g. zero error in an order study)."""


class IoError(GksError):
    """File output or ingestion failure."""
