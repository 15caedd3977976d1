"""Exception hierarchy shared by every module of the package."""


class DiskGrowthError(Exception):
    """Base class; the CLI maps it to exit code 1."""


class DomainError(DiskGrowthError, ValueError):
    """An argument lies outside the validity domain of a formula."""


class CapacityError(DiskGrowthError):
    """Parameters exceed the configured order/argument caps."""


class BracketError(DiskGrowthError):
    """No strategy produced a certified sign-change bracket."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NumericalError(DiskGrowthError):
    """Iteration or quadrature failed to converge."""


class EstimatorError(DiskGrowthError):
    """The growth-exponent fit is degenerate."""


class PathError(DiskGrowthError):
    """A gamma-path is empty after filtering."""


class ModeIndexError(DiskGrowthError, IndexError):
    """A mode index outside the supported conventions."""
