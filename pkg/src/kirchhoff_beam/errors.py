"""Exception types shared across the package."""


class KirchhoffError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(KirchhoffError, ValueError):
    """Invalid grid, parameter, or solver configuration."""


class DomainError(KirchhoffError, ValueError):
    """Function argument outside its mathematical domain."""


class InvalidInputError(KirchhoffError, ValueError):
    """Right-hand side data is malformed (wrong length, NaN, inf)."""


class NoPositiveSolution(KirchhoffError):
    """The requested parameter sits in a range that admits no positive solution."""

    def __init__(self, message: str, lam: float | None = None,
                 threshold: float | None = None):
        super().__init__(message)
        self.lam = lam
        self.threshold = threshold


class ParameterDegenerate(KirchhoffError):
    """b = 0 makes the eigenproblem linear: the amplitude is undetermined,
    so no single solution can honestly be returned."""


class ConvergenceFailure(KirchhoffError):
    """An iteration exhausted its budget without meeting its tolerance."""

    def __init__(self, message: str, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class ProbeFailure(KirchhoffError):
    """A diagnostic fixed-point probe failed to settle; this is distinct from
    evidence of non-uniqueness."""
