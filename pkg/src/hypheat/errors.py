"""Exception types shared across the package."""


class HypheatError(Exception):
    """Base class for errors raised by hypheat."""


class UsageError(HypheatError, ValueError):
    """Invalid arguments: unsupported dimension, bad parameter range, mismatched inputs."""


class InvalidPointError(HypheatError, ValueError):
    """Coordinates violate the hyperboloid constraint beyond tolerance."""


class DomainError(HypheatError, ValueError):
    """Input outside the mathematical domain of an operation (e.g. negative radicand)."""


class AccuracyError(HypheatError, RuntimeError):
    """Numerical routine could not reach its accuracy target.

    ``achieved`` carries the estimated relative error actually obtained.
    """

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved relative error {achieved:.3e})")
        self.achieved = achieved


class SeriesVerificationError(HypheatError, RuntimeError):
    """An exact series check failed.  ``k`` names the offending coefficient index."""

    def __init__(self, message: str, k: int):
        super().__init__(f"{message} (k={k})")
        self.k = k
