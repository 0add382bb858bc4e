"""Exception types shared across the library."""


class ParameterError(ValueError):
    """A model or configuration parameter is invalid (bad family/theta/d/n...)."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GeneratorInfinityError(DomainError):
    """The generator was evaluated at a point where it diverges (t = 0)."""


class RangeError(ValueError):
    """A target value (e.g. Kendall's tau) is unattainable for the family.

    Carries the attainable interval in ``interval``.
    """

    def __init__(self, message: str, interval: tuple[float, float]):
        super().__init__(message)
        self.interval = interval


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within the subdivision budget.

    ``estimate`` and ``error_bound`` hold the partial result.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class EmptyLevelSetError(RuntimeError):
    """No sample point fell inside the level-set neighborhood."""


class StudyError(RuntimeError):
    """A Monte Carlo study could not produce any usable replication."""
