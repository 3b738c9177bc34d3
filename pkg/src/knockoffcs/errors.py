"""Exception hierarchy. CLI exit codes hang off the two base classes."""


class KnockoffCSError(Exception):
    exit_code = 1


class ParameterError(KnockoffCSError, ValueError):
    """Invalid argument or configuration value."""

    exit_code = 2


class NumericalError(KnockoffCSError, ArithmeticError):
    """A computation could not be carried out on the given data."""

    exit_code = 3


class DegenerateSignalError(NumericalError):
    pass


class RankDeficiencyError(NumericalError):
    pass


class KnockoffConstructionError(NumericalError):
    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class ConvergenceError(NumericalError):
    """Iteration limit reached; ``last_iterate`` holds the final state."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate
