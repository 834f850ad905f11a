"""Exception types shared across the package."""


class EtcritError(Exception):
    """Base class for errors raised by etcrit solvers."""


class BracketError(EtcritError):
    """A root bracket has no sign change, or no bracket could be located."""


class ConvergenceError(EtcritError):
    """An iterative solver failed to reach its tolerance."""


class SingularJacobianError(ConvergenceError):
    """Newton iteration met a (numerically) singular Jacobian."""


class UnboundError(EtcritError):
    """Physics outcome: the requested bound solution does not exist.

    This is distinct from numerical failure; callers such as the CLI map it
    to a dedicated exit code rather than an error report.
    """


class NoRootError(EtcritError):
    """The zero-energy radius condition has no positive root (well not
    admissible for critical-coupling formulas)."""


class ExpressionError(EtcritError, ValueError):
    """Syntax or evaluation error in a custom-well expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position
