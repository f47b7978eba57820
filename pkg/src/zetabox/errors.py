"""Exception hierarchy shared by all numerical kernels."""


class ZetaboxError(Exception):
    """Base class for every error raised by zetabox."""


class DomainError(ZetaboxError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class PoleError(ZetaboxError, ValueError):
    """Evaluation requested exactly at a pole.

    ``point`` holds the offending argument so callers can switch to the
    Laurent-data routines.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotAPoleError(ZetaboxError, ValueError):
    """Laurent data requested at a point where the residue vanishes."""


class ConvergenceError(ZetaboxError, RuntimeError):
    """A truncated sum or extrapolation could not be certified."""


class UnsupportedCaseError(ZetaboxError, NotImplementedError):
    """Parameter combination outside the implemented representations."""


class StepTooLargeError(DomainError):
    """Finite-difference step too large relative to the evaluation point."""
