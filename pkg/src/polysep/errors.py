"""Exception hierarchy shared by all modules."""


class PolysepError(Exception):
    pass


class ParameterError(PolysepError, ValueError):
    """Invalid input parameters (bad degree, non-prime, empty sweep...)."""


class DegreeError(ParameterError):
    """Operation undefined for the zero polynomial or too small a degree."""


class ThresholdError(PolysepError):
    """The asymptotic sign pattern is not (yet) visible at this parameter."""


class BracketNotFoundError(ThresholdError):
    pass


class ConvergenceError(PolysepError):
    """Root finding did not converge within the precision budget."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
