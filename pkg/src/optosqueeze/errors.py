"""Exception hierarchy for optosqueeze."""


class OptoSqueezeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OptoSqueezeError, ValueError):
    """A physical parameter lies outside the domain of a formula."""


class NonConvergence(OptoSqueezeError, RuntimeError):
    """An iterative procedure ran out of iterations."""


class NumericalError(OptoSqueezeError, ArithmeticError):
    """Base class for failures of a numerical routine."""


class StepSizeError(NumericalError):
    pass


class NonFiniteError(NumericalError):
    pass


class UnstableSystem(NumericalError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class SingularSystem(NumericalError):
    pass


class NonPhysicalState(NumericalError):
    """A covariance matrix violates the uncertainty principle."""


class DegenerateState(NumericalError):
    pass


class SpecError(OptoSqueezeError, ValueError):
    """Malformed sweep specification."""


class UnknownFigure(SpecError, KeyError):
    pass


class EmptyGrid(OptoSqueezeError, RuntimeError):
    pass


class ParseError(OptoSqueezeError, ValueError):
    pass


class ValidationError(OptoSqueezeError, ValueError):
    """Invalid configuration; ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
