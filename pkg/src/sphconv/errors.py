"""Exception hierarchy shared by all sphconv modules."""


class SphconvError(Exception):
    """Base class for every error raised by this package."""


class ExprSyntaxError(SphconvError, ValueError):
    """Malformed expression source.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonIntegerExponent(ExprSyntaxError):
    """``^`` was given something other than an integer constant."""


class UnknownBuiltin(SphconvError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class DomainError(SphconvError, ValueError):
    """An argument lies outside the domain of the operation."""


class EvaluationError(SphconvError, ArithmeticError):
    """A map could not be evaluated at a point.

    ``z`` is the offending point and ``index`` its position in the sample
    array when the failure happened inside a vectorised evaluation.
    """

    def __init__(self, message, z=None, index=None):
        self.z = z
        self.index = index
        if index is not None:
            message = f"{message} [node {index}]"
        super().__init__(message)


class PoleError(EvaluationError):
    pass


class BranchError(EvaluationError):
    pass


class CriticalPointError(EvaluationError):
    """f'(z) = 0, so quantities dividing by f' are undefined."""


class LogOfZero(EvaluationError):
    pass


class DegenerateTangent(SphconvError, ValueError):
    pass


class TooFewSamples(SphconvError, ValueError):
    pass
