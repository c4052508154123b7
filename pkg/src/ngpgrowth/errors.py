"""Exception hierarchy.  Each family maps to its own CLI exit code."""


class NGPError(Exception):
    exit_code = 1


class GraphParseError(NGPError, ValueError):
    exit_code = 2


class HypothesisError(NGPError, ValueError):
    """Input lies outside the hypotheses of the requested method."""

    exit_code = 3


class NotLinkRegularError(HypothesisError):
    def __init__(self, message, witness=None, graph_name=None):
        super().__init__(message)
        self.witness = witness
        self.graph_name = graph_name


class ResourceBudgetError(NGPError, RuntimeError):
    exit_code = 4


class InvariantViolation(NGPError, RuntimeError):
    exit_code = 5


class ZeroDenominatorError(ZeroDivisionError):
    pass


class NoSeriesExpansionError(ValueError):
    pass


class SingularSystemError(ArithmeticError):
    pass
