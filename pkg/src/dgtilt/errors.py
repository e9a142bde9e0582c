"""Exception hierarchy shared by every layer."""


class DGError(Exception):
    pass


class DivisionByZero(DGError, ZeroDivisionError):
    pass


class FieldMismatch(DGError, TypeError):
    pass


class ParseError(DGError, ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", col {col}"
            where += ": "
        super().__init__(where + msg)


class SemanticError(DGError, ValueError):
    pass


class UnresolvedReference(DGError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ShapeMismatch(DGError, ValueError):
    pass


class NotASubspace(DGError, ValueError):
    pass


class SideMismatch(DGError, ValueError):
    pass


class NotAField(DGError, ValueError):
    pass


class ResolutionBudgetExceeded(DGError):
    """No quasi-isomorphic semifree module was found within the caps.

    This is "not certified perfect within budget", never a proof that the
    module is not perfect.
    """


class DegreeWindowExceeded(ResolutionBudgetExceeded):
    pass


class HypothesisFailure(DGError):
    pass


class HypothesisNotCertified(HypothesisFailure):
    pass


class RigidityFailed(HypothesisFailure):
    def __init__(self, degree, dim):
        self.degree = degree
        self.dim = dim
        super().__init__(f"Ext^{degree}(X,X) has dimension {dim}")


class ExtNotConcentrated(HypothesisFailure):
    def __init__(self, degree, dim):
        self.degree = degree
        self.dim = dim
        super().__init__(f"Ext^{degree}(M,X) has dimension {dim}")


class NotSelfDual(HypothesisFailure):
    pass


class PhiCheckFailed(DGError):
    def __init__(self, msg, pair=None):
        self.pair = pair
        super().__init__(msg if pair is None else f"{msg} at basis pair {pair}")
