"""Exception types raised across the package.

Every error carries a short ``code`` naming the failure case; the CLI prints it
on stderr and maps all of them to exit status 2.
"""


class PLapError(Exception):
    code = "PLapError"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


# graph validation / construction
class GraphError(PLapError):
    code = "GraphError"


class DuplicateEdge(GraphError):
    code = "DuplicateEdge"


class SelfLoop(GraphError):
    code = "SelfLoop"


class NonpositiveWeight(GraphError):
    code = "NonpositiveWeight"


class NonpositiveMeasure(GraphError):
    code = "NonpositiveMeasure"


class BadLabel(GraphError):
    code = "BadLabel"


class BadSignature(GraphError):
    code = "BadSignature"


class BadParams(GraphError):
    code = "BadParams"


class TooLargeForSearch(GraphError):
    code = "TooLargeForSearch"


class EmptyGraph(GraphError):
    code = "EmptyGraph"


# file format
class ParseError(PLapError):
    code = "ParseError"

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


class VersionMismatch(ParseError):
    code = "VersionMismatch"


# operator / solvers
class BadP(PLapError):
    code = "BadP"


class ZeroFunction(PLapError):
    code = "ZeroFunction"


class NotConnected(PLapError):
    code = "NotConnected"


class NotSignless(PLapError):
    code = "NotSignless"


class BadInitial(PLapError):
    code = "BadInitial"


class MaxIterExceeded(PLapError):
    """Raised when the bracket gap has not closed within ``max_iter`` steps.

    ``lower``/``upper`` hold the last brackets (already shifted back by the
    potential constant), ``trace`` the partial trace if one was recorded.
    """

    code = "MaxIterExceeded"

    def __init__(self, message, lower=None, upper=None, iters=None, trace=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.iters = iters
        self.trace = trace


class OddP(PLapError):
    code = "OddP"


class TooLarge(PLapError):
    code = "TooLarge"


class NoConvergence(PLapError):
    code = "NoConvergence"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
