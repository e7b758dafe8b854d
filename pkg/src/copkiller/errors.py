"""Exception hierarchy shared by every module of the package."""


class CopKillerError(Exception):
    """Base class for all errors raised by copkiller."""


# graph construction and I/O
class GraphError(CopKillerError):
    pass


class InvalidParams(GraphError, ValueError):
    pass


class ParseError(GraphError, ValueError):
    pass


class FormatError(ParseError):
    """Malformed graph6 string."""


class VertexIndexError(GraphError, IndexError):
    """An edge endpoint is outside ``0..n-1``."""


class SelfLoopError(GraphError, ValueError):
    pass


class TooLarge(CopKillerError, ValueError):
    pass


class DuplicateEdgeWarning(UserWarning):
    """Duplicate edges were collapsed while parsing an edge list."""


# pursuit solver
class IsolatedVertex(CopKillerError, ValueError):
    """The forced-move game is undefined on graphs with an isolated vertex."""


class StateNotFound(CopKillerError, KeyError):
    pass


# value framework
class SolverError(CopKillerError):
    pass


class NotMonotone(SolverError):
    """Priority settling would visit a state out of order."""


class EmptyStateSpace(SolverError, ValueError):
    pass


class IllPosed(SolverError):
    """Relaxation has not converged after ``state_count`` rounds."""


class NoConvergence(SolverError):
    pass


# gambler / random killer
class DistributionError(CopKillerError, ValueError):
    pass


class AllZeroDistribution(DistributionError):
    pass


class LayerMismatch(DistributionError):
    pass


class BadVertex(CopKillerError, ValueError):
    pass


class BadDegree(CopKillerError, ValueError):
    pass


class CyclicPolicy(SolverError):
    pass
