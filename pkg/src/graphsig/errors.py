"""Exception hierarchy shared across the package.

Every domain error raised by the library derives from GraphSigError, so
callers (and the CLI) can distinguish expected failures from bugs.
"""


class GraphSigError(Exception):
    """Base class for all domain errors raised by graphsig."""


class IndexOutOfRangeError(GraphSigError):
    """A vertex or eigenvector index lies outside the valid range."""


class SelfLoopError(GraphSigError):
    """An edge connects a vertex to itself."""


class DuplicateEdgeError(GraphSigError):
    """The same unordered vertex pair appears more than once."""


class NonPositiveWeightError(GraphSigError):
    """An edge weight is zero, negative, or not finite."""


class IsolatedVertexError(GraphSigError):
    """A degree-zero vertex makes the degree matrix singular."""


class LengthMismatchError(GraphSigError):
    """Signal length does not match the graph or decomposition size."""


class NotSymmetricError(GraphSigError):
    """The matrix handed to the eigensolver is not symmetric."""


class NoConvergenceError(GraphSigError):
    """The Jacobi sweep budget was exhausted before convergence."""


class OrderExceedsSizeError(GraphSigError):
    """Requested filter order exceeds the number of eigenvalues."""


class IllConditionedError(GraphSigError):
    """A normal-equation pivot collapsed below the conditioning floor."""


class NegativeAlphaError(GraphSigError):
    """The smoothing weight must be a non-negative real."""


class DisconnectedError(GraphSigError):
    """The Fiedler value is numerically zero, so the bipartition is ambiguous."""


class TooSmallError(GraphSigError):
    """The operation needs at least two vertices."""


class ZeroNoiseError(GraphSigError):
    """SNR is undefined when the observed signal equals the reference."""


class CannotConnectError(GraphSigError):
    """Radius growth failed to connect the generated graph."""


class ParseError(GraphSigError):
    """A text input (edge list or CSV) is malformed; names the line."""
