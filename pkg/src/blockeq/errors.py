"""Exception hierarchy shared by all blockeq modules."""


class BlockeqError(Exception):
    """Base class for every error raised by this package."""


class SelfLoopError(BlockeqError):
    """An edge joins a vertex to itself."""


class NotABlockGraphError(BlockeqError):
    """Some block is 2-connected but not complete.

    Carries a witness: two vertices that lie in a common block but are
    not adjacent (distance >= 2 inside the block).
    """

    def __init__(self, witness, message=None):
        self.witness = tuple(witness)
        super().__init__(message or f"block is not a clique, witness pair {self.witness}")


class UnknownVertexError(BlockeqError):
    """A vertex id is outside 0..n-1."""


class DisconnectedError(BlockeqError):
    """Operation defined only for connected graphs."""


class EdgelessError(BlockeqError):
    """Operation defined only for graphs with at least one edge."""


class EmptyGraphError(BlockeqError):
    """Operation defined only for nonempty graphs."""


class TooLargeError(BlockeqError):
    """Input exceeds the configured exhaustive-search cap; skip, do not crash."""


class WIsInClosedNeighborhoodError(BlockeqError):
    """v-AIS query with w inside N[v] (the status would be vacuous)."""


class PreconditionViolatedError(BlockeqError):
    """A growth-operation guard failed; carries the violated clause."""

    def __init__(self, clause, detail=""):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}: {detail}" if detail else clause)


class ExhaustedRetriesError(BlockeqError):
    """Random generation found no legal operation within the retry budget."""


class NoCutVertexError(BlockeqError):
    """Decomposition search requires a graph containing a cut vertex."""


class InstanceInvariantError(BlockeqError):
    """A packing instance violates sum(A) == k*B or a_i <= B."""


class NotUniformConsistentError(BlockeqError):
    """Uniform-instance parameters do not satisfy a*n == k*B."""


class TBelowThresholdError(BlockeqError):
    """Requested color count below k+2 for the uniform coloring routine."""


class UnrealizableError(BlockeqError):
    """A per-flower count vector cannot be turned into a proper coloring."""


class NotEquitableAtFixpointError(BlockeqError):
    """Product-maximizing recoloring stopped on a non-equitable coloring.

    Signals a gap between the implementation and the recoloring argument;
    the offending coloring is attached for inspection.
    """

    def __init__(self, coloring, class_sizes):
        self.coloring = coloring
        self.class_sizes = class_sizes
        super().__init__(f"local search fixpoint not equitable, class sizes {sorted(class_sizes)}")


class CycleFoundError(BlockeqError):
    """Two color classes induce a cycle (impossible for proper colorings)."""


class UncoloredVertexError(BlockeqError):
    """A coloring misses some vertex."""


class ColorOutOfRangeError(BlockeqError):
    """A color lies outside 1..t."""


class SearchBudgetExceededError(BlockeqError):
    """The exact search hit its node cap; result is unknown, not 'no'."""


class AlgorithmInvariantError(BlockeqError):
    """An internal postcondition failed; indicates a bug, not bad input."""
