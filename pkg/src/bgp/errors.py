"""Exception types shared across the package."""


class BgpError(Exception):
    """Base class for every error raised by this package."""


class MalformedEdge(BgpError):
    """Self-loop, out-of-range endpoint, duplicate edge, or unparsable edge line."""


class DisconnectedInput(BgpError):
    """The input graph is not connected."""


class EmptySubset(BgpError):
    """A nonempty vertex set was required."""


class OverlappingSets(BgpError):
    """Two vertex sets that must be disjoint overlap."""


class SubsetTooSmall(BgpError):
    """The vertex set is below the operation's minimum size."""


class DisconnectedSubset(BgpError):
    """The induced subgraph on the given vertex set is not connected."""


class DegenerateSubset(BgpError):
    """The vertex set is too small to bipartition meaningfully."""


class KTooLarge(BgpError):
    """Requested more parts than vertices."""


class KTooSmall(BgpError):
    """The algorithm needs a larger part count."""


class NTooSmall(BgpError):
    """The graph is below the algorithm's minimum order."""


class MismatchedShape(BgpError):
    """Two ranks (or an algorithm and a part count) have incompatible shapes."""


class InstanceTooLarge(BgpError):
    """The instance exceeds the exact solver's hard size guard."""


class InvalidSpec(BgpError):
    """A generator spec names an unknown family or infeasible parameters."""


class StructureViolation(BgpError):
    """An internal structural invariant failed; indicates a bug, never expected."""
