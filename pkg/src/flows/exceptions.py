class TriflowError(Exception):
    """Base class for every error raised by the flows app."""


class GraphError(TriflowError):
    """Malformed multigraph: loops, dangling endpoints, duplicate ids."""


class UnknownEdge(GraphError):
    def __init__(self, edge_id):
        super().__init__(f"unknown edge id {edge_id!r}")
        self.edge_id = edge_id


class UnknownVertex(GraphError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex


class SurgeryError(GraphError):
    """Invalid lift, path, contraction set or 2-sum pairing."""


class TriTreeError(TriflowError):
    """Invalid triangle-tree sequence, triangle-path request, or crystal."""


class BullPairError(TriflowError):
    """Invalid bull pair or malformed bull-growing step."""


class OracleTooLarge(TriflowError):
    """The input exceeds the configured oracle guardrail."""

    def __init__(self, what, size, limit):
        super().__init__(f"too large for oracle: {what}={size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class DisconnectedGraph(TriflowError):
    pass


class NotTwoEdgeConnected(TriflowError):
    pass


class PartitionError(TriflowError):
    """Partition preconditions violated, or an invalid partition was supplied."""
