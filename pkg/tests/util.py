"""Shared test helpers."""

from simoco import NetworkField, Partition, Position, SensorNode
from simoco.partitioning import Rect


def make_field(points, comm_range=45.0, side=None, energy=0.5, seed=0) -> NetworkField:
    """Field with nodes at explicit positions, ids in listing order."""
    if side is None:
        side = max((max(x, y) for x, y in points), default=1.0) or 1.0
    nodes = [SensorNode(i, Position(float(x), float(y)), energy) for i, (x, y) in enumerate(points)]
    return NetworkField(nodes=nodes, side=float(side), comm_range=float(comm_range), seed=seed)


def whole_field_partition(field: NetworkField, pid: int = 0) -> Partition:
    """A partition containing every node of the field."""
    return Partition(
        pid,
        frozenset(node.id for node in field.nodes),
        Rect(0.0, 0.0, field.side, field.side),
    )
