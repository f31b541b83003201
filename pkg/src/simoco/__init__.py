"""Seed-reproducible simulator for multi-partitioned wireless sensor networks
with CNP sink placement and SiMoCo sink mobility."""

from .core import (
    NetworkField,
    Position,
    SensorNode,
    centroid,
    euclidean_distance,
    generate_network,
    one_hop_neighbors,
)
from .engine import (
    Delivery,
    RoundRecord,
    ScenarioConfig,
    SimulationTrace,
    parse_trace_lines,
    run_scenario,
    trace_lines,
)
from .metrics import (
    MatrixRow,
    MetricsReport,
    avg_energy_per_packet,
    avg_hop_count,
    compute_report,
    emit_csv,
    mean_over_seeds,
    report_from_export,
    rounds_to_first_death,
    rounds_to_neighbor_death,
    run_experiment_matrix,
)
from .mobility import (
    CoverageBuffer,
    CoverageBufferEntry,
    SojournTour,
    build_coverage_buffer,
    generate_tour,
    next_sojourn_point,
    tour_export_lines,
)
from .partitioning import Partition, quadrant_index, quadrant_partition
from .placement import SinkPlacement, cnp_initial_sink_position, cnp_iterates
from .routing import (
    SINK_ID,
    ConnectivityGraph,
    DeliveryRecord,
    RadioEnergyModel,
    Route,
    build_graph,
    deliver_packet,
    min_hop_route,
    rx_energy,
    sink_distance_field,
    tx_energy,
)

__all__ = [
    "CoverageBuffer",
    "CoverageBufferEntry",
    "ConnectivityGraph",
    "Delivery",
    "DeliveryRecord",
    "MatrixRow",
    "MetricsReport",
    "NetworkField",
    "Partition",
    "Position",
    "RadioEnergyModel",
    "RoundRecord",
    "Route",
    "SINK_ID",
    "ScenarioConfig",
    "SensorNode",
    "SimulationTrace",
    "SinkPlacement",
    "SojournTour",
    "avg_energy_per_packet",
    "avg_hop_count",
    "build_coverage_buffer",
    "build_graph",
    "centroid",
    "cnp_initial_sink_position",
    "cnp_iterates",
    "compute_report",
    "deliver_packet",
    "emit_csv",
    "euclidean_distance",
    "generate_network",
    "generate_tour",
    "mean_over_seeds",
    "min_hop_route",
    "next_sojourn_point",
    "one_hop_neighbors",
    "parse_trace_lines",
    "quadrant_index",
    "quadrant_partition",
    "report_from_export",
    "rounds_to_first_death",
    "rounds_to_neighbor_death",
    "run_experiment_matrix",
    "run_scenario",
    "rx_energy",
    "sink_distance_field",
    "tour_export_lines",
    "trace_lines",
    "tx_energy",
]
