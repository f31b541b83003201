"""Round-based simulation of static-sink and mobile-sink (SiMoCo) scenarios.

Each round every traffic source generates one packet. A static sink sits at
its partition's CNP placement forever, so every source routes its packet to
that position the same round, multi-hop where needed. A mobile sink cycles
through the sojourn tour one position per round (initial -> points ->
initial -> ...) and collects on arrival: a node hands over its accumulated
packets in the round the sink sojourns at the tour position serving it,
which by the tour's coverage guarantee is a single-hop exchange. Static
mode is exactly the mobile machinery with a one-position cycle.

All randomness flows from the scenario seed: deployment uses
random.Random(seed), traffic sampling uses random.Random(f"traffic:{seed}").
Identical configs therefore produce bit-identical traces.

A run ends at max_rounds, when every node is dead, or as soon as every
partition has gone one full sink cycle without a delivery or a death; from
such a state the simulation is provably periodic with no further energy
spend, so nothing observable would ever change.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from .core import NetworkField, Position, generate_network, one_hop_neighbors
from .mobility import SojournTour, generate_tour
from .partitioning import Partition, quadrant_partition
from .placement import SinkPlacement, cnp_initial_sink_position
from .routing import (
    ConnectivityGraph,
    RadioEnergyModel,
    build_graph,
    deliver_packet,
    min_hop_route,
    remove_node,
    sink_distance_field,
)

MODES = ("static", "mobile")
TRAFFIC_MODES = ("all_nodes_each_round", "random_sources")


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str = "static"
    n: int = 100
    base_side: float = 200.0
    base_n: int = 100
    comm_range: float = 45.0
    initial_energy: float = 0.5
    e_elec: float = 50e-9
    e_amp: float = 100e-12
    packet_bits: int = 2000
    seed: int = 1
    max_rounds: int = 10000
    traffic: str = "all_nodes_each_round"
    sources_per_round: int = 10

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.traffic not in TRAFFIC_MODES:
            raise ValueError(f"traffic must be one of {TRAFFIC_MODES}, got {self.traffic!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.base_n < 1:
            raise ValueError(f"base_n must be >= 1, got {self.base_n}")
        if self.max_rounds < 1:
            raise ValueError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.sources_per_round < 1:
            raise ValueError(f"sources_per_round must be >= 1, got {self.sources_per_round}")
        if self.base_side <= 0 or self.comm_range <= 0 or self.initial_energy <= 0:
            raise ValueError("base_side, comm_range and initial_energy must be positive")

    def radio(self) -> RadioEnergyModel:
        return RadioEnergyModel(self.e_elec, self.e_amp, self.packet_bits)


class Delivery(NamedTuple):
    source: int
    hop_count: int
    energy: float
    delivered: bool


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    sink_positions: tuple[Position, ...]
    deliveries: tuple[Delivery, ...]
    deaths: tuple[int, ...]


@dataclass
class SimulationTrace:
    config: ScenarioConfig
    placements: list[Optional[SinkPlacement]]
    tours: Optional[list[Optional[SojournTour]]]
    rounds: list[RoundRecord]
    initial_neighbor_sets: list[frozenset[int]]
    field: NetworkField  # final node state after the last round


class _PartitionState:
    """Mutable per-partition runtime: sink cycle, caches, service schedule."""

    __slots__ = (
        "partition",
        "members",
        "cycle",
        "assigned_members",
        "graphs",
        "dist_fields",
        "quiet",
    )

    def __init__(self, partition: Partition, field: NetworkField, cycle: tuple[Position, ...]):
        self.partition = partition
        self.members = sorted(partition.member_ids)
        self.cycle = cycle
        # Each member is served at the cycle position nearest to it, preferring
        # positions that cover it (guaranteed to exist by tour coverage);
        # remaining ties break on the earliest position index.
        by_id = field.by_id
        r = field.comm_range
        groups: list[list[int]] = [[] for _ in cycle]
        for node_id in self.members:
            pos = by_id[node_id].pos
            best = min(
                range(len(cycle)),
                key=lambda j: (math.dist(pos, cycle[j]) > r, math.dist(pos, cycle[j]), j),
            )
            groups[best].append(node_id)
        self.assigned_members = [tuple(g) for g in groups]
        self.graphs: dict[int, ConnectivityGraph] = {}
        self.dist_fields: dict[int, dict[int, int]] = {}
        self.quiet = 0

    def graph_at(self, field: NetworkField, pos_idx: int) -> ConnectivityGraph:
        graph = self.graphs.get(pos_idx)
        if graph is None:
            graph = build_graph(field, self.partition, self.cycle[pos_idx])
            self.graphs[pos_idx] = graph
        return graph

    def dist_field_at(self, field: NetworkField, pos_idx: int) -> dict[int, int]:
        df = self.dist_fields.get(pos_idx)
        if df is None:
            df = sink_distance_field(self.graph_at(field, pos_idx))
            self.dist_fields[pos_idx] = df
        return df

    def on_death(self, node_id: int) -> None:
        for graph in self.graphs.values():
            remove_node(graph, node_id)
        self.dist_fields.clear()


def _quadrant_center(partition: Partition) -> Position:
    b = partition.bounds
    return Position((b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0)


def run_scenario(config: ScenarioConfig) -> SimulationTrace:
    """Generate, place, (in mobile mode) plan tours, then simulate rounds."""
    field = generate_network(
        config.n, config.base_side, config.base_n, config.comm_range,
        config.seed, config.initial_energy,
    )
    partitions = quadrant_partition(field)
    model = config.radio()

    placements: list[Optional[SinkPlacement]] = []
    tours: list[Optional[SojournTour]] = []
    states: list[Optional[_PartitionState]] = []
    initial_neighbor_sets: list[frozenset[int]] = []
    for partition in partitions:
        if not partition.member_ids:
            placements.append(None)
            tours.append(None)
            states.append(None)
            initial_neighbor_sets.append(frozenset())
            continue
        placement = cnp_initial_sink_position(field, partition)
        placements.append(placement)
        if config.mode == "mobile":
            tour = generate_tour(field, partition, placement)
            tours.append(tour)
            cycle = tour.cycle()
        else:
            tours.append(None)
            cycle = (placement.position,)
        states.append(_PartitionState(partition, field, cycle))
        initial_neighbor_sets.append(frozenset(one_hop_neighbors(field, placement.position)))

    by_id = field.by_id
    part_of = {}
    for k, partition in enumerate(partitions):
        for node_id in partition.member_ids:
            part_of[node_id] = k
    idle_positions = [
        placements[k].position if placements[k] is not None else _quadrant_center(partitions[k])
        for k in range(4)
    ]

    traffic_rng = random.Random(f"traffic:{config.seed}")
    backlog = {node.id: 0 for node in field.nodes}
    rounds: list[RoundRecord] = []
    all_nodes_traffic = config.traffic == "all_nodes_each_round"

    for round_index in range(1, config.max_rounds + 1):
        alive_ids = [node.id for node in field.nodes if node.alive]
        if not alive_ids:
            break

        if all_nodes_traffic:
            for node_id in alive_ids:
                backlog[node_id] += 1
        else:
            count = min(config.sources_per_round, len(alive_ids))
            for node_id in traffic_rng.sample(alive_ids, count):
                backlog[node_id] += 1

        pos_indices = [
            (round_index - 1) % len(state.cycle) if state is not None else 0
            for state in states
        ]
        sink_positions = tuple(
            states[k].cycle[pos_indices[k]] if states[k] is not None else idle_positions[k]
            for k in range(4)
        )

        deliveries: list[Delivery] = []
        deaths: list[int] = []
        pending_deaths: set[int] = set()
        activity = [False, False, False, False]

        for k in range(4):
            state = states[k]
            if state is None:
                continue
            pos_idx = pos_indices[k]
            sources = [
                node_id
                for node_id in state.assigned_members[pos_idx]
                if by_id[node_id].alive and backlog[node_id] > 0
            ]
            if not sources:
                continue
            graph = state.graph_at(field, pos_idx)
            dist = state.dist_field_at(field, pos_idx)
            for source in sources:
                node = by_id[source]
                while node.alive and backlog[source] > 0:
                    if source not in dist:
                        break  # unreachable this round: sends nothing, pays nothing
                    route = min_hop_route(graph, source, dist)
                    record = deliver_packet(field, model, route)
                    backlog[source] -= 1
                    if record.delivered:
                        deliveries.append(
                            Delivery(source, record.hop_count, record.total_energy, True)
                        )
                        activity[k] = True
                        if record.died:
                            for dead_id in record.died:
                                deaths.append(dead_id)
                                dead_k = part_of[dead_id]
                                states[dead_k].on_death(dead_id)
                                activity[dead_k] = True
                            dist = state.dist_field_at(field, pos_idx)
                    else:
                        deliveries.append(Delivery(source, record.hop_count, 0.0, False))
                        pending_deaths.update(record.underpowered)
                        break  # dropped: stop serving this source this round

        # Underpowered nodes could not afford a packet they were routed on;
        # nothing was deducted from them, but they leave the network now.
        for node_id in sorted(pending_deaths):
            node = by_id[node_id]
            if node.alive:
                node.alive = False
                deaths.append(node_id)
                dead_k = part_of[node_id]
                states[dead_k].on_death(node_id)
                activity[dead_k] = True

        rounds.append(
            RoundRecord(round_index, sink_positions, tuple(deliveries), tuple(deaths))
        )

        frozen = True
        for k in range(4):
            state = states[k]
            if state is None:
                continue
            state.quiet = 0 if activity[k] else state.quiet + 1
            if state.quiet < len(state.cycle):
                frozen = False
        if frozen:
            break

    return SimulationTrace(
        config=config,
        placements=placements,
        tours=tours if config.mode == "mobile" else None,
        rounds=rounds,
        initial_neighbor_sets=initial_neighbor_sets,
        field=field,
    )


def trace_lines(trace: SimulationTrace) -> list[str]:
    """Newline-delimited trace export, one JSON object per round."""
    lines = []
    for rec in trace.rounds:
        obj = {
            "round": rec.round_index,
            "sinks": [[p.x, p.y] for p in rec.sink_positions],
            "deliveries": [[d.source, d.hop_count, d.energy, d.delivered] for d in rec.deliveries],
            "deaths": list(rec.deaths),
        }
        lines.append(json.dumps(obj, separators=(",", ":")))
    return lines


def parse_trace_lines(lines: list[str]) -> list[RoundRecord]:
    """Rebuild round records from an exported trace."""
    rounds = []
    for line in lines:
        if not line.strip():
            continue
        obj = json.loads(line)
        rounds.append(
            RoundRecord(
                round_index=obj["round"],
                sink_positions=tuple(Position(x, y) for x, y in obj["sinks"]),
                deliveries=tuple(Delivery(s, h, e, ok) for s, h, e, ok in obj["deliveries"]),
                deaths=tuple(obj["deaths"]),
            )
        )
    return rounds


def scenario_with(config: ScenarioConfig, **overrides) -> ScenarioConfig:
    return replace(config, **overrides)
