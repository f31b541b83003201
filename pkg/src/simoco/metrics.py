"""Trace metrics and the static-vs-mobile experiment matrix.

Four metrics summarize a trace: mean energy per delivered packet, rounds
until every initial 1-hop neighbor of some sink is dead, rounds until the
first death anywhere, and mean hop count per delivered packet. Lifetime
metrics are None ("not reached") when the run ends first; packet means are
None ("not available") when nothing was delivered.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .core import generate_network, one_hop_neighbors
from .engine import RoundRecord, ScenarioConfig, SimulationTrace, run_scenario
from .partitioning import quadrant_partition
from .placement import cnp_initial_sink_position


@dataclass(frozen=True)
class MetricsReport:
    avg_energy_per_packet: Optional[float]
    rounds_to_neighbor_death: Optional[int]
    rounds_to_first_death: Optional[int]
    avg_hop_count: Optional[float]
    packets_delivered: int


def avg_energy_per_packet(trace: SimulationTrace) -> Optional[float]:
    return _avg_energy(trace.rounds)


def avg_hop_count(trace: SimulationTrace) -> Optional[float]:
    return _avg_hops(trace.rounds)


def rounds_to_first_death(trace: SimulationTrace) -> Optional[int]:
    return _first_death(trace.rounds)


def rounds_to_neighbor_death(trace: SimulationTrace) -> Optional[int]:
    return _neighbor_death(trace.rounds, trace.initial_neighbor_sets)


def _avg_energy(rounds: Iterable[RoundRecord]) -> Optional[float]:
    total = 0.0
    count = 0
    for rec in rounds:
        for d in rec.deliveries:
            if d.delivered:
                total += d.energy
                count += 1
    return total / count if count else None


def _avg_hops(rounds: Iterable[RoundRecord]) -> Optional[float]:
    total = 0
    count = 0
    for rec in rounds:
        for d in rec.deliveries:
            if d.delivered:
                total += d.hop_count
                count += 1
    return total / count if count else None


def _first_death(rounds: Iterable[RoundRecord]) -> Optional[int]:
    for rec in rounds:
        if rec.deaths:
            return rec.round_index
    return None


def _neighbor_death(
    rounds: Iterable[RoundRecord], neighbor_sets: Sequence[frozenset[int]]
) -> Optional[int]:
    """Earliest round at which some partition's whole initial neighbor set is
    dead. Partitions with empty initial neighbor sets are excluded."""
    death_round: dict[int, int] = {}
    for rec in rounds:
        for node_id in rec.deaths:
            death_round.setdefault(node_id, rec.round_index)
    candidates = []
    for neighbors in neighbor_sets:
        if not neighbors:
            continue
        member_rounds = [death_round.get(node_id) for node_id in neighbors]
        if all(r is not None for r in member_rounds):
            candidates.append(max(member_rounds))
    return min(candidates) if candidates else None


def _packets_delivered(rounds: Iterable[RoundRecord]) -> int:
    return sum(1 for rec in rounds for d in rec.deliveries if d.delivered)


def compute_report(trace: SimulationTrace) -> MetricsReport:
    return MetricsReport(
        avg_energy_per_packet=avg_energy_per_packet(trace),
        rounds_to_neighbor_death=rounds_to_neighbor_death(trace),
        rounds_to_first_death=rounds_to_first_death(trace),
        avg_hop_count=avg_hop_count(trace),
        packets_delivered=_packets_delivered(trace.rounds),
    )


def report_from_export(config: ScenarioConfig, rounds: list[RoundRecord]) -> MetricsReport:
    """Recompute the full report from an exported trace plus its config.

    The per-round export carries everything except the initial neighbor
    sets, which are rebuilt by replaying the deterministic setup
    (deployment, partitioning, placement) from the config.
    """
    field = generate_network(
        config.n, config.base_side, config.base_n, config.comm_range,
        config.seed, config.initial_energy,
    )
    neighbor_sets = []
    for partition in quadrant_partition(field):
        if not partition.member_ids:
            neighbor_sets.append(frozenset())
            continue
        placement = cnp_initial_sink_position(field, partition)
        neighbor_sets.append(frozenset(one_hop_neighbors(field, placement.position)))
    return MetricsReport(
        avg_energy_per_packet=_avg_energy(rounds),
        rounds_to_neighbor_death=_neighbor_death(rounds, neighbor_sets),
        rounds_to_first_death=_first_death(rounds),
        avg_hop_count=_avg_hops(rounds),
        packets_delivered=_packets_delivered(rounds),
    )


@dataclass(frozen=True)
class MatrixRow:
    size: int
    mode: str
    seed: int
    report: Optional[MetricsReport]
    error: Optional[str] = None
    energy_conservation_rel_err: Optional[float] = None


def _run_cell(args: tuple[ScenarioConfig, int, str, int]) -> MatrixRow:
    base, size, mode, seed = args
    config = replace(base, n=size, mode=mode, seed=seed)
    try:
        trace = run_scenario(config)
    except Exception as exc:  # failed cell is reported, not fatal
        return MatrixRow(size, mode, seed, None, error=f"{type(exc).__name__}: {exc}")
    delivered = sum(
        d.energy for rec in trace.rounds for d in rec.deliveries if d.delivered
    )
    drained = sum(
        config.initial_energy - node.energy for node in trace.field.nodes
    )
    scale = max(abs(delivered), abs(drained), 1e-30)
    rel_err = abs(delivered - drained) / scale
    return MatrixRow(
        size, mode, seed, compute_report(trace), energy_conservation_rel_err=rel_err
    )


def resolve_workers(max_workers: Optional[int] = None) -> int:
    """Worker count for matrix cells: explicit argument, else SIMOCO_THREADS
    (0 = auto), else auto (one per CPU)."""
    if max_workers is None:
        env = os.environ.get("SIMOCO_THREADS", "").strip()
        if env:
            try:
                max_workers = int(env)
            except ValueError as exc:
                raise ValueError(f"SIMOCO_THREADS must be an integer, got {env!r}") from exc
        else:
            max_workers = 0
    if max_workers < 0:
        raise ValueError(f"worker count must be >= 0, got {max_workers}")
    if max_workers == 0:
        max_workers = os.cpu_count() or 1
    return max_workers


def run_experiment_matrix(
    base: ScenarioConfig,
    sizes: Sequence[int],
    seeds: Sequence[int],
    modes: Sequence[str] = ("static", "mobile"),
    max_workers: Optional[int] = None,
) -> list[MatrixRow]:
    """Run every (size, mode, seed) cell, in parallel across processes when
    more than one worker is available. Rows come back sorted by
    (size, mode, seed) regardless of completion order."""
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if not seeds:
        raise ValueError("seeds must be nonempty")
    cells = [
        (base, size, mode, seed)
        for size in sizes
        for mode in modes
        for seed in seeds
    ]
    workers = min(resolve_workers(max_workers), len(cells))
    if workers <= 1:
        rows = [_run_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_cell, cells, chunksize=1))
    rows.sort(key=lambda row: (row.size, row.mode, row.seed))
    return rows


CSV_HEADER = "size,mode,seed,avg_energy_j,neighbor_death_round,first_death_round,avg_hops,packets"


def _cell(value) -> str:
    return "" if value is None else repr(value) if isinstance(value, float) else str(value)


def emit_csv(rows: Iterable[MatrixRow]) -> str:
    """CSV for the experiment table; not-reached / not-available render as
    empty cells and rows sort by (size, mode, seed)."""
    out = [CSV_HEADER]
    for row in sorted(rows, key=lambda r: (r.size, r.mode, r.seed)):
        report = row.report
        if report is None:
            fields = ["", "", "", "", ""]
        else:
            fields = [
                _cell(report.avg_energy_per_packet),
                _cell(report.rounds_to_neighbor_death),
                _cell(report.rounds_to_first_death),
                _cell(report.avg_hop_count),
                str(report.packets_delivered),
            ]
        out.append(",".join([str(row.size), row.mode, str(row.seed)] + fields))
    return "\n".join(out) + "\n"


def mean_over_seeds(
    rows: Iterable[MatrixRow], size: int, mode: str, metric: str
) -> Optional[float]:
    """Mean of one report metric across the seeds of a (size, mode) cell;
    None-valued runs are excluded, and an all-None cell yields None."""
    values = [
        getattr(row.report, metric)
        for row in rows
        if row.size == size and row.mode == mode and row.report is not None
    ]
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None
