"""Monte Carlo experiments on Erdős–Rényi graphs.

``estimate_basin`` measures how often random initial profiles reach the
consensus equilibrium on one graph; ``basin_sweep`` repeats that over a grid
of graph orders and connectivities; ``connectedness_probability`` evaluates
the exact probability that G(n, p) is connected for overlay curves.

Every trial draws its own generator from (master seed, graph index, trial
index), so sweeps are reproducible and independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dynamics import CYCLE, DEFAULT_MAX_STEPS, DEFAULT_WINDOW, EQUILIBRIUM, run, random_profile
from .graphs import Graph, er_gnp
from .seeding import substream

_CONNECT_ATTEMPT_CAP = 100_000


@lru_cache(maxsize=None)
def _connected_fraction(n: int, p: Fraction) -> Fraction:
    """P(G(n, p) connected), exactly, by recursion on the component of vertex 1:
    subtract, for each way the component can have i < n vertices, the chance
    of no edge between it and the rest."""
    if n == 1:
        return Fraction(1)
    q = 1 - p
    total = Fraction(1)
    for i in range(1, n):
        total -= (
            _connected_fraction(i, p)
            * math.comb(n - 1, i - 1)
            * q ** (i * (n - i))
        )
    return total


def connectedness_probability(n: int, p: float) -> float:
    """Exact connectivity probability of G(n, p), evaluated rationally.

    Rational arithmetic avoids the cancellation the alternating recursion
    suffers in floating point; practical up to n ~ 64.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    return float(_connected_fraction(n, Fraction(p)))


def threshold_curve(kind: str, n: int, c: float = 1.0) -> float:
    """Overlay curves for sweep plots, as edge-count levels.

    ``half_n_log_n``: n ln(n) / 2 (connectivity threshold),
    ``linear_cn``: c * n, ``binom_minus``: C(n, 2) - 1.
    """
    if n < 2:
        raise ValueError("threshold curves need n >= 2")
    if kind == "half_n_log_n":
        return 0.5 * n * math.log(n)
    if kind == "linear_cn":
        return c * n
    if kind == "binom_minus":
        return float(math.comb(n, 2) - 1)
    raise ValueError(f"unknown threshold curve {kind!r}")


@dataclass(frozen=True)
class BasinEstimate:
    """Monte Carlo estimate of the consensus basin on one graph.

    ``outcome_histogram`` maps "equilibrium:<clusters>", "cycle:<period>" and
    "timeout" to frequencies summing to 1; ``consensus_fraction`` is the
    "equilibrium:1" frequency with its binomial standard error. For
    disconnected graphs (flagged by ``component_count`` > 1) the two
    closed-form guesses for the all-components-agree probability are reported
    alongside, without endorsing either.
    """

    trials: int
    consensus_fraction: float
    stderr: float
    outcome_histogram: dict[str, float]
    component_count: int
    consensus_predictions: dict[str, float] | None = None


def _histogram_key(outcome) -> str:
    if outcome.kind == EQUILIBRIUM:
        return f"equilibrium:{outcome.cluster_number}"
    if outcome.kind == CYCLE:
        return f"cycle:{outcome.period}"
    return "timeout"


def estimate_basin(
    g: Graph,
    trials: int,
    c: int | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    window: int = DEFAULT_WINDOW,
    seed: int = 0,
) -> BasinEstimate:
    """Run ``trials`` trajectories from uniform random initial profiles.

    Uniform sampling makes the consensus frequency an unbiased estimate of
    the basin weight over the whole state space. ``c`` defaults to the graph
    order (maximal initial diversity).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if c is None:
        c = g.order
    counts: dict[str, int] = {}
    hits = 0
    for trial in range(trials):
        rng = substream(seed, trial)
        outcome = run(g, random_profile(g, c, rng), rng, max_steps, window)
        key = _histogram_key(outcome)
        counts[key] = counts.get(key, 0) + 1
        if outcome.kind == EQUILIBRIUM and outcome.cluster_number == 1:
            hits += 1
    phi = hits / trials
    r = len(g.connected_components())
    predictions = None
    if r > 1 and c > 1:
        predictions = {
            "components_rule": 1.0 / r ** (c - 1),
            "strategies_rule": 1.0 / c ** (r - 1),
        }
    return BasinEstimate(
        trials=trials,
        consensus_fraction=phi,
        stderr=math.sqrt(phi * (1.0 - phi) / trials),
        outcome_histogram={k: v / trials for k, v in sorted(counts.items())},
        component_count=r,
        consensus_predictions=predictions,
    )


@dataclass(frozen=True)
class SweepRecord:
    """One trial of the sweep: graph statistics plus the trajectory outcome.

    ``cluster_number`` is 0 exactly when the outcome is not an equilibrium;
    ``period`` is 0 unless the outcome is a cycle.
    """

    graph_seed: int
    order: int
    edges: int
    edge_density: float
    mean_degree: float
    trial: int
    outcome: str
    cluster_number: int
    steps: int
    period: int


def _sample_cell_graph(seed: int, graph_index: int, n: int, p: float, connected_only: bool) -> Graph:
    rng = substream(seed, graph_index)
    for _ in range(_CONNECT_ATTEMPT_CAP):
        g = er_gnp(n, p, rng)
        if not connected_only or g.is_connected():
            return g
    raise RuntimeError(
        f"no connected G({n}, {p}) found in {_CONNECT_ATTEMPT_CAP} attempts"
    )


def _sweep_graph_task(args) -> list[SweepRecord]:
    seed, graph_index, n, p, trials, c, max_steps, window, connected_only = args
    g = _sample_cell_graph(seed, graph_index, n, p, connected_only)
    density = g.edge_density() if n >= 2 else 0.0
    records = []
    strategies = c if c is not None else n
    for trial in range(trials):
        rng = substream(seed, graph_index, trial)
        outcome = run(g, random_profile(g, strategies, rng), rng, max_steps, window)
        records.append(
            SweepRecord(
                graph_seed=graph_index,
                order=n,
                edges=g.edge_count,
                edge_density=density,
                mean_degree=g.mean_degree(),
                trial=trial,
                outcome=outcome.kind,
                cluster_number=outcome.cluster_number,
                steps=outcome.steps,
                period=outcome.period,
            )
        )
    return records


def basin_sweep(
    orders,
    values,
    graphs_per_cell: int,
    trials_per_graph: int,
    c: int | None = None,
    seed: int = 0,
    parameter: str = "mean_degree",
    connected_only: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> list[SweepRecord]:
    """Sample G(n, p) cells over orders x values and run trials on each graph.

    ``values`` are mean degrees (p = d / (n-1)) or edge densities (p = d),
    per ``parameter``. Graph index is global across cells, so every graph and
    trial has a stable stream no matter how cells are chunked over workers.
    """
    if graphs_per_cell < 1 or trials_per_graph < 1:
        raise ValueError("graphs_per_cell and trials_per_graph must be >= 1")
    if parameter not in ("mean_degree", "density"):
        raise ValueError(f"unknown sweep parameter {parameter!r}")
    tasks = []
    graph_index = 0
    for n in orders:
        if n < 2:
            raise ValueError("sweep orders must be >= 2")
        for value in values:
            if parameter == "mean_degree":
                p = min(1.0, value / (n - 1))
            else:
                p = value
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"cell ({n}, {value}) gives invalid edge probability {p}")
            for _ in range(graphs_per_cell):
                tasks.append(
                    (seed, graph_index, n, p, trials_per_graph, c, max_steps, window, connected_only)
                )
                graph_index += 1
    records: list[SweepRecord] = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_sweep_graph_task, tasks, chunksize=4):
                records.extend(chunk)
    else:
        for task in tasks:
            records.extend(_sweep_graph_task(task))
    return records


@dataclass(frozen=True)
class HeatmapCell:
    order: int
    degree_low: float
    degree_high: float
    count: int
    equilibrium_frequency: float
    mean_cluster_number: float


def summarize_heatmap(records, bin_width: float = 1.0) -> list[HeatmapCell]:
    """Aggregate sweep records into (order, mean-degree bin) cells.

    Cluster numbers average over all records in the cell, so non-convergent
    trials (cluster 0) drag the mean down rather than being dropped.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    buckets: dict[tuple[int, int], list] = {}
    for rec in records:
        idx = int(rec.mean_degree // bin_width)
        buckets.setdefault((rec.order, idx), []).append(rec)
    cells = []
    for (order, idx), recs in sorted(buckets.items()):
        eq = sum(1 for r in recs if r.outcome == EQUILIBRIUM)
        cells.append(
            HeatmapCell(
                order=order,
                degree_low=idx * bin_width,
                degree_high=(idx + 1) * bin_width,
                count=len(recs),
                equilibrium_frequency=eq / len(recs),
                mean_cluster_number=sum(r.cluster_number for r in recs) / len(recs),
            )
        )
    return cells
