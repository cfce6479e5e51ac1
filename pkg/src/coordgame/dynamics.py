"""Myopic best-response dynamics with inertial tie-breaking.

Each vertex scores a strategy by the number of neighbours playing it. All
vertices update synchronously: a vertex keeps its strategy whenever that
strategy is among its best responses (there is an implicit epsilon cost to
switching), and otherwise switches to a best response chosen uniformly at
random. Equilibria are therefore absorbing, and a repeated state is always an
equilibrium, so ``run`` checks the Nash condition directly each step.

RNG convention: per step, exactly one uniform draw is consumed for every
vertex that must switch and has two or more best responses, in increasing
vertex order (a single batched ``rng.random`` call). Vertices forced to a
unique best response consume no randomness. This makes trajectories
reproducible given a generator and lets deterministic cycles be recognised as
such.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph, _bits
from .partitions import VertexPartition, profile_to_partition
from .seeding import as_rng

EQUILIBRIUM = "equilibrium"
CYCLE = "cycle"
TIMEOUT = "timeout"

DEFAULT_MAX_STEPS = 10_000
DEFAULT_WINDOW = 34


@dataclass(frozen=True)
class Outcome:
    """Terminal classification of one trajectory.

    ``cluster_number`` is the number of parts at equilibrium and 0 otherwise
    (0 marks a run that did not converge). For statistically detected cycles,
    ``false_positive_bound`` records 2**(period - window), the chance that a
    non-cycle survived the confirmation window.
    """

    kind: str
    steps: int
    cluster_number: int = 0
    partition: VertexPartition | None = None
    period: int = 0
    deterministic: bool | None = None
    false_positive_bound: float | None = None


def payoff(g: Graph, profile: Sequence[int], v: int, strategy: int) -> int:
    """Number of neighbours of ``v`` playing ``strategy``."""
    if not 0 <= v < g.order:
        raise ValueError(f"vertex {v} out of range for order {g.order}")
    return sum(1 for u in _bits(g.masks[v]) if profile[u] == strategy)


def best_response_set(g: Graph, profile: Sequence[int], v: int) -> set[int]:
    """Payoff-maximising strategies among those of v's neighbours plus v's own.

    Only strategies actually present near ``v`` are candidates; for an
    isolated vertex this is just its own strategy.
    """
    if not 0 <= v < g.order:
        raise ValueError(f"vertex {v} out of range for order {g.order}")
    counts: dict[int, int] = {}
    for u in _bits(g.masks[v]):
        s = profile[u]
        counts[s] = counts.get(s, 0) + 1
    counts.setdefault(profile[v], 0)
    best = max(counts.values())
    return {s for s, c in counts.items() if c == best}


def random_profile(g: Graph, c: int, rng=None) -> tuple[int, ...]:
    """Assign each vertex an independent uniform strategy from 0..c-1."""
    if c < 1:
        raise ValueError(f"strategy count must be >= 1, got {c}")
    rng = as_rng(rng)
    return tuple(int(x) for x in rng.integers(0, c, size=g.order))


def _advance(g: Graph, u: np.ndarray, rng) -> tuple[np.ndarray, bool]:
    """One synchronous update on a dense-id profile.

    Returns (next profile, was_nash); when the profile is a Nash equilibrium
    it is returned unchanged and no randomness is consumed.
    """
    n = g.order
    c = int(u.max()) + 1
    heads, tails = g.directed_edge_arrays()
    counts = np.bincount(heads * c + u[tails], minlength=n * c).reshape(n, c)
    best = counts.max(axis=1)
    keep = counts[np.arange(n), u] == best
    if keep.all():
        return u, True
    new = u.copy()
    switching = np.flatnonzero(~keep)
    options = [np.flatnonzero(counts[v] == best[v]) for v in switching]
    n_tied = sum(1 for o in options if len(o) > 1)
    draws = rng.random(n_tied) if n_tied else np.empty(0)
    di = 0
    for v, opts in zip(switching, options):
        if len(opts) == 1:
            new[v] = opts[0]
        else:
            new[v] = opts[int(draws[di] * len(opts))]
            di += 1
    return new, False


def _dense(profile: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Remap arbitrary strategy ids to 0..k-1 preserving order; return (ids, values)."""
    u = np.asarray(profile, dtype=np.int64)
    if u.ndim != 1:
        raise ValueError("profile must be one-dimensional")
    if u.size and u.min() < 0:
        raise ValueError("strategy ids must be non-negative")
    values, dense = np.unique(u, return_inverse=True)
    return dense.astype(np.int64), values


def step(g: Graph, profile: Sequence[int], rng=None) -> tuple[int, ...]:
    """Synchronous best-response update of every vertex (one time step)."""
    if len(profile) != g.order:
        raise ValueError("profile length must equal graph order")
    rng = as_rng(rng)
    dense, values = _dense(profile)
    new, _ = _advance(g, dense, rng)
    return tuple(int(values[s]) for s in new)


def verify_cycle(g: Graph, states: Sequence[Sequence[int]]) -> bool:
    """True iff the state sequence is a cycle traversed with probability 1.

    Every consecutive transition (including the wrap back to ``states[0]``)
    must be forced: switching vertices need a singleton best-response set and
    staying vertices must hold a current best response. A constant sequence is
    not a cycle (period < 2).
    """
    seq = [tuple(s) for s in states]
    if len(seq) < 2 or len(set(seq)) < 2:
        return False
    for s, nxt in zip(seq, seq[1:] + seq[:1]):
        for v in range(g.order):
            br = best_response_set(g, s, v)
            if nxt[v] == s[v]:
                if s[v] not in br:
                    return False
            elif br != {nxt[v]}:
                return False
    return True


def run(
    g: Graph,
    initial: Sequence[int],
    rng=None,
    max_steps: int = DEFAULT_MAX_STEPS,
    window: int = DEFAULT_WINDOW,
) -> Outcome:
    """Iterate the dynamics until equilibrium, a cycle, or ``max_steps``.

    Equilibrium is recognised by the Nash condition on the current profile
    (absorbing under inertial ties, so no look-ahead is needed). A recurrence
    u(t) = u(t-k) triggers a cycle check: if every transition around the loop
    is forced the cycle is reported as deterministic; otherwise matches at the
    same lag must persist for ``window`` consecutive steps, giving a
    statistical report with false-positive bound 2**(k - window).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if window < 4:
        raise ValueError("window must be >= 4")
    if len(initial) != g.order:
        raise ValueError("profile length must equal graph order")
    rng = as_rng(rng)
    u, _values = _dense(initial)

    states: list[tuple[int, ...]] = [tuple(int(x) for x in u)]
    last_seen: dict[tuple[int, ...], int] = {states[0]: 0}
    streak_lag = 0
    streak_len = 0

    for t in range(max_steps + 1):
        new, nash = _advance(g, u, rng)
        if nash:
            part = profile_to_partition(states[t])
            return Outcome(
                kind=EQUILIBRIUM,
                steps=t,
                cluster_number=len(part.parts),
                partition=part,
            )
        if t == max_steps:
            return Outcome(kind=TIMEOUT, steps=max_steps)
        u = new
        state = tuple(int(x) for x in u)
        now = t + 1
        prev = last_seen.get(state)
        if prev is None:
            streak_lag = streak_len = 0
        else:
            k = now - prev  # smallest lag: prev is the most recent occurrence
            if verify_cycle(g, states[prev:now]):
                return Outcome(kind=CYCLE, steps=now, period=k, deterministic=True)
            if k == streak_lag:
                streak_len += 1
            else:
                streak_lag, streak_len = k, 1
            if streak_len >= window:
                return Outcome(
                    kind=CYCLE,
                    steps=now,
                    period=k,
                    deterministic=False,
                    false_positive_bound=2.0 ** (k - window),
                )
        last_seen[state] = now
        states.append(state)

    raise AssertionError("unreachable")
