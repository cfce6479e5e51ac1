"""Exhaustive census of equilibrium partitions on small connected graphs.

Partitions are stored in vector form (per-vertex part labels 1..d, assigned in
first-seen vertex order, which strips pure relabellings up front). Two
partitions of the same graph count as one if some combination of part
relabelling and graphical symmetry maps one to the other; this is decided by
expanding each labelled partition into a graph (label-i vertices gain i
pendants) and testing graph isomorphism over the surviving relabellings.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .graphs import Graph
from .isomorphism import canonical_form, graph_from_code, graph_isomorphic
from .partitions import VertexPartition, is_equilibrium, iter_candidate_partitions

CONNECTED_COUNTS = (1, 1, 2, 6, 21, 112, 853)  # orders 1..7


@lru_cache(maxsize=None)
def enumerate_connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs of order n, one canonical representative per
    isomorphism class, sorted by canonical code.

    Built by vertex augmentation: every connected graph arises from a
    connected graph one vertex smaller by attaching a new vertex to a
    nonempty neighbour set (delete any non-cut vertex to see this). Orders
    beyond 7 work but get slow.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n == 1:
        return (Graph(1, [0]),)
    found: dict[tuple[int, int], None] = {}
    for g in enumerate_connected_graphs(n - 1):
        k = g.order
        for attach in range(1, 1 << k):
            masks = list(g.masks)
            for v in range(k):
                if attach >> v & 1:
                    masks[v] |= 1 << k
            masks.append(attach)
            found.setdefault(canonical_form(Graph(n, masks)), None)
    return tuple(graph_from_code(n, code) for (_, code) in sorted(found))


def enumerate_candidate_partitions(g: Graph) -> Iterator[tuple[int, ...]]:
    """Label vectors worth checking: the trivial partition plus every
    partition with all parts of size >= 2 and connected."""
    if not g.is_connected():
        raise ValueError("candidate enumeration expects a connected graph")
    return iter_candidate_partitions(g)


def expand(g: Graph, labels: Sequence[int]) -> Graph:
    """Pendant expansion: each vertex with label i gains i new leaves.

    Injective on labelled partitions, which turns partition isomorphism into
    graph isomorphism of the expansions.
    """
    d = max(labels)
    if len(labels) != g.order or sorted(set(labels)) != list(range(1, d + 1)):
        raise ValueError("labels must cover 1..d and match the graph order")
    total = g.order + sum(labels)
    masks = list(g.masks) + [0] * (total - g.order)
    nxt = g.order
    for v, lab in enumerate(labels):
        for _ in range(lab):
            masks[v] |= 1 << nxt
            masks[nxt] |= 1 << v
            nxt += 1
    return Graph(total, masks)


def _size_groups(labels: Sequence[int]) -> dict[int, list[int]]:
    """Part labels grouped by part size."""
    sizes = Counter(labels)
    groups: dict[int, list[int]] = {}
    for lab, size in sizes.items():
        groups.setdefault(size, []).append(lab)
    return groups


def _size_preserving_relabellings(p_from, p_to) -> Iterator[dict[int, int]]:
    """Bijections of part labels mapping parts of p_from onto equal-sized
    parts of p_to."""
    from_groups = _size_groups(p_from)
    to_groups = _size_groups(p_to)
    if sorted(from_groups) != sorted(to_groups) or any(
        len(from_groups[s]) != len(to_groups[s]) for s in from_groups
    ):
        return
    sizes = sorted(from_groups)
    pools = [itertools.permutations(to_groups[s]) for s in sizes]
    for choice in itertools.product(*pools):
        mapping: dict[int, int] = {}
        for s, perm in zip(sizes, choice):
            mapping.update(zip(from_groups[s], perm))
        yield mapping


def partitions_isomorphic(
    g: Graph, p1: Sequence[int], p2: Sequence[int]
) -> bool:
    """Do relabelling and/or symmetry carry partition p2 onto p1?

    Tries every part relabelling compatible with the part-size multisets and
    compares pendant expansions by graph isomorphism.
    """
    p1 = tuple(p1)
    p2 = tuple(p2)
    if len(p1) != g.order or len(p2) != g.order:
        raise ValueError("partitions must label every vertex of the graph")
    if max(p1) != max(p2):
        return False
    e1 = None
    for mapping in _size_preserving_relabellings(p2, p1):
        relabelled = tuple(mapping[lab] for lab in p2)
        if relabelled == p1:
            return True
        if e1 is None:
            e1 = expand(g, p1)
        if graph_isomorphic(e1, expand(g, relabelled)):
            return True
    return False


def enumerate_equilibrium_partitions(g: Graph) -> list[tuple[int, ...]]:
    """One label vector per equilibrium-partition class, trivial class first."""
    classes: list[tuple[int, ...]] = []
    for vec in enumerate_candidate_partitions(g):
        if not is_equilibrium(g, VertexPartition.from_labels(vec)):
            continue
        if not any(partitions_isomorphic(g, vec, rep) for rep in classes):
            classes.append(vec)
    return classes


@dataclass(frozen=True)
class CensusEntry:
    graph: Graph
    classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CensusSummary:
    """Per-graph equilibrium classes plus the two aggregate tables."""

    max_order: int
    entries: tuple[CensusEntry, ...]

    def graphs_by_class_count(self) -> dict[int, list[int]]:
        """Row per order: how many graphs admit exactly k classes, k = 1..10."""
        width = max(10, max((len(e.classes) for e in self.entries), default=0))
        table = {n: [0] * width for n in range(1, self.max_order + 1)}
        for e in self.entries:
            table[e.graph.order][len(e.classes) - 1] += 1
        return table

    def partitions_by_part_count(self) -> dict[int, list[int]]:
        """Row per order: how many partition classes have d parts, d = 1..3."""
        width = 3
        for e in self.entries:
            for vec in e.classes:
                width = max(width, max(vec))
        table = {n: [0] * width for n in range(1, self.max_order + 1)}
        for e in self.entries:
            for vec in e.classes:
                table[e.graph.order][max(vec) - 1] += 1
        return table

    def class_count_totals(self) -> list[int]:
        rows = self.graphs_by_class_count()
        return [sum(row[i] for row in rows.values()) for i in range(len(rows[1]))]

    def part_count_totals(self) -> list[int]:
        rows = self.partitions_by_part_count()
        return [sum(row[i] for row in rows.values()) for i in range(len(rows[1]))]

    def indecomposable_by_order(self) -> dict[int, int]:
        return {n: row[0] for n, row in self.graphs_by_class_count().items()}


def _census_worker(graph: Graph) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_equilibrium_partitions(graph))


def build_census(max_n: int, workers: int = 1) -> CensusSummary:
    """Census every connected graph of order <= max_n.

    Deterministic output: graphs are enumerated in canonical order and the
    per-graph work is merged in that order regardless of worker count.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    entries: list[CensusEntry] = []
    for n in range(1, max_n + 1):
        graphs = enumerate_connected_graphs(n)
        if workers > 1 and len(graphs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_census_worker, graphs, chunksize=8))
        else:
            results = [_census_worker(g) for g in graphs]
        entries.extend(
            CensusEntry(graph=g, classes=cl) for g, cl in zip(graphs, results)
        )
    return CensusSummary(max_order=max_n, entries=tuple(entries))
