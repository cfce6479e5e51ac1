"""Vertex partitions and the Nash condition at partition level.

A strategy profile determines a partition of the vertices (one part per
strategy in use); relabelling strategies does not change the partition, so
partitions are the natural equivalence classes of profiles. A partition is an
equilibrium exactly when every vertex has at least as many neighbours inside
its own part as inside any other part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, _bits


@dataclass(frozen=True)
class VertexPartition:
    """Partition of 0..n-1 in canonical order (size desc, smallest member asc).

    ``parts[part_of[v]]`` is the part containing ``v``.
    """

    parts: tuple[frozenset[int], ...]
    part_of: tuple[int, ...]

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]]) -> "VertexPartition":
        norm = [frozenset(p) for p in parts]
        if any(not p for p in norm):
            raise ValueError("empty part")
        n = sum(len(p) for p in norm)
        covered = set().union(*norm) if norm else set()
        if len(covered) != n or covered != set(range(n)):
            raise ValueError("parts must be disjoint and cover 0..n-1")
        norm.sort(key=lambda p: (-len(p), min(p)))
        part_of = [0] * n
        for i, p in enumerate(norm):
            for v in p:
                part_of[v] = i
        return cls(tuple(norm), tuple(part_of))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        groups: dict[int, set[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(v)
        return cls.from_parts(groups.values())

    @property
    def n(self) -> int:
        return len(self.part_of)

    def to_labels(self) -> tuple[int, ...]:
        """Vector view: per-vertex part label, 1..d in first-seen vertex order."""
        remap: dict[int, int] = {}
        out = []
        for v in range(self.n):
            i = self.part_of[v]
            if i not in remap:
                remap[i] = len(remap) + 1
            out.append(remap[i])
        return tuple(out)

    def part_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.parts)
        for v, i in enumerate(self.part_of):
            masks[i] |= 1 << v
        return tuple(masks)


def profile_to_partition(profile: Sequence[int]) -> VertexPartition:
    """Partition induced by a strategy profile; unused strategies vanish."""
    return VertexPartition.from_labels(profile)


def partition_to_profile(q: VertexPartition) -> tuple[int, ...]:
    """A representative profile: strategy i on part i."""
    return q.part_of


def is_equilibrium(g: Graph, q: VertexPartition) -> bool:
    """Nash condition: no vertex sees more neighbours in a foreign part.

    Only parts actually containing neighbours of ``v`` can beat v's own part
    (any other part scores 0), so the scan is O(n * deg) in the typical case
    and O(n^2) worst case.
    """
    if not isinstance(q, VertexPartition):
        raise ValueError("expected a VertexPartition")
    if q.n != g.order:
        raise ValueError(f"partition of {q.n} vertices does not fit graph of order {g.order}")
    pmasks = q.part_masks()
    for v in range(g.order):
        nb = g.masks[v]
        own = (nb & pmasks[q.part_of[v]]).bit_count()
        for i, pm in enumerate(pmasks):
            if i != q.part_of[v] and (nb & pm).bit_count() > own:
                return False
    return True


def refine_to_connected(g: Graph, q: VertexPartition) -> VertexPartition:
    """Split every part into its connected components.

    Preserves the equilibrium property, and never decreases the part count.
    """
    parts: list[set[int]] = []
    for pm in q.part_masks():
        rest = pm
        while rest:
            comp = _mask_component(g, rest & -rest, pm)
            parts.append(set(_bits(comp)))
            rest &= ~comp
    return VertexPartition.from_parts(parts)


def _mask_component(g: Graph, start: int, within: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.masks[v] & within
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def has_singleton_part(q: VertexPartition) -> bool:
    return any(len(p) == 1 for p in q.parts)


def trivial_partition(n: int) -> VertexPartition:
    return VertexPartition.from_parts([range(n)])


def iter_candidate_partitions(g: Graph) -> Iterator[tuple[int, ...]]:
    """Label vectors of the trivial partition and every partition whose parts
    all have size >= 2 and induce connected subgraphs.

    Labels are 1..d in first-seen vertex order, so no two yielded vectors
    describe the same partition. For a connected graph, every nontrivial
    equilibrium partition refines to one of these, which is what makes the
    restricted search complete.
    """
    n = g.order
    cap = max(1, n // 2)  # d parts of size >= 2 force d <= n // 2
    labels = [0] * n

    def emit() -> bool:
        d = max(labels)
        if d > 1:
            pmasks = [0] * (d + 1)
            for v, lab in enumerate(labels):
                pmasks[lab] |= 1 << v
            for pm in pmasks[1:]:
                if pm.bit_count() < 2:
                    return False
                if _mask_component(g, pm & -pm, pm) != pm:
                    return False
        return True

    def rec(i: int, kmax: int):
        if i == n:
            if emit():
                yield tuple(labels)
            return
        top = min(cap, kmax + 1)
        for lab in range(1, top + 1):
            labels[i] = lab
            yield from rec(i + 1, max(kmax, lab))
        labels[i] = 0

    yield from rec(0, 0)


def is_indecomposable(g: Graph) -> bool:
    """True iff the trivial partition is the only equilibrium partition.

    Disconnected graphs are decomposable outright (partition by component).
    Emptiness of the nontrivial-candidate search suffices: any nontrivial
    equilibrium refines to a candidate that is itself an equilibrium.
    """
    if not g.is_connected():
        return False
    for vec in iter_candidate_partitions(g):
        if max(vec) == 1:
            continue
        if is_equilibrium(g, VertexPartition.from_labels(vec)):
            return False
    return True
