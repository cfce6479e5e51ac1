"""Simple undirected graphs on dense vertex sets 0..n-1.

Adjacency is stored as one integer bitmask per vertex, so the neighbour
overlaps that dominate equilibrium checks and payoff counting are single
``&``/``bit_count`` operations. Graphs are immutable after construction and
safe to share across parallel workers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .seeding import as_rng


class Graph:
    """Immutable simple undirected graph with bitmask adjacency rows.

    ``masks[v]`` has bit ``u`` set iff ``{u, v}`` is an edge. Construction
    validates symmetry, absence of self-loops, and mask width.
    """

    __slots__ = ("order", "masks", "sides", "_cache")

    def __init__(self, order: int, masks: Sequence[int], sides=None):
        if order < 1:
            raise ValueError(f"graph order must be >= 1, got {order}")
        masks = tuple(int(m) for m in masks)
        if len(masks) != order:
            raise ValueError(f"expected {order} adjacency rows, got {len(masks)}")
        full = (1 << order) - 1
        for v, m in enumerate(masks):
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if m & ~full:
                raise ValueError(f"adjacency row {v} references vertices >= {order}")
        for v, m in enumerate(masks):
            u = 0
            while m:
                if m & 1 and not masks[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
                m >>= 1
                u += 1
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "masks", masks)
        object.__setattr__(self, "sides", sides)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.order == other.order
            and self.masks == other.masks
        )

    def __hash__(self):
        return hash((self.order, self.masks))

    def __repr__(self):
        return f"Graph(order={self.order}, edges={self.edge_count})"

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]], sides=None) -> "Graph":
        masks = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(order, masks, sides=sides)

    # -- structure queries -------------------------------------------------

    def neighbor_mask(self, v: int) -> int:
        if not 0 <= v < self.order:
            raise ValueError(f"vertex {v} out of range for order {self.order}")
        return self.masks[v]

    def neighbors(self, v: int) -> set[int]:
        """Vertices sharing an edge with ``v``."""
        return set(_bits(self.neighbor_mask(v)))

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbor_mask(u) >> v & 1)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographic."""
        out = []
        for u in range(self.order):
            m = self.masks[u] >> (u + 1)
            for v in _bits(m):
                out.append((u, u + 1 + v))
        return out

    def connected_components(self) -> list[set[int]]:
        """Maximal connected vertex sets, ordered by smallest member."""
        comps = []
        unseen = (1 << self.order) - 1
        while unseen:
            start = unseen & -unseen
            comp = _reach(self.masks, start)
            comps.append(set(_bits(comp)))
            unseen &= ~comp
        return comps

    def is_connected(self) -> bool:
        return _reach(self.masks, 1) == (1 << self.order) - 1

    def edge_density(self) -> float:
        """|E| / C(n, 2); requires order >= 2."""
        if self.order < 2:
            raise ValueError("edge density needs at least 2 vertices")
        return self.edge_count / (self.order * (self.order - 1) // 2)

    def mean_degree(self) -> float:
        return 2.0 * self.edge_count / self.order

    def validate(self) -> None:
        """Re-check structural invariants (symmetry, no loops). For tests."""
        Graph(self.order, self.masks)

    # -- cached array views used by the dynamics engine --------------------

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix (cached)."""
        mat = self._cache.get("matrix")
        if mat is None:
            mat = np.zeros((self.order, self.order), dtype=bool)
            for u in range(self.order):
                for v in _bits(self.masks[u]):
                    mat[u, v] = True
            mat.setflags(write=False)
            self._cache["matrix"] = mat
        return mat

    def directed_edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (heads, tails) listing every edge in both directions (cached)."""
        arrs = self._cache.get("darrows")
        if arrs is None:
            heads, tails = [], []
            for u in range(self.order):
                for v in _bits(self.masks[u]):
                    heads.append(u)
                    tails.append(v)
            arrs = (
                np.asarray(heads, dtype=np.intp),
                np.asarray(tails, dtype=np.intp),
            )
            arrs[0].setflags(write=False)
            arrs[1].setflags(write=False)
            self._cache["darrows"] = arrs
        return arrs


def _bits(mask: int):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def _reach(masks: Sequence[int], start: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


# -- named generators -------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def complete_bipartite(n: int, m: int) -> Graph:
    """K_{n,m} with side A = 0..n-1 and side B = n..n+m-1 recorded in .sides."""
    if n < 1 or m < 1:
        raise ValueError("complete_bipartite(n, m) needs n, m >= 1")
    amask = (1 << n) - 1
    bmask = ((1 << (n + m)) - 1) ^ amask
    masks = [bmask] * n + [amask] * m
    sides = (frozenset(range(n)), frozenset(range(n, n + m)))
    return Graph(n + m, masks, sides=sides)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path(n) needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3 for a simple graph")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """Star on n vertices: hub 0 joined to every leaf (star(4) = K_{1,3})."""
    if n < 1:
        raise ValueError("star(n) needs n >= 1")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


# -- random generators -------------------------------------------------------

def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def er_gnp(n: int, p: float, rng=None) -> Graph:
    """G(n, p): each of the C(n, 2) pairs is an edge independently with prob p."""
    if n < 1:
        raise ValueError("er_gnp needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = as_rng(rng)
    pairs = _pair_list(n)
    draws = rng.random(len(pairs))
    return Graph.from_edges(n, [pq for pq, d in zip(pairs, draws) if d < p])


def er_gnm(n: int, m: int, rng=None) -> Graph:
    """G(n, N): uniform over all graphs with exactly m edges.

    Sampled by a partial Fisher-Yates shuffle of the pair list, which is
    exactly uniform and consumes one integer draw per selected edge.
    """
    if n < 1:
        raise ValueError("er_gnm needs n >= 1")
    pairs = _pair_list(n)
    if not 0 <= m <= len(pairs):
        raise ValueError(f"edge count {m} out of range [0, {len(pairs)}]")
    rng = as_rng(rng)
    for i in range(m):
        j = i + int(rng.integers(0, len(pairs) - i))
        pairs[i], pairs[j] = pairs[j], pairs[i]
    return Graph.from_edges(n, pairs[:m])
