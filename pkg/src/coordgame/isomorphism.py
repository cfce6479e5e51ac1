"""Graph isomorphism via colour refinement plus backtracking.

Two entry points: ``canonical_form`` produces a label-invariant certificate
used to deduplicate enumerated graphs, and ``graph_isomorphic`` decides
isomorphism of a pair directly. Both are exact; refinement only prunes. Sizes
up to a few dozen vertices are comfortable, which covers the pendant
expansions used for partition deduplication.
"""

from __future__ import annotations

from .graphs import Graph, _bits


def color_refinement(g: Graph, colors=None) -> tuple[int, ...]:
    """Iterate (colour, multiset of neighbour colours) to a fixed point.

    Colour ids are assigned by sorted signature, so they are comparable
    between graphs refined independently.
    """
    n = g.order
    cols = list(colors) if colors is not None else [0] * n
    while True:
        sigs = []
        for v in range(n):
            cnt: dict[int, int] = {}
            for u in _bits(g.masks[v]):
                cnt[cols[u]] = cnt.get(cols[u], 0) + 1
            sigs.append((cols[v], tuple(sorted(cnt.items()))))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == cols:
            return tuple(new)
        cols = new


def canonical_form(g: Graph) -> tuple[int, int]:
    """(order, code): identical for isomorphic graphs, distinct otherwise.

    The code is the minimum upper-triangle bit packing over all leaf
    orderings of the individualisation-refinement search tree. Intended for
    small graphs (the census uses it at order <= 8).
    """
    n = g.order
    masks = g.masks
    best: int | None = None

    def code_for(perm: list[int]) -> int:
        code = 0
        bit = 0
        for j in range(1, n):
            mj = masks[perm[j]]
            for i in range(j):
                if mj >> perm[i] & 1:
                    code |= 1 << bit
                bit += 1
        return code

    def rec(cols: tuple[int, ...]):
        nonlocal best
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(cols[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            perm = [v for c in sorted(cells) for v in cells[c]]
            code = code_for(perm)
            if best is None or code < best:
                best = code
            return
        for v in cells[target]:
            nc = list(cols)
            nc[v] = -1  # individualise v with a fresh minimal colour
            rec(color_refinement(g, nc))

    rec(color_refinement(g))
    assert best is not None
    return (n, best)


def graph_from_code(n: int, code: int) -> Graph:
    """Inverse of the upper-triangle packing used by canonical_form."""
    masks = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if code >> bit & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            bit += 1
    return Graph(n, masks)


def canonical_graph(g: Graph) -> Graph:
    """A canonically labelled copy of ``g``."""
    n, code = canonical_form(g)
    return graph_from_code(n, code)


def graph_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test: edge-preserving bijection exists."""
    if g1.order != g2.order:
        return False
    if g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degree(v) for v in range(g1.order)) != sorted(
        g2.degree(v) for v in range(g2.order)
    ):
        return False
    c1 = color_refinement(g1)
    c2 = color_refinement(g2)
    if sorted(c1) != sorted(c2):
        return False
    return _match(g1, g2, c1, c2)


def _match(g1: Graph, g2: Graph, c1, c2) -> bool:
    """Backtracking search for a colour- and adjacency-consistent bijection."""
    n = g1.order
    by_color: dict[int, list[int]] = {}
    for u in range(n):
        by_color.setdefault(c2[u], []).append(u)
    # Map vertices of g1 in order of rarest colour class first.
    order = sorted(range(n), key=lambda v: (len(by_color[c1[v]]), c1[v], v))
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        nbv = g1.masks[v]
        for u in by_color[c1[v]]:
            if used >> u & 1:
                continue
            ok = True
            for j in range(i):
                w = order[j]
                if bool(nbv >> w & 1) != bool(g2.masks[u] >> image[w] & 1):
                    ok = False
                    break
            if ok:
                image[v] = u
                used |= 1 << u
                if extend(i + 1):
                    return True
                used &= ~(1 << u)
        image[v] = -1
        return False

    return extend(0)
