"""Independent brute-force oracles the tests check the library against.

Everything here is deliberately written from first principles (neighbour
iteration, exhaustive enumeration, exact rational arithmetic) and shares no
code paths with the package internals it validates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


# -- Nash check by direct payoff comparison -----------------------------------

def nash_oracle(g, labels) -> bool:
    """A partition is an equilibrium iff no vertex prefers a foreign part,
    comparing against every part (no pruning)."""
    labs = sorted(set(labels))
    for v in range(g.order):
        nbrs = [u for u in range(g.order) if g.has_edge(u, v)]
        own = sum(1 for u in nbrs if labels[u] == labels[v])
        for lab in labs:
            if lab == labels[v]:
                continue
            if sum(1 for u in nbrs if labels[u] == lab) > own:
                return False
    return True


def all_partitions(n: int):
    """Every set partition of 0..n-1 as a label vector (restricted growth)."""
    labels = [0] * n

    def rec(i, kmax):
        if i == n:
            yield tuple(labels)
            return
        for lab in range(1, kmax + 2):
            labels[i] = lab
            yield from rec(i + 1, max(kmax, lab))

    yield from rec(0, 0)


# -- update rule re-derived for branch enumeration -----------------------------

def response_options(g, profile, v) -> tuple[int, ...]:
    """Strategies vertex v may hold next step (singleton when forced)."""
    nbrs = [u for u in range(g.order) if g.has_edge(u, v)]
    counts: dict[int, int] = {}
    for u in nbrs:
        counts[profile[u]] = counts.get(profile[u], 0) + 1
    counts.setdefault(profile[v], 0)
    best = max(counts.values())
    argmax = sorted(s for s, cnt in counts.items() if cnt == best)
    if profile[v] in argmax:
        return (profile[v],)
    return tuple(argmax)


def all_branches(g, profile):
    """Every profile reachable in one synchronous step, with probabilities."""
    opts = [response_options(g, profile, v) for v in range(g.order)]
    weight = Fraction(1)
    for o in opts:
        weight /= len(o)
    return {succ: weight for succ in itertools.product(*opts)}


# -- exact absorption analysis of the full state space --------------------------

def exact_outcome_masses(g, c: int) -> dict[str, Fraction]:
    """Start uniformly over all c^n profiles; split the limiting mass into
    consensus equilibria, other equilibria, and cycling classes.

    Solves the absorption probabilities exactly: closed communicating classes
    are found by SCC analysis, then a rational linear solve gives the chance
    of landing in each kind of class from every start state.
    """
    states = list(itertools.product(range(c), repeat=g.order))
    trans = {s: all_branches(g, s) for s in states}

    index = {s: i for i, s in enumerate(states)}
    sccs = _tarjan(states, trans)
    closed_kind: dict[int, str] = {}
    comp_of = {}
    for ci, comp in enumerate(sccs):
        for s in comp:
            comp_of[s] = ci
    for ci, comp in enumerate(sccs):
        if any(comp_of[t] != ci for s in comp for t in trans[s]):
            continue
        if len(comp) == 1:
            s = next(iter(comp))
            closed_kind[ci] = "consensus" if len(set(s)) == 1 else "other_equilibrium"
        else:
            closed_kind[ci] = "cycle"

    masses = {"consensus": Fraction(0), "other_equilibrium": Fraction(0), "cycle": Fraction(0)}
    share = Fraction(1, len(states))
    for kind in masses:
        targets = {s for s in states if closed_kind.get(comp_of[s]) == kind}
        absorbed = _absorption_probabilities(states, trans, targets, closed_kind, comp_of)
        masses[kind] = share * sum(absorbed[index[s]] for s in states)
    assert sum(masses.values()) == 1
    return masses


def _tarjan(states, trans):
    sys_index = {}
    low = {}
    stack = []
    on_stack = set()
    sccs = []
    counter = itertools.count()

    def strongconnect(root):
        work = [(root, iter(trans[root]))]
        sys_index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            s, it = work[-1]
            advanced = False
            for t in it:
                if t not in sys_index:
                    sys_index[t] = low[t] = next(counter)
                    stack.append(t)
                    on_stack.add(t)
                    work.append((t, iter(trans[t])))
                    advanced = True
                    break
                if t in on_stack:
                    low[s] = min(low[s], sys_index[t])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[s])
            if low[s] == sys_index[s]:
                comp = set()
                while True:
                    t = stack.pop()
                    on_stack.discard(t)
                    comp.add(t)
                    if t == s:
                        break
                sccs.append(comp)

    for s in states:
        if s not in sys_index:
            strongconnect(s)
    return sccs


def _absorption_probabilities(states, trans, targets, closed_kind, comp_of):
    """P(end in `targets`) from each state, by rational Gaussian elimination."""
    n = len(states)
    index = {s: i for i, s in enumerate(states)}
    fixed = {}
    unknown = []
    for s in states:
        kind = closed_kind.get(comp_of[s])
        if kind is not None:
            fixed[index[s]] = Fraction(1) if s in targets else Fraction(0)
        else:
            unknown.append(s)
    m = len(unknown)
    pos = {index[s]: j for j, s in enumerate(unknown)}
    aug = [[Fraction(0)] * (m + 1) for _ in range(m)]
    for j, s in enumerate(unknown):
        aug[j][j] += 1
        for t, prob in trans[s].items():
            ti = index[t]
            if ti in fixed:
                aug[j][m] += prob * fixed[ti]
            else:
                aug[j][pos[ti]] -= prob
    _solve_in_place(aug, m)
    out = [Fraction(0)] * n
    for i, val in fixed.items():
        out[i] = val
    for j, s in enumerate(unknown):
        out[index[s]] = aug[j][m]
    return out


def _solve_in_place(aug, m):
    for col in range(m):
        pivot = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]


# -- exhaustive labelled-graph connectivity counts ------------------------------

def connected_labeled_counts(n: int) -> np.ndarray:
    """counts[m] = number of connected labelled graphs on n vertices with m
    edges, by sweeping all 2^C(n,2) edge subsets (vectorised)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    subsets = np.arange(1 << m, dtype=np.int64)
    nb = [np.zeros(1 << m, dtype=np.int64) for _ in range(n)]
    for e, (u, v) in enumerate(pairs):
        bit = (subsets >> e) & 1
        nb[u] |= bit << v
        nb[v] |= bit << u
    reach = np.ones(1 << m, dtype=np.int64)  # start from vertex 0
    for _ in range(n):
        grown = reach.copy()
        for v in range(n):
            grown |= ((reach >> v) & 1) * nb[v]
        if np.array_equal(grown, reach):
            break
        reach = grown
    connected = reach == (1 << n) - 1
    pop16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)
    popcount = pop16[subsets & 0xFFFF] + pop16[(subsets >> 16) & 0xFFFF]
    return np.bincount(popcount[connected], minlength=m + 1)


def connectivity_probability_oracle(n: int, p: float) -> Fraction:
    counts = connected_labeled_counts(n)
    pf = Fraction(p)
    qf = 1 - pf
    m = len(counts) - 1
    return sum(Fraction(int(c)) * pf**k * qf ** (m - k) for k, c in enumerate(counts))


# -- automorphism-based partition isomorphism -----------------------------------

def brute_automorphisms(g) -> list[tuple[int, ...]]:
    """All vertex permutations preserving adjacency (feasible for n <= 7)."""
    edges = set(g.edges())
    auts = []
    for perm in itertools.permutations(range(g.order)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges for u, v in edges):
            auts.append(perm)
    return auts


def partitions_isomorphic_oracle(g, p1, p2, auts=None) -> bool:
    """True iff some automorphism carries the parts of p1 onto the parts of
    p2 (label bijection implicit in comparing parts as sets of sets)."""
    if auts is None:
        auts = brute_automorphisms(g)
    blocks2 = frozenset(
        frozenset(v for v, lab in enumerate(p2) if lab == which)
        for which in set(p2)
    )
    for sigma in auts:
        mapped = frozenset(
            frozenset(sigma[v] for v, lab in enumerate(p1) if lab == which)
            for which in set(p1)
        )
        if mapped == blocks2:
            return True
    return False
