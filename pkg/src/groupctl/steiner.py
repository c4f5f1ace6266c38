"""Exact directed Steiner solvers.

DVWST (vertex-weighted) is reduced to DST (arc-weighted) by splitting
every non-terminal, non-root vertex v into v_in -> v_out with the vertex
weight on the connecting arc; DST is then solved exactly by a
Dreyfus-Wagner style dynamic program over terminal subsets: tables are
indexed by (vertex, terminal subset), combining subset splits at a vertex
with re-rooting along all-pairs shortest directed paths.  The DP is
O(3^l * V + 2^l * V^2 + V^3) for l terminals, which is all that is needed
for fixed-parameter tractability in l at desk scale.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Digraph, IndividualSet, iset
from .errors import CapacityError, InputError

DEFAULT_TERMINAL_CAP = 20


@dataclass(frozen=True)
class DvwstInstance:
    graph: Digraph
    terminals: IndividualSet
    root: int
    weights: tuple[int, ...]
    budget: int

    def __post_init__(self):
        v = self.graph.vertex_count
        if not (0 <= self.root < v):
            raise InputError("root out of range")
        if any(not (0 <= x < v) for x in self.terminals):
            raise InputError("terminal out of range")
        if self.root in self.terminals:
            raise InputError("root must not be a terminal")
        if len(self.weights) != v:
            raise InputError("need one weight per vertex")
        if any(w < 0 for w in self.weights):
            raise InputError("weights must be nonnegative")
        if self.budget < 0:
            raise InputError("budget must be nonnegative")


@dataclass(frozen=True)
class DstInstance:
    graph: Digraph
    terminals: IndividualSet
    root: int
    arc_weights: dict[tuple[int, int], int]
    budget: int

    def __post_init__(self):
        v = self.graph.vertex_count
        if not (0 <= self.root < v):
            raise InputError("root out of range")
        if any(not (0 <= x < v) for x in self.terminals):
            raise InputError("terminal out of range")
        if self.root in self.terminals:
            raise InputError("root must not be a terminal")
        for arc in self.graph.arcs():
            if arc not in self.arc_weights:
                raise InputError(f"arc {arc} has no weight")
            if self.arc_weights[arc] < 0:
                raise InputError(f"arc {arc} has negative weight")
        if self.budget < 0:
            raise InputError("budget must be nonnegative")


def dvwst_to_dst(inst: DvwstInstance) -> tuple[DstInstance, dict[tuple[int, int], int]]:
    """Vertex-splitting reduction; back_map sends each split arc to its vertex."""
    keep = set(inst.terminals) | {inst.root}
    id_in: dict[int, int] = {}
    id_out: dict[int, int] = {}
    nxt = 0
    for v in range(inst.graph.vertex_count):
        if v in keep:
            id_in[v] = id_out[v] = nxt
            nxt += 1
        else:
            id_in[v] = nxt
            id_out[v] = nxt + 1
            nxt += 2

    arcs: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], int] = {}
    back_map: dict[tuple[int, int], int] = {}
    for v in range(inst.graph.vertex_count):
        if v not in keep:
            arc = (id_in[v], id_out[v])
            arcs.append(arc)
            weights[arc] = inst.weights[v]
            back_map[arc] = v
    for a, b in inst.graph.arcs():
        if a == b:
            continue  # a loop never helps reachability
        arc = (id_out[a], id_in[b])
        arcs.append(arc)
        weights[arc] = 0

    graph = Digraph.from_arcs(nxt, arcs)
    dst = DstInstance(
        graph=graph,
        terminals=iset(id_in[x] for x in inst.terminals),
        root=id_in[inst.root],
        arc_weights=weights,
        budget=inst.budget,
    )
    return dst, back_map


def _all_pairs_shortest(graph: Digraph, weights: dict[tuple[int, int], int]):
    """All-pairs Dijkstra; returns (dist, pred) with deterministic tie-breaks."""
    v = graph.vertex_count
    dist = np.full((v, v), np.inf)
    pred = np.full((v, v), -1, dtype=np.int64)
    for s in range(v):
        d = dist[s]
        d[s] = 0.0
        done = [False] * v
        heap = [(0.0, s)]
        while heap:
            du, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for x in graph.adjacency[u]:
                if u == x:
                    continue
                nd = du + weights[(u, x)]
                if nd < d[x]:
                    d[x] = nd
                    pred[s, x] = u
                    heapq.heappush(heap, (nd, x))
    return dist, pred


def solve_dst_min(
    inst: DstInstance, max_terminals: int = DEFAULT_TERMINAL_CAP
) -> Optional[tuple[int, frozenset[tuple[int, int]]]]:
    """Minimum-weight arc set connecting the root to every terminal.

    Returns (cost, arcs) for an optimal feasible set within the budget, or
    None when no arc set within the budget reaches all terminals.
    """
    X = list(inst.terminals)
    ell = len(X)
    if ell > max_terminals:
        raise CapacityError(f"{ell} terminals exceed the cap of {max_terminals}")
    if ell == 0:
        return 0, frozenset()

    dist, pred = _all_pairs_shortest(inst.graph, inst.arc_weights)
    nmasks = 1 << ell
    v = inst.graph.vertex_count
    cost = np.full((nmasks, v), np.inf)
    g = np.full((nmasks, v), np.inf)

    for i, x in enumerate(X):
        m = 1 << i
        g[m, x] = 0.0
        cost[m] = dist[:, x]

    by_size: list[list[int]] = [[] for _ in range(ell + 1)]
    for m in range(1, nmasks):
        by_size[bin(m).count("1")].append(m)
    for size in range(2, ell + 1):
        for m in by_size[size]:
            subs = []
            sub = (m - 1) & m
            while sub:
                comp = m ^ sub
                if sub < comp:
                    subs.append((sub, comp))
                sub = (sub - 1) & m
            lo = cost[[s for s, _ in subs]]
            hi = cost[[c for _, c in subs]]
            g[m] = (lo + hi).min(axis=0)
            cost[m] = (dist + g[m][None, :]).min(axis=1)

    full = nmasks - 1
    best = cost[full, inst.root]
    if not np.isfinite(best) or best > inst.budget:
        return None

    arcs: set[tuple[int, int]] = set()

    def add_path(src: int, dst: int) -> None:
        u = dst
        while u != src:
            p = int(pred[src, u])
            arcs.add((p, u))
            u = p

    def expand(node: int, m: int) -> None:
        w = int(np.argmin(dist[node] + g[m]))
        add_path(node, w)
        if m & (m - 1) == 0:
            # singleton: g[m, w] == 0 forces w to be the terminal itself
            return
        sub = (m - 1) & m
        while sub:
            comp = m ^ sub
            if cost[sub, w] + cost[comp, w] == g[m, w]:
                expand(w, sub)
                expand(w, comp)
                return
            sub = (sub - 1) & m
        raise RuntimeError("DP backtrack failed to find a split")

    expand(inst.root, full)
    return int(best), frozenset(arcs)


def solve_dvwst(
    inst: DvwstInstance, max_terminals: int = DEFAULT_TERMINAL_CAP
) -> Optional[tuple[int, IndividualSet]]:
    """Minimum total vertex weight J (outside terminals and root) making every
    terminal reachable from the root through J, within the budget."""
    if not inst.terminals:
        return 0, ()
    dst, back_map = dvwst_to_dst(inst)
    res = solve_dst_min(dst, max_terminals=max_terminals)
    if res is None:
        return None
    cost, arcs = res
    J = iset(back_map[a] for a in arcs if a in back_map)
    return cost, J
