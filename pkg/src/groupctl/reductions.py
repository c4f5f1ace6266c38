"""Hardness reductions turned into executable instance generators.

Both reductions map red-blue dominating set (RBDS) instances to control
instances, which makes them useful as cross-validation oracles: the RBDS
answer must match the control answer on the reduced instance.

Individual numbering is fixed so golden files stay stable: the CSR
reduction lays out the red block first, then the blue block; the LSR/QC
reduction lays out each red vertex's gadget block r(0..d(r)) in red-index
order, then the blues.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import IndividualSet, Profile, iset
from .domains import LinearOrder
from .errors import CapacityError, InputError
from .gcai import GcaiInstance

DEFAULT_RBDS_CAP = 20


@dataclass(frozen=True)
class RbdsInstance:
    """A bipartite domination instance: reds, blues, edges (red, blue), kappa."""

    reds: int
    blues: int
    edges: tuple[tuple[int, int], ...]
    kappa: int

    def __init__(self, reds, blues, edges, kappa):
        edges = tuple(edges)
        if len(set(edges)) != len(edges):
            raise InputError("duplicate edges")
        for r, b in edges:
            if not (0 <= r < reds) or not (0 <= b < blues):
                raise InputError(f"edge ({r}, {b}) out of range")
        if kappa < 0:
            raise InputError("kappa must be nonnegative")
        object.__setattr__(self, "reds", reds)
        object.__setattr__(self, "blues", blues)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "kappa", kappa)

    def neighbors_of_red(self, r: int) -> IndividualSet:
        return iset(b for rr, b in self.edges if rr == r)

    def dominators_of_blue(self, b: int) -> IndividualSet:
        return iset(r for r, bb in self.edges if bb == b)


def solve_rbds_bruteforce(inst: RbdsInstance, cap: int = DEFAULT_RBDS_CAP) -> Optional[IndividualSet]:
    """Minimum-size dominating red subset if within kappa, else None."""
    if inst.reds > cap:
        raise CapacityError(f"|R| = {inst.reds} exceeds the cap of {cap}")
    blues = set(range(inst.blues))
    dominated = {r: set(inst.neighbors_of_red(r)) for r in range(inst.reds)}
    for size in range(min(inst.kappa, inst.reds) + 1):
        for combo in itertools.combinations(range(inst.reds), size):
            covered: set[int] = set()
            for r in combo:
                covered |= dominated[r]
            if covered >= blues:
                return iset(combo)
    return None


def rbds_to_gcai_csr(inst: RbdsInstance) -> GcaiInstance:
    """Reds qualify all reds plus their blue neighbors; blues qualify all
    reds and nothing else.  S = T = blues, k = kappa."""
    if inst.blues == 0:
        raise InputError("reduction needs at least one blue vertex (S must be nonempty)")
    n = inst.reds + inst.blues
    red_id = list(range(inst.reds))
    blue_id = [inst.reds + b for b in range(inst.blues)]
    matrix = [[0] * n for _ in range(n)]
    for r in range(inst.reds):
        for r2 in range(inst.reds):
            matrix[red_id[r]][red_id[r2]] = 1
        for b in inst.neighbors_of_red(r):
            matrix[red_id[r]][blue_id[b]] = 1
    for b in range(inst.blues):
        for r in range(inst.reds):
            matrix[blue_id[b]][red_id[r]] = 1
    B = iset(blue_id)
    return GcaiInstance(Profile(matrix), B, B, inst.kappa)


def rbds_to_gcai_lsr_qc(inst: RbdsInstance) -> tuple[GcaiInstance, LinearOrder]:
    """Gadget reduction whose output profile is QC.

    Each red r becomes d(r)+1 individuals: r(0) self-qualifies and
    qualifies its whole block, and r(1..d(r)) each qualify one distinct
    neighbor of r (ascending blue index).  S = blues,
    T = blues + all r(i) with i >= 1, k = kappa.  The natural numbering,
    with each gadget block contiguous, is a QC witness.
    """
    if inst.blues == 0:
        raise InputError("reduction needs at least one blue vertex (S must be nonempty)")
    block_start = []
    nxt = 0
    degrees = []
    for r in range(inst.reds):
        block_start.append(nxt)
        degrees.append(len(inst.neighbors_of_red(r)))
        nxt += degrees[r] + 1
    blue_id = [nxt + b for b in range(inst.blues)]
    n = nxt + inst.blues

    matrix = [[0] * n for _ in range(n)]
    for r in range(inst.reds):
        r0 = block_start[r]
        for i in range(degrees[r] + 1):
            matrix[r0][r0 + i] = 1
        for i, b in enumerate(inst.neighbors_of_red(r), start=1):
            matrix[r0 + i][blue_id[b]] = 1

    T = iset(blue_id) + tuple(
        block_start[r] + i for r in range(inst.reds) for i in range(1, degrees[r] + 1)
    )
    instance = GcaiInstance(Profile(matrix), iset(blue_id), iset(T), inst.kappa)
    return instance, LinearOrder(range(n))


def certificate_to_dominating_set(inst: RbdsInstance, U: IndividualSet) -> IndividualSet:
    """Map an LSR/QC-reduction certificate back to red vertices: the reds
    whose r(0) gadget entry was added."""
    block_start = []
    nxt = 0
    for r in range(inst.reds):
        block_start.append(nxt)
        nxt += len(inst.neighbors_of_red(r)) + 1
    starts = {s: r for r, s in enumerate(block_start)}
    return iset(starts[u] for u in U if u in starts)
