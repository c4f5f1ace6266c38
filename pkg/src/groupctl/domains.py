"""Recognition of qualifying- and disqualifying-consecutive profiles.

A profile is QC when the individuals admit a common linear order under
which every row's 1s form one contiguous block (the consecutive ones
property of the matrix); DQC is the same for 0s, i.e. QC of the
complemented matrix.

The recognizer is a partition-refinement C1P test in the Fulkerson-Gross
style: distinct nontrivial rows are grouped into overlap components
(rows that intersect without containment), each component's rows force a
unique internal column order up to reversal, and components are folded
into one global ordered partition in decreasing order of their unions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Profile, set_of
from .errors import InputError


@dataclass(frozen=True)
class LinearOrder:
    """A permutation of [0, n) with its inverse (individual -> position)."""

    order: tuple[int, ...]
    position: tuple[int, ...] = field(compare=False)

    def __init__(self, order: Sequence[int]):
        order = tuple(order)
        n = len(order)
        if sorted(order) != list(range(n)):
            raise InputError("order must be a permutation of [0, n)")
        position = [0] * n
        for pos, a in enumerate(order):
            position[a] = pos
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "position", tuple(position))


def _row_consecutive(profile: Profile, order: LinearOrder, a: int, ones: bool) -> bool:
    row = profile.rows[a]
    if not ones:
        row ^= (1 << profile.n) - 1
    members = set_of(row)
    if not members:
        return True
    positions = sorted(order.position[b] for b in members)
    return positions[-1] - positions[0] + 1 == len(positions)


def is_qc_under(profile: Profile, order: LinearOrder) -> bool:
    """True iff every row's 1s are contiguous when columns follow ``order``."""
    if len(order.order) != profile.n:
        raise InputError("order length does not match profile size")
    return all(_row_consecutive(profile, order, a, True) for a in range(profile.n))


def is_dqc_under(profile: Profile, order: LinearOrder) -> bool:
    """True iff every row's 0s are contiguous when columns follow ``order``."""
    if len(order.order) != profile.n:
        raise InputError("order length does not match profile size")
    return all(_row_consecutive(profile, order, a, False) for a in range(profile.n))


def _overlaps(a: frozenset, b: frozenset) -> bool:
    return bool(a & b) and not a <= b and not b <= a


def _refine(P: list[set], A: frozenset) -> Optional[list[set]]:
    """Constrain an ordered partition so that A occupies one contiguous run.

    Interior blocks of the run must already lie inside A; a partial
    boundary block is split with its outside part pushed away from the run.
    Returns the refined partition or None when A cannot be made contiguous.
    """
    hit = [t for t, B in enumerate(P) if B & A]
    if not hit:
        return P
    i, j = hit[0], hit[-1]
    if hit != list(range(i, j + 1)):
        return None
    for t in range(i + 1, j):
        if not P[t] <= A:
            return None
    out: list[set] = list(P[:i])
    if i == j:
        B = P[i]
        rest = B - A
        if rest:
            out.append(rest)
        out.append(B & A)
    else:
        left_rest = P[i] - A
        if left_rest:
            out.append(left_rest)
        out.append(P[i] & A)
        out.extend(P[t] for t in range(i + 1, j))
        out.append(P[j] & A)
        right_rest = P[j] - A
        if right_rest:
            out.append(right_rest)
    out.extend(P[j + 1:])
    return [b for b in out if b]


def _component_order(rows: list[frozenset], adj: dict[frozenset, list[frozenset]]) -> Optional[list[set]]:
    """Ordered column partition forced by one overlap component, or None."""
    start = min(rows, key=lambda r: tuple(sorted(r)))
    bfs = [start]
    seen = {start}
    head = 0
    while head < len(bfs):
        for nxt in adj[bfs[head]]:
            if nxt not in seen:
                seen.add(nxt)
                bfs.append(nxt)
        head += 1

    L: list[set] = [set(start)]
    placed = set(start)
    for S in bfs[1:]:
        A = S & placed
        new = S - placed
        hit = [t for t, B in enumerate(L) if B & A]
        i, j = hit[0], hit[-1]
        if hit != list(range(i, j + 1)):
            return None
        if any(not L[t] <= A for t in range(i + 1, j)):
            return None
        if not new:
            refined = _refine(L, frozenset(A))
            if refined is None:
                return None
            L = refined
        else:
            left_ok = i == 0 and (i == j or L[i] <= A)
            right_ok = j == len(L) - 1 and (i == j or L[j] <= A)
            if left_ok:
                blocks: list[set] = [set(new)]
                for t in range(i, j + 1):
                    if t == j and not L[j] <= A:
                        blocks.append(L[j] & A)
                        blocks.append(L[j] - A)
                    else:
                        blocks.append(L[t])
                L = blocks + L[j + 1:]
            elif right_ok:
                blocks = []
                for t in range(i, j + 1):
                    if t == i and not L[i] <= A:
                        blocks.append(L[i] - A)
                        blocks.append(L[i] & A)
                    else:
                        blocks.append(L[t])
                L = L[:i] + blocks + [set(new)]
            else:
                return None
        placed |= S
    return L


def _oriented(Q: list[set]) -> list[set]:
    """Pick the orientation whose flattened column sequence is lexicographically smaller."""
    fwd = [x for b in Q for x in sorted(b)]
    rev = [x for b in reversed(Q) for x in sorted(b)]
    return Q if fwd <= rev else list(reversed(Q))


def recognize_qc(profile: Profile) -> Optional[LinearOrder]:
    """A witness order under which the profile is QC, or None if none exists."""
    n = profile.n
    full = (1 << n) - 1
    rows = sorted(
        {frozenset(set_of(r)) for r in profile.rows if r not in (0, full)},
        key=lambda r: tuple(sorted(r)),
    )

    adj: dict[frozenset, list[frozenset]] = {r: [] for r in rows}
    for x in range(len(rows)):
        for y in range(x + 1, len(rows)):
            if _overlaps(rows[x], rows[y]):
                adj[rows[x]].append(rows[y])
                adj[rows[y]].append(rows[x])

    components: list[list[frozenset]] = []
    unvisited = set(rows)
    for r in rows:
        if r not in unvisited:
            continue
        comp = [r]
        unvisited.discard(r)
        head = 0
        while head < len(comp):
            for nxt in adj[comp[head]]:
                if nxt in unvisited:
                    unvisited.discard(nxt)
                    comp.append(nxt)
            head += 1
        components.append(comp)

    def union_of(comp):
        u: set[int] = set()
        for r in comp:
            u |= r
        return u

    components.sort(key=lambda c: (-len(union_of(c)), tuple(sorted(union_of(c)))))

    P: list[set] = [set(range(n))]
    for comp in components:
        if len(comp) == 1:
            refined = _refine(P, comp[0])
            if refined is None:
                return None
            P = refined
        else:
            Q = _component_order(comp, adj)
            if Q is None:
                return None
            Q = _oriented(Q)
            U = union_of(comp)
            slot = next((t for t, B in enumerate(P) if U <= B), None)
            if slot is None:
                return None
            rest = P[slot] - U
            P = P[:slot] + Q + ([rest] if rest else []) + P[slot + 1:]

    order = LinearOrder([x for b in P for x in sorted(b)])
    if not is_qc_under(profile, order):
        raise RuntimeError("C1P refinement produced an invalid witness")
    return order


def recognize_dqc(profile: Profile) -> Optional[LinearOrder]:
    """Dual of recognize_qc: a witness for contiguous 0s, via the complement."""
    return recognize_qc(profile.complement())
