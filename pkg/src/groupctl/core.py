"""Profiles, individual sets, incidence digraphs and the merging operation.

Individuals are dense 0-based indices.  A profile stores, for every
individual ``a``, a bit-row ``rows[a]`` whose bit ``b`` is 1 iff ``a``
qualifies ``b``; column masks are kept alongside so "who qualifies a" is
also a single lookup.  All types are immutable and all operations are pure,
so shared instances can be used concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InputError

# An individual set is a sorted, duplicate-free tuple of indices.
IndividualSet = tuple[int, ...]


def iset(members: Iterable[int]) -> IndividualSet:
    """Normalize an iterable of indices into a sorted duplicate-free tuple."""
    return tuple(sorted(set(members)))


def mask_of(members: Iterable[int]) -> int:
    bits = 0
    for a in members:
        bits |= 1 << a
    return bits


def set_of(mask: int) -> IndividualSet:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _check_range(members: Iterable[int], n: int, what: str) -> None:
    for a in members:
        if not (0 <= a < n):
            raise InputError(f"{what}: index {a} out of range [0, {n})")


@dataclass(frozen=True)
class Profile:
    """An n-by-n boolean qualification matrix.

    ``rows[a]`` has bit ``b`` set iff ``a`` qualifies ``b``; ``cols[b]`` has
    bit ``a`` set iff ``a`` qualifies ``b``.
    """

    n: int
    rows: tuple[int, ...]
    cols: tuple[int, ...] = field(compare=False)

    def __init__(self, matrix: Sequence[Sequence[int]]):
        n = len(matrix)
        if n < 1:
            raise InputError("profile needs at least one individual")
        rows = []
        for a, row in enumerate(matrix):
            if len(row) != n:
                raise InputError(f"row {a} has length {len(row)}, expected {n}")
            bits = 0
            for b, cell in enumerate(row):
                if cell not in (0, 1):
                    raise InputError(f"entry ({a}, {b}) is {cell!r}, expected 0 or 1")
                bits |= cell << b
            rows.append(bits)
        cols = [0] * n
        for a, bits in enumerate(rows):
            for b in set_of(bits):
                cols[b] |= 1 << a
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "cols", tuple(cols))

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int]) -> "Profile":
        """Build directly from bit-rows (bit b of rows[a] = a qualifies b)."""
        full = (1 << n) - 1
        matrix = [[(r >> b) & 1 for b in range(n)] for r in rows]
        if any(r & ~full for r in rows):
            raise InputError("bit-row exceeds matrix width")
        return cls(matrix)

    def qualifies(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def matrix(self) -> list[list[int]]:
        return [[(self.rows[a] >> b) & 1 for b in range(self.n)] for a in range(self.n)]

    def complement(self) -> "Profile":
        full = (1 << self.n) - 1
        return Profile.from_rows(self.n, [r ^ full for r in self.rows])


@dataclass(frozen=True)
class Digraph:
    """A directed graph on dense vertex ids; self-loops allowed."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise InputError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adjacency):
            _check_range(nbrs, self.vertex_count, f"out-neighbors of {v}")
            if list(nbrs) != sorted(set(nbrs)):
                raise InputError(f"out-neighbors of {v} must be sorted and duplicate-free")

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in arcs:
            _check_range((u, v), vertex_count, "arc endpoint")
            adj[u].add(v)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in adj))

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                yield (u, v)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def in_neighbors(self, v: int) -> IndividualSet:
        return tuple(u for u in range(self.vertex_count) if v in self.adjacency[u])

    def reachable_from(self, sources: Iterable[int]) -> IndividualSet:
        """Vertices reachable from any source (sources included)."""
        seen = set(sources)
        stack = list(seen)
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return iset(seen)


def incidence_graph(profile: Profile) -> Digraph:
    """Digraph with an arc a -> b iff a qualifies b (loops for self-qualifiers)."""
    return Digraph(profile.n, tuple(set_of(r) for r in profile.rows))


def qualified_by(profile: Profile, Z: Iterable[int]) -> IndividualSet:
    """Individuals qualified by at least one member of Z."""
    Z = iset(Z)
    _check_range(Z, profile.n, "Z")
    bits = 0
    for a in Z:
        bits |= profile.rows[a]
    return set_of(bits)


def merge(g: Digraph, Y: Iterable[int]) -> tuple[Digraph, int, dict[int, int]]:
    """Contract the vertex set Y into a single vertex.

    The merged vertex inherits Y's external in/out neighborhoods; arcs
    internal to Y vanish.  Survivors keep their relative order and are
    renumbered 0..m-1; the merged vertex gets id m.  Returns the new graph,
    the merged vertex id, and the old-id -> new-id map for survivors.
    """
    Y = iset(Y)
    if not Y:
        raise InputError("merge: Y must be nonempty")
    _check_range(Y, g.vertex_count, "Y")
    yset = set(Y)
    survivors = [v for v in range(g.vertex_count) if v not in yset]
    index_map = {old: new for new, old in enumerate(survivors)}
    vy = len(survivors)

    out_y: set[int] = set()
    in_y: set[int] = set()
    adj: list[set[int]] = [set() for _ in range(vy + 1)]
    for u, v in g.arcs():
        if u in yset and v in yset:
            continue
        if u in yset:
            out_y.add(index_map[v])
        elif v in yset:
            in_y.add(index_map[u])
        else:
            adj[index_map[u]].add(index_map[v])
    adj[vy] = out_y
    for u in in_y:
        adj[u].add(vy)
    merged = Digraph(vy + 1, tuple(tuple(sorted(s)) for s in adj))
    return merged, vy, index_map


def restrict(profile: Profile, keep: Iterable[int]) -> tuple[Profile, dict[int, int]]:
    """Induced subprofile over ``keep`` plus the old-id -> new-id map."""
    keep = iset(keep)
    if not keep:
        raise InputError("restrict: keep must be nonempty")
    _check_range(keep, profile.n, "keep")
    index_map = {old: new for new, old in enumerate(keep)}
    matrix = [[(profile.rows[a] >> b) & 1 for b in keep] for a in keep]
    return Profile(matrix), index_map
