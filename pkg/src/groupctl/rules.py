"""The two procedural aggregation rules, computed by fixed-point iteration.

CSR seeds with the individuals qualified by every member of T; LSR seeds
with the self-qualifiers in T.  Both then close under one-step
qualification inside T.  The closure is run as a worklist BFS over bit
rows, which realizes the round-based definition in O(n^2).
"""

from __future__ import annotations

import enum
from typing import Iterable

from .core import IndividualSet, Profile, iset, mask_of, set_of, _check_range


class Rule(enum.Enum):
    CSR = "csr"
    LSR = "lsr"


def initial_set(rule: Rule, profile: Profile, T: Iterable[int]) -> IndividualSet:
    """Seed of the iteration: CSR = qualified by all of T, LSR = self-qualifiers."""
    T = iset(T)
    _check_range(T, profile.n, "T")
    tmask = mask_of(T)
    if rule is Rule.CSR:
        return tuple(a for a in T if all(profile.qualifies(b, a) for b in T))
    return tuple(a for a in T if profile.qualifies(a, a))


def _closure_mask(profile: Profile, seed_mask: int, tmask: int) -> int:
    reach = seed_mask & tmask
    frontier = reach
    while frontier:
        spread = 0
        m = frontier
        while m:
            low = m & -m
            spread |= profile.rows[low.bit_length() - 1]
            m ^= low
        frontier = spread & tmask & ~reach
        reach |= frontier
    return reach


def socially_qualified(rule: Rule, profile: Profile, T: Iterable[int]) -> IndividualSet:
    """The rule's socially qualified individuals in T (empty seed gives the empty set)."""
    T = iset(T)
    _check_range(T, profile.n, "T")
    seed = initial_set(rule, profile, T)
    return set_of(_closure_mask(profile, mask_of(seed), mask_of(T)))


def socially_qualified_naive(rule: Rule, profile: Profile, T: Iterable[int]) -> IndividualSet:
    """Literal transcription of the round-based definition; kept as a test oracle."""
    T = iset(T)
    K = set(initial_set(rule, profile, T))
    while True:
        nxt = set(K) | {a for a in T if any(profile.qualifies(b, a) for b in K)}
        if nxt == K:
            return iset(K)
        K = nxt
