"""Solvers for group control by adding individuals.

The suite contains a subset-enumeration oracle (exponential in |N\\T|),
the two fixed-parameter pipelines (exponential only in |S| after the
qualification reduction rules, via directed vertex-weighted Steiner), the
polynomial special cases for qualifying- and disqualifying-consecutive
profiles, and an auto-dispatcher.  All solvers are deterministic, return
independently checkable certificates, and re-verify every certificate
before returning it.

All solvers except solve_dqc are optimizers: they report the minimum
certificate size.  solve_dqc is decision-grade; it reports the smallest
certificate found by its two-individual enumeration, which need not be
globally minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import (
    Digraph,
    IndividualSet,
    Profile,
    incidence_graph,
    iset,
    mask_of,
    merge,
    qualified_by,
    restrict,
    set_of,
)
from .domains import LinearOrder, is_dqc_under, is_qc_under, recognize_dqc, recognize_qc
from .errors import CapacityError, InputError
from .rules import Rule, _closure_mask, socially_qualified
from .steiner import DvwstInstance, solve_dvwst

DEFAULT_BRUTE_CAP = 25


@dataclass(frozen=True)
class GcaiInstance:
    """A control-by-adding instance (profile, S, T, k).

    k is clamped to [0, |N\\T|] at construction.  S may be empty only as
    the output of a reduction rule; the file format and generators always
    produce nonempty S.
    """

    profile: Profile
    S: IndividualSet
    T: IndividualSet
    k: int

    def __init__(self, profile: Profile, S: Iterable[int], T: Iterable[int], k: int):
        S = iset(S)
        T = iset(T)
        n = profile.n
        if any(not (0 <= a < n) for a in T):
            raise InputError("T: index out of range")
        if not set(S) <= set(T):
            raise InputError("S must be a subset of T")
        k = max(0, min(k, n - len(T)))
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "k", k)

    @property
    def pool(self) -> IndividualSet:
        """The addable individuals N \\ T."""
        tset = set(self.T)
        return tuple(a for a in range(self.profile.n) if a not in tset)


@dataclass(frozen=True)
class SolveResult:
    certificate: Optional[IndividualSet]
    optimal_cost: Optional[int]
    strategy: str

    @property
    def feasible(self) -> bool:
        return self.certificate is not None


def verify(inst: GcaiInstance, rule: Rule, U: Iterable[int]) -> bool:
    """Check a certificate independently of any solver."""
    U = iset(U)
    n = inst.profile.n
    if any(not (0 <= a < n) for a in U):
        return False
    if set(U) & set(inst.T):
        return False
    if len(U) > inst.k:
        return False
    qualified = socially_qualified(rule, inst.profile, inst.T + U)
    return set(inst.S) <= set(qualified)


def _checked(inst: GcaiInstance, rule: Rule, result: SolveResult) -> SolveResult:
    if result.certificate is not None and not verify(inst, rule, result.certificate):
        raise RuntimeError(f"solver {result.strategy} produced an invalid certificate")
    return result


# ---------------------------------------------------------------------------
# reduction rules


def _reduce_distinguished(profile: Profile, S: IndividualSet, allow_self: bool) -> IndividualSet:
    """Exhaustively drop S-members qualified from within S.

    The largest-index removable member goes first, so mutual pairs keep
    their smallest index.
    """
    S = list(S)
    while True:
        removable = None
        for a in reversed(S):
            if any(profile.qualifies(b, a) for b in S if allow_self or b != a):
                removable = a
                break
        if removable is None:
            return tuple(S)
        S.remove(removable)


def apply_reduction_rule_csr(inst: GcaiInstance) -> GcaiInstance:
    """No member of S may qualify a different member of S; T and k unchanged."""
    S = _reduce_distinguished(inst.profile, inst.S, allow_self=False)
    return GcaiInstance(inst.profile, S, inst.T, inst.k)


def apply_reduction_rule_lsr(inst: GcaiInstance) -> GcaiInstance:
    """As the CSR rule, but self-qualifiers also leave S (S may become empty)."""
    S = _reduce_distinguished(inst.profile, inst.S, allow_self=True)
    return GcaiInstance(inst.profile, S, inst.T, inst.k)


# ---------------------------------------------------------------------------
# brute force


def solve_bruteforce(
    inst: GcaiInstance, rule: Rule, cap: int = DEFAULT_BRUTE_CAP, method: str = "auto"
) -> SolveResult:
    """Minimum-cardinality certificate by subset enumeration over N \\ T.

    Subsets are tried in increasing size, then lexicographically, so the
    returned certificate is canonical.
    """
    pool = inst.pool
    t = len(pool)
    if t > cap:
        raise CapacityError(f"|N\\T| = {t} exceeds the brute-force cap of {cap}")
    if method == "auto":
        method = "vector" if t >= 16 and inst.profile.n <= 62 else "python"
    if method == "vector":
        found = _brute_vector(inst, rule, pool)
    elif method == "python":
        found = _brute_python(inst, rule, pool)
    else:
        raise InputError(f"unknown brute-force method {method!r}")
    if found is None:
        return SolveResult(None, None, "bruteforce")
    return _checked(inst, rule, SolveResult(found, len(found), "bruteforce"))


def _brute_python(inst: GcaiInstance, rule: Rule, pool: IndividualSet) -> Optional[IndividualSet]:
    profile = inst.profile
    tmask = mask_of(inst.T)
    smask = mask_of(inst.S)
    self_mask = mask_of(a for a in range(profile.n) if profile.qualifies(a, a))
    and_T = -1
    for b in inst.T:
        and_T &= profile.rows[b]
    for size in range(inst.k + 1):
        for combo in itertools.combinations(pool, size):
            member = tmask | mask_of(combo)
            if rule is Rule.CSR:
                seed = and_T
                for a in combo:
                    seed &= profile.rows[a]
                seed &= member
            else:
                seed = self_mask & member
            if smask & ~_closure_mask(profile, seed, member) == 0:
                return combo
    return None


def _brute_vector(inst: GcaiInstance, rule: Rule, pool: IndividualSet) -> Optional[IndividualSet]:
    """Batched enumeration over all subset masks; identical result to the
    python path (minimum popcount, then lexicographically smallest tuple)."""
    profile = inst.profile
    n = profile.n
    t = len(pool)
    rows = np.array(profile.rows, dtype=np.int64)
    tmask = mask_of(inst.T)
    smask = np.int64(mask_of(inst.S))
    self_mask = np.int64(mask_of(a for a in range(n) if profile.qualifies(a, a)))
    and_T = np.int64(((1 << n) - 1) & np.bitwise_and.reduce(
        np.array([profile.rows[b] for b in inst.T], dtype=np.int64)
    )) if inst.T else np.int64((1 << n) - 1)
    all_ones = np.int64((1 << n) - 1)

    best: Optional[tuple[int, int, int]] = None  # (popcount, -revkey, mask)
    chunk_bits = 20
    total = 1 << t
    for start in range(0, total, 1 << chunk_bits):
        stop = min(total, start + (1 << chunk_bits))
        masks = np.arange(start, stop, dtype=np.int64)
        pop = np.zeros_like(masks)
        member = np.full_like(masks, tmask)
        for i in range(t):
            bit = (masks >> i) & 1
            pop += bit
            member |= bit << pool[i]
        ok = pop <= inst.k
        if not ok.any():
            continue
        if rule is Rule.CSR:
            seed = np.full_like(masks, and_T)
            for i in range(t):
                sel = ((masks >> i) & 1).astype(bool)
                seed[sel] &= rows[pool[i]]
            seed &= member
        else:
            seed = self_mask & member
        reach = seed.copy()
        while True:
            spread = np.zeros_like(masks)
            for a in range(n):
                sel = ((reach >> a) & 1).astype(bool)
                spread[sel] |= rows[a]
            new = reach | (spread & member)
            if np.array_equal(new, reach):
                break
            reach = new
        ok &= (reach & smask) == smask
        if not ok.any():
            continue
        cpop = pop[ok]
        cmask = masks[ok]
        pmin = int(cpop.min())
        cmask = cmask[cpop == pmin]
        rev = np.zeros_like(cmask)
        for i in range(t):
            rev |= ((cmask >> i) & 1) << (t - 1 - i)
        pick = int(np.argmax(rev))
        cand = (pmin, -int(rev[pick]), int(cmask[pick]))
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return iset(pool[i] for i in range(t) if (best[2] >> i) & 1)


# ---------------------------------------------------------------------------
# FPT pipelines


def _better(best, cand):
    if best is None:
        return cand
    return min(best, cand)


def solve_csr_fpt(inst: GcaiInstance) -> SolveResult:
    """Exact CSR solver, exponential only in |S| after the reduction rule.

    For each guessed consensus individual, prunes the instance, merges the
    already-qualified set into a Steiner root and asks for a cheapest
    vertex set connecting the root to the remaining distinguished
    individuals.
    """
    profile = inst.profile
    n = profile.n
    S1 = apply_reduction_rule_csr(inst).S
    tset = set(inst.T)
    best: Optional[tuple[int, IndividualSet]] = None

    for a_star in range(n):
        charged = 0
        tprime = set(tset)
        kprime = inst.k
        if a_star not in tprime:
            tprime.add(a_star)
            kprime -= 1
            charged = 1
            if kprime < 0:
                continue
        if any(not profile.qualifies(b, a_star) for b in tprime):
            continue
        keep = sorted(tprime | {a for a in range(n) if a not in tprime and profile.qualifies(a, a_star)})
        sub, idx = restrict(profile, keep)
        F = socially_qualified(Rule.CSR, sub, [idx[a] for a in tprime])
        fset = set(F)
        remaining = [s for s in S1 if idx[s] not in fset]
        if not remaining:
            cand = (charged, (a_star,) if charged else ())
            best = _better(best, cand)
            if best[0] == 0:
                break
            continue
        graph = incidence_graph(sub)
        merged, root, mmap = merge(graph, F)
        terminals = iset(mmap[idx[s]] for s in remaining)
        weights = [0] * merged.vertex_count
        back = {new: old for old, new in mmap.items()}
        for new_id, sub_id in back.items():
            if keep[sub_id] not in tprime:
                weights[new_id] = 1
        res = solve_dvwst(DvwstInstance(merged, terminals, root, tuple(weights), kprime))
        if res is None:
            continue
        cost, J = res
        added = [keep[back[j]] for j in J if keep[back[j]] not in tprime]
        if charged:
            added.append(a_star)
        cand = (cost + charged, iset(added))
        best = _better(best, cand)
        if best[0] == 0:
            break

    if best is None:
        return SolveResult(None, None, "fpt")
    return _checked(inst, Rule.CSR, SolveResult(best[1], best[0], "fpt"))


def solve_lsr_fpt(inst: GcaiInstance) -> SolveResult:
    """Exact LSR solver: one Steiner instance rooted at a fresh vertex with
    arcs to every self-qualifier."""
    profile = inst.profile
    n = profile.n
    S2 = apply_reduction_rule_lsr(inst).S
    if not S2:
        return _checked(inst, Rule.LSR, SolveResult((), 0, "fpt"))
    tset = set(inst.T)
    arcs = list(incidence_graph(profile).arcs())
    arcs.extend((n, a) for a in range(n) if profile.qualifies(a, a))
    graph = Digraph.from_arcs(n + 1, arcs)
    weights = tuple(0 if a in tset else 1 for a in range(n)) + (0,)
    res = solve_dvwst(DvwstInstance(graph, S2, n, weights, inst.k))
    if res is None:
        return SolveResult(None, None, "fpt")
    cost, J = res
    U = iset(a for a in J if a not in tset)
    return _checked(inst, Rule.LSR, SolveResult(U, cost, "fpt"))


# ---------------------------------------------------------------------------
# consecutive-domain solvers


def solve_csr_qc(inst: GcaiInstance, order: LinearOrder) -> SolveResult:
    """Polynomial CSR solver on QC profiles: only the order-extreme members
    of S need to be targeted; the rest sit between them."""
    if not is_qc_under(inst.profile, order):
        raise InputError("order is not a QC witness for this profile")
    if not inst.S:
        return _checked(inst, Rule.CSR, SolveResult((), 0, "qc-csr"))
    left = min(inst.S, key=lambda a: order.position[a])
    right = max(inst.S, key=lambda a: order.position[a])
    shrunk = GcaiInstance(inst.profile, {left, right}, inst.T, inst.k)
    res = solve_csr_fpt(shrunk)
    return _checked(inst, Rule.CSR, SolveResult(res.certificate, res.optimal_cost, "qc-csr"))


def solve_dqc(inst: GcaiInstance, rule: Rule, order: LinearOrder) -> SolveResult:
    """Polynomial decision procedure on DQC profiles for either rule.

    For k >= 2 it enumerates all sets of at most two individuals whose
    qualifications cover S and solves each derived instance with the FPT
    solver (two terminals, hence polynomial).  The reported certificate is
    the smallest one found; global minimality is not guaranteed, so
    optimal_cost is left unset on that path.
    """
    if not is_dqc_under(inst.profile, order):
        raise InputError("order is not a DQC witness for this profile")
    profile = inst.profile
    n = profile.n
    pool = set(inst.pool)

    if inst.k < 2:
        for size in range(inst.k + 1):
            for combo in itertools.combinations(sorted(pool), size):
                if verify(inst, rule, combo):
                    return _checked(inst, rule, SolveResult(iset(combo), size, "dqc"))
        return SolveResult(None, None, "dqc")

    if verify(inst, rule, ()):
        return _checked(inst, rule, SolveResult((), 0, "dqc"))

    smask = mask_of(inst.S)
    solver = solve_csr_fpt if rule is Rule.CSR else solve_lsr_fpt
    best: Optional[tuple[int, IndividualSet]] = None
    candidates = [(a,) for a in range(n)]
    candidates.extend(itertools.combinations(range(n), 2))
    for sprime in candidates:
        if smask & ~mask_of(qualified_by(profile, sprime)):
            continue
        outside = [a for a in sprime if a in pool]
        kprime = inst.k - len(outside)
        if kprime < 0:
            continue
        sub = GcaiInstance(profile, sprime, set(inst.T) | set(sprime), kprime)
        res = solver(sub)
        if res.certificate is None:
            continue
        U = iset(tuple(res.certificate) + tuple(outside))
        best = _better(best, (len(U), U))
    if best is None:
        return SolveResult(None, None, "dqc")
    return _checked(inst, rule, SolveResult(best[1], None, "dqc"))


# ---------------------------------------------------------------------------
# dispatch


def solve_auto(inst: GcaiInstance, rule: Rule, cap: int = DEFAULT_BRUTE_CAP) -> SolveResult:
    """Pick a strategy: DQC domain, then QC domain (CSR only), then the
    cheaper of FPT-in-|S| and brute-force-in-|N\\T| by work estimate."""
    dqc_order = recognize_dqc(inst.profile)
    if dqc_order is not None:
        return solve_dqc(inst, rule, dqc_order)
    if rule is Rule.CSR:
        qc_order = recognize_qc(inst.profile)
        if qc_order is not None:
            return solve_csr_qc(inst, qc_order)
    if rule is Rule.CSR:
        reduced = apply_reduction_rule_csr(inst).S
    else:
        reduced = apply_reduction_rule_lsr(inst).S
    t = len(inst.pool)
    if 3 ** len(reduced) <= 2 ** t or t > cap:
        return solve_csr_fpt(inst) if rule is Rule.CSR else solve_lsr_fpt(inst)
    return solve_bruteforce(inst, rule, cap=cap)
