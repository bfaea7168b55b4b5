"""Committee elections under the symmetric-difference (Hamming) distance.

Committees are bitmasks over ``election.alternatives`` internally and
:class:`Subset` points at the boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import replace

import numpy as np

from . import _finite
from .core import (
    WINNER_CAP,
    AggregationResult,
    AggregationSpec,
    Election,
    GuardExceeded,
    Subset,
    ValidationError,
    finalize,
)

EXHAUSTIVE_GUARD = 22
CONDORCET_GUARD = 10


def _check(election: Election) -> None:
    if election.setting not in ("committee", "committee_fixed_k"):
        raise ValidationError(f"expected a committee election, got {election.setting!r}")


def voter_masks(election: Election) -> np.ndarray:
    idx = {a: i for i, a in enumerate(election.alternatives)}
    return np.array([sum(1 << idx[a] for a in v.members) for v in election.voters], dtype=np.int64)


def approval_counts(election: Election) -> np.ndarray:
    idx = {a: i for i, a in enumerate(election.alternatives)}
    counts = np.zeros(election.m, dtype=np.int64)
    for v in election.voters:
        for a in v.members:
            counts[idx[a]] += 1
    return counts


def to_subset(election: Election, mask: int) -> Subset:
    return Subset(a for i, a in enumerate(election.alternatives) if mask >> i & 1)


def _hamming_objective(election: Election, members: set, p: float) -> float:
    ds = [len(members ^ v.members) for v in election.voters]
    return float(max(ds)) if math.isinf(p) else float(sum(d**p for d in ds))


def candidate_masks(election: Election) -> np.ndarray:
    m = election.m
    masks = np.arange(1 << m, dtype=np.int64)
    if election.setting == "committee_fixed_k":
        masks = masks[np.bitwise_count(masks.astype(np.uint64)) == election.k]
    return masks


def mask_distances(masks: np.ndarray, vmasks: np.ndarray) -> np.ndarray:
    return np.bitwise_count((masks[:, None] ^ vmasks[None, :]).astype(np.uint64)).astype(np.int64)


def _combos(fixed: list[str], free: list[str], sizes) -> tuple[list[Subset], bool]:
    """``fixed`` plus every ``r``-combination of ``free`` for ``r`` in ``sizes``, capped."""
    out: list[Subset] = []
    for r in sizes:
        for extra in itertools.combinations(free, r):
            out.append(Subset(fixed + list(extra)))
            if len(out) > WINNER_CAP:
                return out, True
    return out, False


def solve_median_element(election: Election, spec: AggregationSpec) -> AggregationResult:
    """L_1 over all committees: alternatives approved by at least half the voters.

    Alternatives approved by exactly n/2 voters may be dropped without cost;
    all such combinations are co-winners.  The representative keeps them all.
    """
    _check(election)
    counts = approval_counts(election)
    n = election.n
    alts = election.alternatives
    forced = [a for a, c in zip(alts, counts) if 2 * c > n]
    free = [a for a, c in zip(alts, counts) if 2 * c == n]
    rep = Subset(forced + free)
    winners, truncated = _combos(forced, free, range(len(free) + 1))
    res = finalize(winners, spec, _hamming_objective(election, set(rep.members), 1.0),
                   representative=rep, truncated=truncated,
                   diagnostics={"threshold_alternatives": sorted(free)})
    return res


def solve_topk_approval(election: Election, spec: AggregationSpec) -> AggregationResult:
    """L_1 over size-k committees: the k most approved alternatives."""
    _check(election)
    k = election.k
    if k is None or k > election.m:
        raise ValidationError("top-k approval needs 0 <= k <= m")
    counts = approval_counts(election)
    alts = election.alternatives
    if k == 0:
        return finalize([Subset()], spec, _hamming_objective(election, set(), 1.0))
    cutoff = sorted(counts, reverse=True)[k - 1]
    above = [a for a, c in zip(alts, counts) if c > cutoff]
    tied = [a for a, c in zip(alts, counts) if c == cutoff]
    winners, truncated = _combos(above, tied, [k - len(above)])
    obj = _hamming_objective(election, set(winners[0].members), 1.0)
    return finalize(winners, spec, obj, truncated=truncated)


def _exhaustive(election: Election, p: float):
    _check(election)
    if election.m > EXHAUSTIVE_GUARD:
        raise GuardExceeded("committee enumeration", 2**election.m, 2**EXHAUSTIVE_GUARD)
    masks = candidate_masks(election)
    vmasks = voter_masks(election)
    # accumulate per voter to keep memory at O(#masks)
    acc = np.zeros(masks.size, dtype=float)
    for vm in vmasks:
        d = np.bitwise_count((masks ^ vm).astype(np.uint64)).astype(float)
        if math.isinf(p):
            np.maximum(acc, d, out=acc)
        else:
            acc += d**p
    idx = np.flatnonzero(_finite.near_min(acc))
    return masks, vmasks, idx, float(acc[idx].min())


def solve_committee_lp(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Exact L_p (or reduced L_p) by enumerating every admissible committee."""
    masks, vmasks, idx, obj = _exhaustive(election, spec.p)
    if spec.method == "reduced_lp":
        D = mask_distances(masks[idx], vmasks)
        idx = idx[_finite.reduced_select(D, spec.p)]
    truncated = idx.size > WINNER_CAP
    winners = [to_subset(election, int(mk)) for mk in masks[idx[:WINNER_CAP + 1]]]
    return finalize(winners, spec, obj, truncated=truncated)


def solve_closest_subset(election: Election, spec: AggregationSpec) -> AggregationResult:
    """L_inf: committees minimizing the largest symmetric difference to a ballot."""
    return solve_committee_lp(election, replace(spec, p=math.inf))


def solve_committee_condorcet(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Exact Condorcet winners over all admissible committees."""
    _check(election)
    if election.m > CONDORCET_GUARD:
        raise GuardExceeded("committee Condorcet tournament", 4**election.m, 4**CONDORCET_GUARD)
    masks = candidate_masks(election)
    D = mask_distances(masks, voter_masks(election))
    ok = _finite.condorcet_mask(D, spec.strict)
    return finalize([to_subset(election, int(mk)) for mk in masks[ok]], spec, None)


def solve_committee(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Dispatch by method, exponent and committee-size regime."""
    if spec.method == "condorcet":
        return solve_committee_condorcet(election, spec)
    if spec.method == "lp" and spec.p == 1:
        if election.setting == "committee":
            return solve_median_element(election, spec)
        return solve_topk_approval(election, spec)
    return solve_committee_lp(election, spec)
