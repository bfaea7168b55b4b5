"""Brute-force reference solvers over explicitly enumerated point spaces.

These are deliberately naive.  Distances come straight from
:mod:`metricvote.metrics` (permutations use their own pair-enumeration count
so that the merge-sort Kendall distance is checked too), and every argmin is
taken over the full space.  Guards raise instead of sampling.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _finite
from .core import (
    AggregationResult,
    AggregationSpec,
    Document,
    Election,
    GuardExceeded,
    Label,
    Permutation,
    Point,
    Subset,
    ValidationError,
    finalize,
)
from .metrics import metric_for

SPACE_GUARD = 2_000_000
CONDORCET_GUARD = 10**9
BFS_MAX_LEN = 5
BFS_MAX_POOL = 6


@dataclass(frozen=True)
class FiniteSpace:
    setting: str
    points: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.points)


def space_size(election: Election, length_bound: int | None = None) -> int:
    s, m = election.setting, election.m
    if s == "plurality":
        return m
    if s == "ranking":
        return math.factorial(m)
    if s == "committee":
        return 2**m
    if s == "committee_fixed_k":
        return math.comb(m, election.k)
    if s == "legislation":
        bound = election.ell if length_bound is None else length_bound
        return sum(math.perm(m, k) for k in range(min(bound, m) + 1))
    raise ValidationError(f"setting {s!r} has no finite outcome space")


def enumerate_space(
    election: Election, length_bound: int | None = None, guard: int = SPACE_GUARD
) -> FiniteSpace:
    """Every candidate outcome of a finite setting.

    For legislation the candidates are all orderings of all subsets of the
    sentence pool with at most ``length_bound`` sentences (default: the
    longest proposal, so the election's swap weight stays valid).
    """
    size = space_size(election, length_bound)
    if size > guard:
        raise GuardExceeded(f"{election.setting} outcome space", size, guard)
    s, alts = election.setting, election.alternatives
    if s == "plurality":
        pts: list[Point] = [Label(a) for a in alts]
    elif s == "ranking":
        pts = [Permutation(o) for o in itertools.permutations(alts)]
    elif s == "committee":
        pts = [
            Subset(c) for r in range(len(alts) + 1) for c in itertools.combinations(alts, r)
        ]
    elif s == "committee_fixed_k":
        pts = [Subset(c) for c in itertools.combinations(alts, election.k)]
    else:
        bound = election.ell if length_bound is None else length_bound
        pts = [
            Document(o)
            for r in range(min(bound, len(alts)) + 1)
            for o in itertools.permutations(alts, r)
        ]
    return FiniteSpace(s, tuple(pts))


def _pair_discordance(space: FiniteSpace, voters) -> np.ndarray:
    alts = space.points[0].order
    idx = {a: i for i, a in enumerate(alts)}
    # pos[r, a] = position of alternative a in candidate r
    pos = np.empty((len(space.points), len(alts)), dtype=np.int64)
    for r, p in enumerate(space.points):
        for i, a in enumerate(p.order):
            pos[r, idx[a]] = i
    D = np.zeros((len(space.points), len(voters)), dtype=np.int64)
    for j, v in enumerate(voters):
        order = [idx[a] for a in v.order]
        for s in range(len(order)):
            for t in range(s + 1, len(order)):
                D[:, j] += pos[:, order[s]] > pos[:, order[t]]
    return D


def distance_matrix(election: Election, space: FiniteSpace) -> np.ndarray:
    """``D[r, i] = d(space[r], v_i)``."""
    if election.setting == "ranking":
        return _pair_discordance(space, election.voters)
    d = metric_for(election)
    return np.array([[d(x, v) for v in election.voters] for x in space.points], dtype=float)


def _pick(space: FiniteSpace, idx) -> list[Point]:
    return [space.points[i] for i in idx]


def brute_force_lp(
    election: Election, space: FiniteSpace, spec: AggregationSpec
) -> AggregationResult:
    """Exact L_p (or reduced L_p) winners by scanning every point of ``space``."""
    if len(space) > SPACE_GUARD:
        raise GuardExceeded("brute-force L_p", len(space), SPACE_GUARD)
    D = distance_matrix(election, space)
    idx, obj = _finite.lp_argmin(D, spec.p)
    if spec.method == "reduced_lp":
        idx = idx[_finite.reduced_select(D[idx], spec.p)]
    return finalize(_pick(space, idx), spec, obj, diagnostics={"space_size": len(space)})


def brute_force_condorcet(
    election: Election, space: FiniteSpace, spec: AggregationSpec
) -> AggregationResult:
    """Exact Condorcet winners (strict or weak per ``spec.strict``)."""
    work = len(space) ** 2 * election.n
    if work > CONDORCET_GUARD:
        raise GuardExceeded("brute-force Condorcet comparisons", work, CONDORCET_GUARD)
    D = distance_matrix(election, space)
    idx = np.flatnonzero(_finite.condorcet_mask(D, spec.strict))
    return finalize(_pick(space, idx), spec, None, diagnostics={"space_size": len(space)})


def bfs_edit_distance(x: Document, y: Document, ell: int) -> Fraction:
    """Exact weighted edit distance by uniform-cost search over documents.

    Operations: delete any sentence (1), insert a sentence of ``y`` that is
    not present (1), swap two neighbours (1/ell**2).  Inserting a sentence
    outside ``y`` or a second copy can only be undone by a delete, so such
    moves are never needed.
    """
    pool = list(dict.fromkeys(x.sentences + y.sentences))
    if max(len(x.sentences), len(y.sentences)) > BFS_MAX_LEN or len(pool) > BFS_MAX_POOL:
        raise GuardExceeded("edit-distance search", max(len(x.sentences), len(y.sentences), len(pool)),
                            BFS_MAX_LEN)
    swap = Fraction(1, ell**2)
    one = Fraction(1)
    start, goal = tuple(x.sentences), tuple(y.sentences)
    best = {start: Fraction(0)}
    heap = [(Fraction(0), start)]
    while heap:
        cost, doc = heapq.heappop(heap)
        if doc == goal:
            return cost
        if cost > best[doc]:
            continue
        moves = []
        for i in range(len(doc)):
            moves.append((doc[:i] + doc[i + 1:], one))
        for i in range(len(doc) - 1):
            moves.append((doc[:i] + (doc[i + 1], doc[i]) + doc[i + 2:], swap))
        present = set(doc)
        for s in goal:
            if s not in present:
                for i in range(len(doc) + 1):
                    moves.append((doc[:i] + (s,) + doc[i:], one))
        for nxt, w in moves:
            c = cost + w
            if c < best.get(nxt, c + 1):
                best[nxt] = c
                heapq.heappush(heap, (c, nxt))
    raise AssertionError("target document unreachable")
