"""Social welfare functions: aggregation over linear orders under Kendall distance.

Orders are handled internally as tuples of alternative indices.  The
pairwise matrix ``C[a, b]`` counts voters ranking ``a`` above ``b``; the
total distance of an order ``x`` to the profile is the sum of ``C[a, b]``
over pairs that ``x`` ranks ``b`` above ``a``.  Phase two of legislation
reuses these routines with matrices built from partial ballots.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from typing import Callable, Sequence

import numpy as np

from . import _finite
from .core import (
    WINNER_CAP,
    AggregationResult,
    AggregationSpec,
    Election,
    GuardExceeded,
    Permutation,
    ValidationError,
    finalize,
)

KEMENY_GUARD = 18
EXHAUSTIVE_GUARD = 9
CONDORCET_GUARD = 6
LOCAL_SEARCH_RESTARTS = 10


def _check(election: Election) -> None:
    if election.setting != "ranking":
        raise ValidationError(f"expected a ranking election, got {election.setting!r}")


def voter_orders(election: Election) -> list[tuple[int, ...]]:
    idx = {a: i for i, a in enumerate(election.alternatives)}
    return [tuple(idx[a] for a in v.order) for v in election.voters]


def pairwise_matrix(orders: Sequence[Sequence[int]], z: int) -> np.ndarray:
    """``C[a, b]`` = number of (partial) orders placing ``a`` above ``b``."""
    C = np.zeros((z, z), dtype=np.int64)
    for order in orders:
        for s, a in enumerate(order):
            for b in order[s + 1:]:
                C[a, b] += 1
    return C


def order_cost(C: np.ndarray, order: Sequence[int]) -> int:
    """Total disagreement of ``order`` with the pairwise counts."""
    total = 0
    for s, a in enumerate(order):
        for b in order[s + 1:]:
            total += C[b, a]
    return int(total)


def kemeny_dp(C: np.ndarray, cap: int = WINNER_CAP):
    """Exact minimizers of :func:`order_cost` by dynamic programming over subsets.

    ``best[S]`` is the cheapest arrangement of ``S`` as a prefix; placing
    ``a`` after ``S`` costs ``sum_{b in S} C[a, b]``.  Returns
    ``(cost, orders, truncated)`` with every optimal order (up to ``cap``).
    """
    z = C.shape[0]
    if z > KEMENY_GUARD:
        raise GuardExceeded("Kemeny subset DP alternatives", z, KEMENY_GUARD)
    if z == 0:
        return 0, [()], False
    full = (1 << z) - 1
    size = 1 << z
    # place_cost[a][S] = sum_{b in S} C[a, b]
    place_cost = np.zeros((z, size), dtype=np.int64)
    for a in range(z):
        arr = np.zeros(1, dtype=np.int64)
        for b in range(z):
            arr = np.concatenate([arr, arr + C[a, b]])
        place_cost[a] = arr
    masks = np.arange(size, dtype=np.int64)
    popcount = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    big = np.iinfo(np.int64).max // 4
    best = np.full(size, big, dtype=np.int64)
    best[0] = 0
    for k in range(1, z + 1):
        layer = masks[popcount == k]
        vals = np.full(layer.size, big, dtype=np.int64)
        for a in range(z):
            bit = 1 << a
            has = (layer & bit) != 0
            prev = layer[has] ^ bit
            cand = best[prev] + place_cost[a][prev]
            vals[has] = np.minimum(vals[has], cand)
        best[layer] = vals

    # backtrack every tying choice of the last element, breadth first
    orders: list[tuple[int, ...]] = []
    truncated = False
    queue = deque([(full, ())])
    while queue:
        S, suffix = queue.popleft()
        if S == 0:
            orders.append(suffix)
            if len(orders) >= cap:
                truncated = bool(queue)
                break
            continue
        for a in range(z):
            bit = 1 << a
            if S & bit:
                prev = S ^ bit
                if best[prev] + place_cost[a][prev] == best[S]:
                    queue.append((prev, (a,) + suffix))
        if len(queue) > 4 * cap:
            truncated = True
            # keep the frontier bounded; completions of the kept states still finish
            queue = deque(itertools.islice(queue, 4 * cap))
    return int(best[full]), orders, truncated


def all_orders(z: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(z))), dtype=np.int64).reshape(-1, z)


def order_distances(perms: np.ndarray, ballots: Sequence[Sequence[int]]) -> np.ndarray:
    """``D[r, i]`` = number of pairs of ballot i that order r reverses.

    Ballots may be partial (only the listed alternatives are compared).
    """
    z = perms.shape[1]
    pos = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    pos[rows, perms] = np.arange(z)[None, :]
    D = np.zeros((perms.shape[0], len(ballots)), dtype=np.int64)
    for j, b in enumerate(ballots):
        for s in range(len(b)):
            for t in range(s + 1, len(b)):
                D[:, j] += pos[:, b[s]] > pos[:, b[t]]
    return D


def _to_points(election_alts: Sequence[str], orders) -> list[Permutation]:
    return [Permutation(tuple(election_alts[i] for i in o)) for o in orders]


def _exhaustive_guard(z: int, limit: int, what: str) -> None:
    if z > limit:
        raise GuardExceeded(what, math.factorial(z), math.factorial(limit))


# -- public solvers -------------------------------------------------------


def solve_kemeny(election: Election, spec: AggregationSpec) -> AggregationResult:
    """L_1 aggregation: every Kemeny ranking, by subset DP."""
    _check(election)
    C = pairwise_matrix(voter_orders(election), election.m)
    cost, orders, truncated = kemeny_dp(C)
    return finalize(_to_points(election.alternatives, orders), spec, float(cost), truncated=truncated)


def _exhaustive(election: Election, spec: AggregationSpec, p: float, what: str):
    _check(election)
    _exhaustive_guard(election.m, EXHAUSTIVE_GUARD, what)
    perms = all_orders(election.m)
    D = order_distances(perms, voter_orders(election))
    idx, obj = _finite.lp_argmin(D, p)
    return perms, D, idx, obj


def solve_center_permutation(election: Election, spec: AggregationSpec) -> AggregationResult:
    """L_inf aggregation: orders minimizing the largest distance to a voter."""
    perms, _, idx, obj = _exhaustive(election, spec, math.inf, "center permutation enumeration")
    return _finish(election, spec, perms[idx], obj)


def solve_ranking_lp(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Exact L_p aggregation for any ``p`` by enumerating all orders."""
    perms, _, idx, obj = _exhaustive(election, spec, spec.p, "ranking L_p enumeration")
    return _finish(election, spec, perms[idx], obj)


def _finish(election, spec, orders, obj):
    pts = _to_points(election.alternatives, [tuple(o) for o in orders])
    return finalize(pts, spec, float(obj))


def solve_ranking_reduced(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Reduced L_p: refine the L_p ties by the limit q -> p.

    For ``p = 1`` beyond the enumeration guard the Kemeny co-winners from
    the subset DP are refined instead.
    """
    if spec.p == 1 and election.m > EXHAUSTIVE_GUARD:
        _check(election)
        orders = voter_orders(election)
        cost, cands, truncated = kemeny_dp(pairwise_matrix(orders, election.m))
        D = order_distances(np.array(cands, dtype=np.int64), orders)
        keep = _finite.reduced_select(D, 1.0)
        return finalize(_to_points(election.alternatives, [cands[i] for i in keep]), spec,
                        float(cost), truncated=truncated)
    perms, D, idx, obj = _exhaustive(election, spec, spec.p, "ranking reduced L_p enumeration")
    keep = idx[_finite.reduced_select(D[idx], spec.p)]
    return _finish(election, spec, perms[keep], obj)


def solve_ranking_condorcet(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Condorcet winners among all orders (full pairwise tournament)."""
    _check(election)
    _exhaustive_guard(election.m, CONDORCET_GUARD, "ranking Condorcet tournament")
    perms = all_orders(election.m)
    D = order_distances(perms, voter_orders(election))
    mask = _finite.condorcet_mask(D, spec.strict)
    return finalize(_to_points(election.alternatives, perms[mask]), spec, None)


def local_search(
    z: int,
    cost: Callable[[tuple[int, ...]], float],
    starts: Sequence[tuple[int, ...]],
) -> tuple[float, tuple[int, ...]]:
    """Best-improvement adjacent-transposition hill climbing from each start."""
    best_cost, best = math.inf, None
    for start in starts:
        cur = tuple(start)
        cur_cost = cost(cur)
        improved = True
        while improved:
            improved = False
            for i in range(z - 1):
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                c = cost(nxt)
                if c < cur_cost:
                    cur, cur_cost, improved = nxt, c, True
        if cur_cost < best_cost or (cur_cost == best_cost and cur < best):
            best_cost, best = cur_cost, cur
    return best_cost, best


def kemeny_local_search(
    election: Election, spec: AggregationSpec, restarts: int = LOCAL_SEARCH_RESTARTS
) -> AggregationResult:
    """Heuristic Kemeny ranking for any number of alternatives.

    Starts from every voter's order plus ``restarts`` random orders drawn
    with ``spec.seed``.  The objective is exact; optimality is not.
    """
    _check(election)
    z = election.m
    orders = voter_orders(election)
    C = pairwise_matrix(orders, z)
    rng = np.random.default_rng(spec.seed)
    starts = list(dict.fromkeys(orders)) + [tuple(int(a) for a in rng.permutation(z)) for _ in range(restarts)]
    cost, best = local_search(z, lambda o: order_cost(C, o), starts)
    return finalize(_to_points(election.alternatives, [best]), spec, float(cost), heuristic=True,
                    unique=False)


def solve_ranking(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Dispatch by method and exponent."""
    if spec.method == "condorcet":
        return solve_ranking_condorcet(election, spec)
    if spec.method == "reduced_lp":
        return solve_ranking_reduced(election, spec)
    if spec.p == 1:
        return solve_kemeny(election, spec)
    if math.isinf(spec.p):
        return solve_center_permutation(election, spec)
    return solve_ranking_lp(election, spec)
