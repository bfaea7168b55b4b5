"""Single-winner elections under the discrete metric.

Every voter is at distance 1 from every alternative except her own, so each
objective is a function of the vote counts alone.
"""

from __future__ import annotations

from collections import Counter

from .core import AggregationResult, AggregationSpec, Election, Label, finalize


def vote_counts(election: Election) -> dict[str, int]:
    counts = Counter(v.id for v in election.voters)
    return {a: counts.get(a, 0) for a in election.alternatives}


def plurality_winners(election: Election) -> list[str]:
    counts = vote_counts(election)
    top = max(counts.values())
    return [a for a, c in counts.items() if c == top]


def solve_plurality(election: Election, spec: AggregationSpec) -> AggregationResult:
    counts = vote_counts(election)
    n = election.n
    top = max(counts.values())
    leaders = [a for a, c in counts.items() if c == top]
    unanimous = top == n

    if spec.method == "condorcet":
        # x beats y by V(x) votes to V(y)
        if spec.strict:
            winners = leaders if len(leaders) == 1 else []
        else:
            winners = leaders
        return finalize([Label(a) for a in winners], spec, None)

    if spec.is_inf:
        objective = 0.0 if unanimous else 1.0
        if spec.method == "lp" and not unanimous:
            winners = list(election.alternatives)
        else:
            # as q grows, sum d**q = n - V(x) for every q, so the limit keeps the leaders
            winners = leaders
        return finalize([Label(a) for a in winners], spec, objective)

    # sum_i d(v_i, x)**p = n - V(x) for every finite p
    return finalize([Label(a) for a in leaders], spec, float(n - top))
