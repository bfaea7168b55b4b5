"""
Committee elections under the Hamming distance
==============================================

L_1 keeps every alternative approved by a majority.  L_inf is the
closest-subset (minimax approval) rule.
"""

import math

from metricvote import AggregationSpec, Subset, aggregate, check_majoritarian, validate_election


def election(alts, *ballots, k=None):
    raw = {"setting": "committee", "alternatives": list(alts), "voters": [list(b) for b in ballots]}
    if k is not None:
        raw.update(setting="committee_fixed_k", k=k)
    return validate_election(raw)


e = election("ab", "a", "a", "b")
for p in (1, 2, math.inf):
    r = aggregate(e, AggregationSpec(p=p))
    print(f"L_{p}: {r.keys()} objective {r.objective:g}")
print("L_2 majoritarian:", check_majoritarian(e, AggregationSpec(p=2)).passed)

# five voters without a Condorcet committee
e = election("abc", "", "", "ab", "ac", "bc")
print("Condorcet winners:", aggregate(e, AggregationSpec(method="condorcet")).keys())

# L_2 ties every pair; moving a voter onto {a,b} makes {a,b} lose
e = election("abcd", "", "abcd")
print("L_2 winners:", aggregate(e, AggregationSpec(p=2)).keys())
moved = e.with_voter(1, Subset(frozenset("ab")))
print("after the move:", aggregate(moved, AggregationSpec(p=2)).keys())

# fixed committee size: top-k approval
e = election("abcd", "ab", "ac", "ad", "b", k=2)
print("k = 2:", aggregate(e, AggregationSpec(p=1)).keys())
