"""
Rank aggregation under the Kendall tau distance
===============================================

L_1 is the Kemeny rule, solved exactly by a dynamic program over subsets.
L_inf is the center permutation.
"""

import math

from metricvote import AggregationSpec, Permutation, aggregate, check_monotone, validate_election


def election(*orders):
    return validate_election({"setting": "ranking", "alternatives": sorted(orders[0]),
                              "voters": [list(o) for o in orders]})


# a cycle has no Condorcet winner
r = aggregate(election("abc", "bca", "cab"), AggregationSpec(method="condorcet"))
print("cycle, Condorcet winners:", r.keys())

# two of three voters agree, yet L_2 does not return their ranking
e = election("abc", "abc", "cab")
for p in (1, 2):
    r = aggregate(e, AggregationSpec(p=p))
    print(f"L_{p}: {r.keys()} objective {r.objective:g}")

e = election("abcde", "eabcd")
for p in (1, math.inf):
    r = aggregate(e, AggregationSpec(p=p))
    print(f"L_{p} co-winners ({len(r.winners)}):", r.keys()[:4], "objective", r.objective)

# moving the second voter onto a>b>e>c>d changes the reduced L_1 winner
w = Permutation(tuple("abecd"))
for spec in (AggregationSpec(method="reduced_lp", p=1), AggregationSpec(p=1), AggregationSpec(p=math.inf)):
    rep = check_monotone(e, spec, 1, w)
    print(f"{spec.method} p={spec.p:g}: monotone={rep.passed}, winners after move {[x.order for x in rep.winners][:2]}")
