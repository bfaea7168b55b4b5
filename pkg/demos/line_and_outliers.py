"""
Aggregating points on a line
============================

The L_1 rule picks the median, L_2 the mean and L_inf the midrange.
Larger p gives an outlier more pull.
"""

import math

from metricvote import AggregationSpec, aggregate, validate_election
from metricvote.line import figure1_curve

e = validate_election({"setting": "line", "voters": [0, 0, 0, 1, 10]})
for p in (1, 2, 3, math.inf):
    r = aggregate(e, AggregationSpec(method="lp", p=p))
    print(f"L_{p}: {r.representative.value:.4f}")

# even number of voters: every point between the two middle values wins
r = aggregate(validate_election({"setting": "line", "voters": [0, 1, 3, 7]}), AggregationSpec(p=1))
print("L_1 winner interval:", r.diagnostics["interval"], "unique:", r.unique)

# 100 voters at 0 and one at 1, against a 50/51 split between -1 and +1
print("p    consensus+outlier  polarized")
for p in (1.5, 2, 3, 5, 8):
    a = figure1_curve(101, p, "consensus_outlier")
    b = figure1_curve(101, p, "polarized")
    print(f"{p:<4} {a:.6f}           {b:.6f}")
