"""
Continuous budgets on the simplex
=================================

Each voter splits a unit budget.  L_1 is the geometric median, L_2 the
mean and L_inf the centre of the smallest enclosing ball.  A Condorcet
winner can only be refuted, by a witness point preferred by more voters.
"""

import math

from metricvote import AggregationSpec, aggregate, validate_election

e = validate_election({"setting": "budget", "voters": [
    {"parks": 0.7, "roads": 0.3},
    {"parks": 0.7, "roads": 0.3},
    {"schools": 1.0},
]})
for p in (1, 2, math.inf):
    r = aggregate(e, AggregationSpec(p=p))
    w = dict(zip(e.alternatives, r.representative.weights))
    print(f"L_{p}: " + ", ".join(f"{k}={v:.3f}" for k, v in w.items()))

three = validate_election({"setting": "budget", "voters": [{"a": 1}, {"b": 1}, {"c": 1}]})
r = aggregate(three, AggregationSpec(method="condorcet", falsifier_trials=2000))
print(r.diagnostics["candidate"], "refuted by", [round(x, 3) for x in r.witness.weights])
