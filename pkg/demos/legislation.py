"""
Drafting a document from proposed sentences
===========================================

Voters propose ordered lists of sentences.  The rule first elects a set of
sentences as a committee, then orders it using the pairs each voter ranked.
"""

from metricvote import AggregationSpec, aggregate, validate_election
from metricvote.legislation import plan_legislation

e = validate_election({"setting": "legislation", "voters": [
    ["s1", "s2"],
    ["s1", "s2"],
    ["s2", "s1"],
    ["s3"],
]})
spec = AggregationSpec(p=1)

# phase 1: which sentences go in, decided as a committee election
phase1 = aggregate(plan_legislation(e).phase1, spec)
print("sentences elected:", phase1.keys())

# phase 2: order them using only pairs a voter actually ranked
plan = plan_legislation(e, elected=phase1.representative.members)
print("each voter's view of the elected sentences:", plan.projected)

r = aggregate(e, spec)
for doc in r.winners:
    print("document:", " / ".join(doc.sentences))
print("objective", r.objective, "with ell =", r.diagnostics["ell"])
