import math

import numpy as np
import pytest

from metricvote.core import AggregationSpec, validate_election
from metricvote.oracle import brute_force_condorcet, brute_force_lp, enumerate_space
from metricvote.plurality import plurality_winners, solve_plurality


def E(*votes, alternatives=None):
    raw = {"setting": "plurality", "voters": list(votes)}
    if alternatives:
        raw["alternatives"] = alternatives
    return validate_election(raw)


def test_counts_and_ties():
    assert plurality_winners(E("a", "a", "b")) == ["a"]
    assert plurality_winners(E("a", "b")) == ["a", "b"]


def test_lp_objective_is_losers():
    r = solve_plurality(E("a", "a", "b"), AggregationSpec(method="lp", p=3))
    assert r.keys() == ["a"] and r.objective == 1


def test_linf_ties_everything_unless_unanimous():
    r = solve_plurality(E("a", "a", "b", alternatives=["a", "b", "c"]), AggregationSpec(p=math.inf))
    assert r.keys() == ["a", "b", "c"] and r.objective == 1
    r = solve_plurality(E("a", "a", alternatives=["a", "b"]), AggregationSpec(p=math.inf))
    assert r.keys() == ["a"] and r.objective == 0
    r = solve_plurality(E("a", "a", "b", alternatives=["a", "b", "c"]),
                        AggregationSpec(method="reduced_lp", p=math.inf))
    assert r.keys() == ["a"]


def test_condorcet_strict_and_weak():
    assert solve_plurality(E("a", "b"), AggregationSpec(method="condorcet")).winners == ()
    assert solve_plurality(E("a", "b"), AggregationSpec(method="condorcet", strict=False)).keys() == ["a", "b"]


@pytest.mark.parametrize("seed", range(5))
def test_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    for _ in range(40):
        alts = list("abcdef"[: int(rng.integers(1, 7))])
        votes = [alts[i] for i in rng.integers(0, len(alts), size=int(rng.integers(1, 12)))]
        e = E(*votes, alternatives=alts)
        space = enumerate_space(e)
        for spec in (AggregationSpec(method="lp", p=1), AggregationSpec(method="lp", p=2.5),
                     AggregationSpec(method="lp", p=math.inf),
                     AggregationSpec(method="reduced_lp", p=math.inf),
                     AggregationSpec(method="condorcet"), AggregationSpec(method="condorcet", strict=False)):
            fast = solve_plurality(e, spec)
            ref = (brute_force_condorcet if spec.method == "condorcet" else brute_force_lp)(e, space, spec)
            assert fast.keys() == ref.keys()
            if spec.method != "condorcet":
                assert fast.objective == pytest.approx(ref.objective)
