import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metricvote.axioms import (
    check_majoritarian,
    check_monotone,
    majority_point,
    plant_majority,
    random_election,
    run_table1_suite,
)
from metricvote.core import AggregationSpec, Permutation, Real, Subset, ValidationError, validate_election
from metricvote.solve import aggregate, is_winner, point_objective

SETTINGS = ["plurality", "line", "budget", "ranking", "committee", "committee_fixed_k", "legislation"]


def committee(*ballots, alts="ab"):
    return validate_election({"setting": "committee", "alternatives": list(alts),
                              "voters": [list(b) for b in ballots]})


def ranking(*orders):
    return validate_election({"setting": "ranking", "alternatives": sorted(orders[0]),
                              "voters": [list(o) for o in orders]})


def test_majoritarian_examples():
    r = check_majoritarian(committee("a", "a", "b"), AggregationSpec(p=2))
    assert r.passed is False and r.counterexample is not None
    line = validate_election({"setting": "line", "voters": [0, 0, 1]})
    assert check_majoritarian(line, AggregationSpec(p=1)).passed is True
    none = validate_election({"setting": "line", "voters": [0, 1, 2]})
    assert check_majoritarian(none, AggregationSpec(p=1)).passed is None


def test_monotone_examples():
    six = ranking("abcde", "eabcd")
    w = Permutation(tuple("abecd"))
    r = check_monotone(six, AggregationSpec(method="reduced_lp", p=1), 1, w)
    assert r.passed is False
    assert [x.order for x in r.winners] == [tuple("abced")]
    assert check_monotone(six, AggregationSpec(p=1), 1, w).passed is True
    assert check_monotone(six, AggregationSpec(p=math.inf), 1, w).passed is False
    moved = committee("", "abcd", alts="abcd")
    assert check_monotone(moved, AggregationSpec(p=2), 1, Subset(frozenset("ab"))).passed is False


def test_monotone_not_applicable_for_non_winner():
    r = check_monotone(committee("a", "a", "b"), AggregationSpec(p=1), 0, Subset(frozenset("b")))
    assert r.passed is None


@pytest.mark.parametrize("setting", SETTINGS)
def test_unanimous_profiles_pass(setting):
    rng = np.random.default_rng(0)
    e = random_election(setting, rng)
    v = e.voters[0]
    for i in range(e.n):
        e = e.with_voter(i, v)
    for spec in (AggregationSpec(p=1), AggregationSpec(p=2), AggregationSpec(method="condorcet", falsifier_trials=200)):
        assert check_majoritarian(e, spec).passed is True


@pytest.mark.parametrize("setting", SETTINGS)
def test_l1_majoritarian_on_planted_majorities(setting):
    rng = np.random.default_rng(1)
    for _ in range(15):
        e = plant_majority(random_election(setting, rng), rng)
        assert majority_point(e) is not None
        assert check_majoritarian(e, AggregationSpec(p=1)).passed is True


@pytest.mark.parametrize("setting", ["plurality", "committee", "line"])
def test_l1_monotone_random(setting):
    rng = np.random.default_rng(2)
    for _ in range(20):
        e = random_election(setting, rng)
        assert check_monotone(e, AggregationSpec(p=1), int(rng.integers(e.n))).passed is not False


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=9), st.sampled_from([1.0, 2.0, 3.0, math.inf]))
def test_plurality_monotone_property(votes, p):
    e = validate_election({"setting": "plurality", "alternatives": ["a", "b", "c"],
                           "voters": ["abc"[v] for v in votes]})
    for i in range(e.n):
        assert check_monotone(e, AggregationSpec(p=p), i).passed is not False


def test_is_winner_semantics():
    e = committee("a", "a", "b")
    assert is_winner(e, AggregationSpec(p=2), Subset(frozenset("ab")))
    assert not is_winner(e, AggregationSpec(p=2), Subset(frozenset("a")))
    line = validate_election({"setting": "line", "voters": [0, 1]})
    assert is_winner(line, AggregationSpec(p=1), Real(0.3))
    assert not is_winner(line, AggregationSpec(p=1), Real(1.5))
    assert is_winner(line, AggregationSpec(method="condorcet", strict=False), Real(0.5))


def test_point_objective_matches_aggregate():
    e = ranking("abc", "abc", "cab")
    r = aggregate(e, AggregationSpec(p=2))
    assert point_objective(e, r.representative, 2) == pytest.approx(r.objective)
    assert point_objective(e, Permutation(tuple("abc")), 2) == pytest.approx(4)


def test_aggregate_rejects_bad_spec():
    e = committee("a")
    with pytest.raises(ValidationError):
        aggregate(e, AggregationSpec(p=0.5))


def test_budget_condorcet_reports_candidate():
    e = validate_election({"setting": "budget", "voters": [{"a": 1}, {"b": 1}, {"c": 1}]})
    r = aggregate(e, AggregationSpec(method="condorcet", falsifier_trials=500))
    assert r.winners == () and r.witness is not None
    assert "candidate" in r.diagnostics


def test_table1_small_suite_is_deterministic():
    a = run_table1_suite(seed=3, trials=20)
    b = run_table1_suite(seed=3, trials=20)
    assert a.as_dict() == b.as_dict()
    assert a.all_reproduced
    assert "claimed" in a.format()
