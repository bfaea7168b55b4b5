import math

import numpy as np
import pytest

from _oracles import kemeny_brute, kendall_pairs
from metricvote.core import AggregationSpec, GuardExceeded, validate_election
from metricvote.oracle import brute_force_lp, enumerate_space
from metricvote.ranking import (
    kemeny_local_search,
    order_cost,
    pairwise_matrix,
    solve_center_permutation,
    solve_kemeny,
    solve_ranking,
    solve_ranking_condorcet,
    solve_ranking_lp,
    voter_orders,
)

LP1 = AggregationSpec(method="lp", p=1)
LPINF = AggregationSpec(method="lp", p=math.inf)
COND = AggregationSpec(method="condorcet")


def E(*orders, alternatives=None):
    alts = alternatives or sorted(orders[0])
    return validate_election({"setting": "ranking", "alternatives": list(alts),
                              "voters": [list(o) for o in orders]})


def random_profile(rng, z, n):
    alts = "abcdefghij"[:z]
    return E(*["".join(rng.permutation(list(alts))) for _ in range(n)], alternatives=alts)


SIX = E("abcde", "eabcd")


def test_kemeny_examples():
    r = solve_kemeny(E("abc", "abc", "cab"), LP1)
    assert r.keys() == ["a>b>c"] and r.objective == 2
    r = solve_kemeny(E("bca"), LP1)
    assert r.keys() == ["b>c>a"] and r.objective == 0
    r = solve_kemeny(SIX, LP1)
    assert "a>b>e>c>d" in r.keys() and r.objective == 4


def test_center_permutation_examples():
    r = solve_center_permutation(E("abc", "abc"), LPINF)
    assert r.keys() == ["a>b>c"] and r.objective == 0
    r = solve_center_permutation(SIX, LPINF)
    assert "a>b>e>c>d" in r.keys() and r.objective == 2
    r = solve_center_permutation(E("ab", "ba"), LPINF)
    assert r.keys() == ["a>b", "b>a"] and r.objective == 1


def test_lp_examples():
    r = solve_ranking_lp(E("abc", "abc", "cab"), AggregationSpec(p=2))
    assert r.keys() == ["a>c>b"] and r.objective == 3
    assert solve_ranking_lp(E("cab"), AggregationSpec(p=2.5)).keys() == ["c>a>b"]


def test_condorcet_examples():
    assert solve_ranking_condorcet(E("abc", "bca", "cab"), COND).winners == ()
    assert solve_ranking_condorcet(E("bac", "bac"), COND).keys() == ["b>a>c"]
    assert solve_ranking_condorcet(E("abcd", "abcd", "dcba"), COND).keys() == ["a>b>c>d"]


def test_pairwise_decomposition():
    rng = np.random.default_rng(1)
    for _ in range(40):
        e = random_profile(rng, int(rng.integers(2, 8)), int(rng.integers(1, 8)))
        C = pairwise_matrix(voter_orders(e), e.m)
        assert np.all(C + C.T + np.eye(e.m, dtype=int) * e.n == e.n)
        x = tuple(rng.permutation(e.m))
        direct = sum(kendall_pairs(x, o) for o in voter_orders(e))
        assert order_cost(C, x) == direct


def test_kemeny_matches_brute_force():
    rng = np.random.default_rng(2)
    for _ in range(40):
        e = random_profile(rng, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        cost, orders = kemeny_brute([v.order for v in e.voters], e.alternatives)
        r = solve_kemeny(e, LP1)
        assert r.objective == cost
        assert sorted(r.keys()) == sorted(">".join(o) for o in orders)


def test_lp_p1_agrees_with_kemeny():
    rng = np.random.default_rng(3)
    for _ in range(30):
        e = random_profile(rng, int(rng.integers(2, 6)), int(rng.integers(1, 7)))
        assert solve_ranking_lp(e, LP1).keys() == solve_kemeny(e, LP1).keys()


def test_majoritarity_fails_beyond_p1():
    e = E("abc", "abc", "cab")
    assert solve_ranking(e, LP1).keys() == ["a>b>c"]
    for p in (2, 3, math.inf):
        assert "a>b>c" not in solve_ranking(e, AggregationSpec(p=p)).keys()


def test_monotonicity_example():
    moved = E("abcde", "abecd")
    red = solve_ranking(moved, AggregationSpec(method="reduced_lp", p=1))
    assert red.keys() == ["a>b>c>e>d"]
    assert solve_ranking(moved, LPINF).keys() == ["a>b>c>e>d"]
    assert solve_ranking(SIX, AggregationSpec(method="reduced_lp", p=1)).keys() == ["a>b>e>c>d"]


def test_relabeling_equivariance():
    rng = np.random.default_rng(4)
    for _ in range(20):
        e = random_profile(rng, 4, int(rng.integers(1, 6)))
        perm = dict(zip("abcd", rng.permutation(list("wxyz"))))
        e2 = E(*["".join(perm[a] for a in v.order) for v in e.voters], alternatives="wxyz")
        for spec in (LP1, LPINF, AggregationSpec(p=2)):
            mapped = sorted(">".join(perm[a] for a in w.order) for w in solve_ranking(e, spec).winners)
            assert mapped == sorted(solve_ranking(e2, spec).keys())


def test_oracle_agreement_general_p():
    rng = np.random.default_rng(5)
    for _ in range(20):
        e = random_profile(rng, int(rng.integers(2, 5)), int(rng.integers(1, 6)))
        space = enumerate_space(e)
        for spec in (AggregationSpec(p=2), LPINF, AggregationSpec(method="reduced_lp", p=1),
                     AggregationSpec(method="reduced_lp", p=math.inf)):
            assert solve_ranking(e, spec).keys() == brute_force_lp(e, space, spec).keys()


def test_large_reduced_uses_kemeny_candidates():
    rng = np.random.default_rng(6)
    e = random_profile(rng, 10, 3)
    r = solve_ranking(e, AggregationSpec(method="reduced_lp", p=1))
    assert r.objective == solve_kemeny(e, LP1).objective


def test_local_search():
    rng = np.random.default_rng(7)
    hits = 0
    for _ in range(30):
        e = random_profile(rng, int(rng.integers(3, 8)), int(rng.integers(1, 8)))
        h = kemeny_local_search(e, AggregationSpec(seed=1))
        exact = solve_kemeny(e, LP1).objective
        assert h.heuristic and h.objective >= exact
        hits += h.objective == exact
    assert hits >= 20
    assert kemeny_local_search(E("cab", "cab"), LP1).keys() == ["c>a>b"]


def test_guards():
    with pytest.raises(GuardExceeded):
        solve_ranking_lp(random_profile(np.random.default_rng(0), 10, 2), AggregationSpec(p=2))
    with pytest.raises(GuardExceeded):
        solve_ranking_condorcet(random_profile(np.random.default_rng(0), 7, 2), COND)
