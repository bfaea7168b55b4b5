from fractions import Fraction

import numpy as np
import pytest

from _oracles import kendall_pairs
from metricvote.core import AggregationSpec, Document, GuardExceeded, validate_election
from metricvote.oracle import (
    bfs_edit_distance,
    brute_force_condorcet,
    brute_force_lp,
    distance_matrix,
    enumerate_space,
)

LP1 = AggregationSpec(method="lp", p=1)
COND = AggregationSpec(method="condorcet")
WEAK = AggregationSpec(method="condorcet", strict=False)


def E(**raw):
    return validate_election(raw)


def test_space_sizes():
    assert len(enumerate_space(E(setting="plurality", alternatives=["a", "b", "c"], voters=["a"]))) == 3
    assert len(enumerate_space(E(setting="ranking", alternatives=list("abc"), voters=[list("abc")]))) == 6
    assert len(enumerate_space(E(setting="committee", alternatives=list("abc"), voters=[[]]))) == 8
    assert len(enumerate_space(E(setting="committee_fixed_k", alternatives=list("abcd"), k=2, voters=[["a", "b"]]))) == 6
    # all arrangements of at most 2 of 3 sentences: 1 + 3 + 6
    assert len(enumerate_space(E(setting="legislation", voters=[["s1", "s2"], ["s3"]]))) == 10


def test_space_guard():
    e = E(setting="ranking", alternatives=list("abcdefghijk"), voters=[list("abcdefghijk")])
    with pytest.raises(GuardExceeded) as info:
        enumerate_space(e)
    assert info.value.required == 39916800


def test_lp_examples():
    e = E(setting="plurality", voters=["a", "a", "b"])
    r = brute_force_lp(e, enumerate_space(e), LP1)
    assert r.keys() == ["a"] and r.objective == 1
    e = E(setting="committee", alternatives=["a", "b"], voters=[["a"], ["b"]])
    r = brute_force_lp(e, enumerate_space(e), LP1)
    assert r.keys() == ["", "a", "a,b", "b"] and r.objective == 2
    e = E(setting="ranking", alternatives=list("abc"), voters=[list("abc"), list("abc"), list("cab")])
    r = brute_force_lp(e, enumerate_space(e), LP1)
    assert r.keys() == ["a>b>c"] and r.objective == 2


def test_condorcet_examples():
    e = E(setting="plurality", voters=["a", "a", "b"])
    assert brute_force_condorcet(e, enumerate_space(e), COND).keys() == ["a"]
    e = E(setting="committee", alternatives=list("abc"), voters=[[], [], ["a", "b"], ["a", "c"], ["b", "c"]])
    r = brute_force_condorcet(e, enumerate_space(e), COND)
    assert r.winners == () and r.reason
    e = E(setting="ranking", alternatives=list("abc"), voters=[list("abc"), list("bca"), list("cab")])
    assert brute_force_condorcet(e, enumerate_space(e), COND).winners == ()


def test_ranking_distance_matrix_matches_pairs():
    rng = np.random.default_rng(3)
    alts = list("abcde")
    voters = [list(rng.permutation(alts)) for _ in range(4)]
    e = E(setting="ranking", alternatives=alts, voters=voters)
    space = enumerate_space(e)
    D = distance_matrix(e, space)
    for r in rng.integers(0, len(space), size=30):
        for j, v in enumerate(voters):
            assert D[r, j] == kendall_pairs(space.points[r].order, v)


def test_strict_condorcet_within_weak_and_unique():
    rng = np.random.default_rng(0)
    for _ in range(60):
        m = int(rng.integers(1, 4))
        alts = list("abc"[:m])
        voters = [[a for a in alts if rng.random() < 0.5] for _ in range(int(rng.integers(1, 7)))]
        e = E(setting="committee", alternatives=alts, voters=voters)
        sp = enumerate_space(e)
        strict = brute_force_condorcet(e, sp, COND).keys()
        weak = brute_force_condorcet(e, sp, WEAK).keys()
        assert set(strict) <= set(weak)
        assert len(strict) <= 1


def test_bfs_edit_distance_examples():
    D = lambda *s: Document(s)
    assert bfs_edit_distance(D("s1", "s2"), D("s2", "s1"), 2) == Fraction(1, 4)
    assert bfs_edit_distance(D("s1", "s2"), D("s1", "s2"), 5) == 0
    assert bfs_edit_distance(D("s1", "s2", "s3"), D("s3", "s1"), 3) == Fraction(10, 9)
    with pytest.raises(GuardExceeded):
        bfs_edit_distance(D(*"abcdef"), D("a"), 6)
