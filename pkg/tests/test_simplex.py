import math

import numpy as np
import pytest

from _oracles import central_gradient, projected_subgradient
from metricvote.core import AggregationSpec, Simplex, validate_election
from metricvote.simplex import (
    SimplexInstance,
    falsify_condorcet_simplex,
    geometric_median,
    gradient,
    min_enclosing_ball,
    objective,
    solve_simplex_lp,
)

UNIT3 = np.eye(3)


def inst(points):
    return SimplexInstance(np.asarray(points, dtype=float))


def spec(p, **kw):
    return AggregationSpec(method="lp", p=p, **kw)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, math.inf])
def test_all_voters_agree(p):
    x = (0.2, 0.3, 0.5)
    r = solve_simplex_lp(inst([x] * 4), spec(p))
    assert r.representative.weights == pytest.approx(x, abs=1e-12)
    assert r.objective == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_unit_vectors_give_barycenter(p):
    r = solve_simplex_lp(inst(UNIT3), spec(p))
    assert r.representative.weights == pytest.approx((1 / 3,) * 3, abs=1e-7)
    assert r.unique


def test_barycenter_beats_grid():
    best = min(
        objective(UNIT3, np.array([a, b, 1 - a - b]), 1.0)
        for a in np.linspace(0, 1, 201)
        for b in np.linspace(0, 1 - a, max(2, int(round((1 - a) * 200)) + 1))
    )
    assert objective(UNIT3, np.full(3, 1 / 3), 1.0) <= best + 1e-12


def test_two_point_ball():
    r = solve_simplex_lp(inst([[1, 0], [0, 1]]), spec(math.inf))
    assert r.representative.weights == pytest.approx((0.5, 0.5))
    assert r.objective == pytest.approx(math.sqrt(2) / 2)


def test_ball_encloses_and_is_tight():
    rng = np.random.default_rng(2)
    for _ in range(30):
        P = rng.dirichlet(np.ones(4), size=int(rng.integers(2, 12)))
        x, _, _ = min_enclosing_ball(P)
        radius = np.linalg.norm(P - x, axis=1).max()
        # a small move in any direction cannot shrink the radius
        for _ in range(20):
            d = rng.normal(size=4)
            d -= d.mean()
            d *= 1e-4 / np.linalg.norm(d)
            assert np.linalg.norm(P - (x + d), axis=1).max() >= radius - 1e-12


def test_weiszfeld_subgradient_certificate():
    rng = np.random.default_rng(4)
    for _ in range(40):
        P = rng.dirichlet(np.ones(4), size=int(rng.integers(3, 15)))
        x, _, converged = geometric_median(P)
        assert converged
        diff = P - x
        norms = np.linalg.norm(diff, axis=1)
        at = norms < 1e-9
        g = (diff[~at] / norms[~at, None]).sum(axis=0)
        g -= g.mean()  # only directions inside the simplex plane matter
        assert np.linalg.norm(g) <= at.sum() + 1e-5


def test_weiszfeld_not_worse_than_subgradient():
    rng = np.random.default_rng(8)
    for t in range(10):
        P = rng.dirichlet(np.ones(3), size=int(rng.integers(2, 10)))
        x, _, _ = geometric_median(P)
        assert objective(P, x, 1.0) <= projected_subgradient(P, seed=t) + 1e-6


def test_majority_point_wins_for_p1_only():
    w, u = [0.7, 0.2, 0.1], [0.0, 0.0, 1.0]
    r1 = solve_simplex_lp(inst([w, w, u]), spec(1))
    assert r1.representative.weights == pytest.approx(w, abs=1e-12)
    r2 = solve_simplex_lp(inst([w, w, u]), spec(2))
    assert r2.representative.weights != pytest.approx(w, abs=1e-3)


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_gradient_matches_finite_differences(p):
    rng = np.random.default_rng(int(p * 10))
    P = rng.dirichlet(np.ones(4), size=7)
    for _ in range(10):
        x = rng.dirichlet(np.ones(4))
        g = gradient(P, x, p)
        fd = central_gradient(lambda y: objective(P, y, p), x)
        assert np.linalg.norm(g - fd) <= 1e-4 * np.linalg.norm(fd)


def test_general_p_is_stationary():
    rng = np.random.default_rng(9)
    for p in (1.5, 3.0, 5.0):
        P = rng.dirichlet(np.ones(3), size=6)
        r = solve_simplex_lp(inst(P), spec(p))
        x = np.asarray(r.representative.weights)
        g = gradient(P, x, p)
        assert np.linalg.norm(g - g.mean()) <= 1e-5 * max(1.0, np.linalg.norm(gradient(P, P.mean(0), p)))


def test_collinear_delegates_to_line():
    a, b = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    P = [a, a, b, 0.5 * (a + b)]
    r = solve_simplex_lp(inst(P), spec(1))
    assert r.diagnostics.get("collinear")
    assert r.unique is False or "segment" not in r.diagnostics
    P = [a, b]
    r = solve_simplex_lp(inst(P), spec(1))
    assert not r.unique and "segment" in r.diagnostics
    red = solve_simplex_lp(inst(P), AggregationSpec(method="reduced_lp", p=1))
    assert red.representative.weights == pytest.approx((0.5, 0.5, 0), abs=1e-9)


def test_output_on_simplex():
    rng = np.random.default_rng(11)
    for p in (1, 1.7, 2, math.inf):
        P = rng.dirichlet(np.full(5, 0.3), size=9)
        w = np.asarray(solve_simplex_lp(inst(P), spec(p)).representative.weights)
        assert w.min() >= 0 and abs(w.sum() - 1) <= 1e-9


def test_falsifier():
    x = Simplex((0.2, 0.3, 0.5))
    r = falsify_condorcet_simplex(inst([x.weights] * 3), x, AggregationSpec(falsifier_trials=2000))
    assert r.witness is None and r.reason == "not_falsified"
    r = falsify_condorcet_simplex(inst([x.weights]), x, AggregationSpec(falsifier_trials=2000))
    assert r.witness is None
    mean = Simplex((1 / 3,) * 3)
    r = falsify_condorcet_simplex(inst(UNIT3), mean, AggregationSpec(falsifier_trials=2000))
    assert r.witness is not None and r.winners == ()
    y = np.asarray(r.witness.weights)
    closer = (np.linalg.norm(UNIT3 - y, axis=1) < np.linalg.norm(UNIT3 - 1 / 3, axis=1)).sum()
    assert closer >= 2


def test_budget_election_roundtrip():
    e = validate_election({"setting": "budget", "voters": [{"a": 1}, {"b": 1}, {"c": 1}]})
    r = solve_simplex_lp(e, spec(2))
    assert r.representative.weights == pytest.approx((1 / 3,) * 3)
