"""One entry point for every setting, plus winner-membership tests."""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from . import committee, legislation, line, plurality, ranking, simplex
from .core import (
    AggregationResult,
    AggregationSpec,
    Election,
    Point,
    ValidationError,
    canonical_encode,
)
from .metrics import lp_objective, metric_for

MEMBERSHIP_TOL = 1e-7


def _budget_condorcet(election: Election, spec: AggregationSpec) -> AggregationResult:
    # the L_1 point is the only candidate that can be a Condorcet winner in
    # general position, so it is the one handed to the falsifier
    base = simplex.solve_simplex_lp(election, replace(spec, method="reduced_lp", p=1.0))
    res = simplex.falsify_condorcet_simplex(election, base.representative, spec)
    res.diagnostics["candidate"] = "geometric_median"
    return res


def aggregate(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Condorcet, L_p or reduced L_p aggregation for any setting."""
    s, method = election.setting, spec.method
    if s == "plurality":
        return plurality.solve_plurality(election, spec)
    if s == "line":
        if method == "condorcet":
            return line.solve_line_condorcet(election, spec)
        if method == "reduced_lp":
            return line.reduce_line_lp(election, spec)
        return line.solve_line_lp(election, spec)
    if s == "budget":
        if method == "condorcet":
            return _budget_condorcet(election, spec)
        return simplex.solve_simplex_lp(election, spec)
    if s == "ranking":
        return ranking.solve_ranking(election, spec)
    if s in ("committee", "committee_fixed_k"):
        return committee.solve_committee(election, spec)
    if s == "legislation":
        return legislation.solve_legislation(election, spec)
    raise ValidationError(f"unknown setting {s!r}")


def point_objective(election: Election, point: Point, p: float) -> float:
    """``sum_i d(point, v_i)**p`` (or the maximum for ``p = inf``)."""
    d = metric_for(election)
    return lp_objective([d(point, v) for v in election.voters], p)


def _close(a: float, b: float, tol: float) -> bool:
    return a <= b + tol * max(1.0, abs(b))


def is_winner(election: Election, spec: AggregationSpec, w: Point,
              result: AggregationResult | None = None) -> bool:
    """Whether ``w`` belongs to the winner set of ``spec`` on ``election``.

    For L_p this compares objectives, so every co-winner counts even when
    the solver reports only a representative.  Continuous settings use
    ``MEMBERSHIP_TOL``.  Legislation checks membership in the two-phase
    output, which need not be a global optimum.
    """
    if result is None:
        result = aggregate(election, spec)
    s = election.setting
    continuous = s in ("line", "budget")
    tol = MEMBERSHIP_TOL if continuous else 1e-9

    if spec.method == "lp" and result.objective is not None and s != "legislation":
        if s == "line" and election.domain is not None:
            if election.domain[0] == "points" and w.value not in election.domain[1]:
                return False
            if election.domain[0] == "interval" and not election.domain[1] <= w.value <= election.domain[2]:
                return False
        return _close(point_objective(election, w, spec.p), result.objective, tol)

    if s == "budget" and spec.method == "condorcet":
        return simplex.falsify_condorcet_simplex(election, w, spec).witness is None

    if s == "line" and election.domain is None or (s == "line" and election.domain[0] == "interval"):
        x = w.value
        if spec.method == "condorcet":
            if "interval" not in result.diagnostics:
                return False
            a, b = result.diagnostics["interval"]
            if not result.winners:
                return False
            return a - tol <= x <= b + tol
        return abs(x - result.representative.value) <= tol * max(1.0, abs(x))

    if s == "budget":
        if result.unique:
            r = np.asarray(result.representative.weights)
            return float(np.linalg.norm(np.asarray(w.weights) - r)) <= math.sqrt(tol)
        seg = result.diagnostics.get("segment")
        if seg is None:
            return False
        a, b = np.asarray(seg[0]), np.asarray(seg[1])
        x = np.asarray(w.weights)
        t = float(np.clip(np.dot(x - a, b - a) / max(np.dot(b - a, b - a), 1e-300), 0, 1))
        return float(np.linalg.norm(a + t * (b - a) - x)) <= math.sqrt(tol)

    key = canonical_encode(w)
    if key in set(result.keys()):
        return True
    if result.truncated:
        raise ValidationError("winner set truncated; membership undecidable")
    return False
