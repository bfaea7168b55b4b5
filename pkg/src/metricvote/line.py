"""Single-winner elections on the real line under ``d(x, y) = |x - y|``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _finite
from .core import (
    WINNER_CAP,
    AggregationResult,
    AggregationSpec,
    Election,
    GuardExceeded,
    Real,
    ValidationError,
    finalize,
)

TERNARY_ITERATIONS = 200
CONDORCET_PAIR_GUARD = 10**8


@dataclass(frozen=True)
class LineView:
    """Sorted ideal values plus the alternative domain."""

    values: np.ndarray
    domain: tuple | None = None

    @classmethod
    def from_election(cls, election: Election) -> "LineView":
        if election.setting != "line":
            raise ValidationError(f"expected a line election, got {election.setting!r}")
        values = np.sort(np.array([v.value for v in election.voters], dtype=float))
        return cls(values, election.domain)

    @classmethod
    def of(cls, values, domain=None) -> "LineView":
        vals = np.sort(np.asarray(values, dtype=float))
        if vals.size == 0:
            raise ValidationError("empty voter list")
        return cls(vals, domain)

    @property
    def finite(self) -> bool:
        return self.domain is not None and self.domain[0] == "points"

    @property
    def bounds(self) -> tuple[float, float]:
        if self.domain is None:
            return -math.inf, math.inf
        if self.domain[0] == "interval":
            return self.domain[1], self.domain[2]
        pts = self.domain[1]
        return pts[0], pts[-1]


def objective(values, x: float, p: float) -> float:
    dev = np.abs(np.asarray(values, dtype=float) - x)
    if math.isinf(p):
        return float(dev.max())
    return math.fsum(dev**p)


def ternary_search(f, lo: float, hi: float, tol: float, max_iter: int = TERNARY_ITERATIONS) -> float:
    """Minimizer of a convex function on ``[lo, hi]``."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def median_interval(values: np.ndarray) -> tuple[float, float]:
    n = len(values)
    if n % 2:
        return float(values[n // 2]), float(values[n // 2])
    return float(values[n // 2 - 1]), float(values[n // 2])


def reduced_median(values: np.ndarray) -> float:
    """Limit of the L_q minimizers as q decreases to 1.

    Inside the median interval ``(a, b)`` the first-order condition of
    ``sum |v - x|**q`` tends to ``sum_{v<=a} ln(x - v) = sum_{v>=b} ln(v - x)``,
    whose left side minus right side increases strictly from -inf to +inf.
    """
    a, b = median_interval(values)
    if a == b:
        return a
    left = values[values <= a]
    right = values[values >= b]

    def balance(x):
        with np.errstate(divide="ignore"):
            return np.sum(np.log(x - left)) - np.sum(np.log(right - x))

    span = b - a
    lo, hi = a + span * 1e-15, b - span * 1e-15
    if balance(lo) >= 0:
        return lo
    if balance(hi) <= 0:
        return hi
    return float(brentq(balance, lo, hi, xtol=1e-15 * max(1.0, abs(a), abs(b)), rtol=1e-15, maxiter=500))


def _convex_argmin(view: LineView, p: float, tol: float) -> tuple[float, float]:
    """Argmin interval of the objective over the whole line."""
    v = view.values
    if p == 1:
        return median_interval(v)
    if p == 2:
        x = float(np.mean(v))
        return x, x
    if math.isinf(p):
        x = 0.5 * (float(v[0]) + float(v[-1]))
        return x, x
    lo, hi = float(v[0]), float(v[-1])
    x = ternary_search(lambda t: objective(v, t, p), lo, hi, tol * max(1.0, hi - lo))
    return x, x


def _clip(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def _bracketing(points: tuple[float, ...], a: float, b: float) -> list[float]:
    """Domain points inside ``[a, b]`` plus the nearest ones on either side."""
    arr = np.asarray(points)
    inside = arr[(arr >= a) & (arr <= b)]
    below = arr[arr < a]
    above = arr[arr > b]
    cands = list(inside[:WINNER_CAP + 1])
    if below.size:
        cands.append(float(below[-1]))
    if above.size:
        cands.append(float(above[0]))
    return sorted(set(float(c) for c in cands))


def _finite_lp(view: LineView, p: float, spec: AggregationSpec):
    a, b = _convex_argmin(view, p, spec.tolerance)
    cands = np.array(_bracketing(view.domain[1], a, b))
    D = np.abs(cands[:, None] - view.values[None, :])
    obj = _finite.objectives(D, p)
    mask = obj <= obj.min() + spec.tolerance * max(1.0, abs(obj.min()))
    return cands, D, obj, mask


def solve_line_lp(election: Election | LineView, spec: AggregationSpec) -> AggregationResult:
    """L_p winner(s): median, mean, midrange or a ternary-search minimizer.

    For ``p = 1`` with an even number of voters the whole median interval
    wins; the reported point is the reduced (q -> 1) representative and the
    interval goes to ``diagnostics["interval"]``.
    """
    view = election if isinstance(election, LineView) else LineView.from_election(election)
    p = spec.p
    if view.finite:
        cands, _, obj, mask = _finite_lp(view, p, spec)
        winners = [Real(float(c)) for c in cands[mask]]
        return finalize(
            winners[:WINNER_CAP], spec, float(obj[mask].min()),
            truncated=len(winners) > WINNER_CAP,
            diagnostics={"domain": "finite", "bracketing": [float(c) for c in cands]},
        )
    lo, hi = view.bounds
    a, b = _convex_argmin(view, p, spec.tolerance)
    a, b = _clip(a, lo, hi), _clip(b, lo, hi)
    diagnostics: dict = {"domain": "convex"}
    if a < b:
        rep = _clip(reduced_median(view.values), a, b)
        diagnostics["interval"] = (a, b)
        unique = False
    else:
        rep = a
        unique = True
    return finalize([Real(rep)], spec, objective(view.values, rep, p), unique=unique,
                    diagnostics=diagnostics)


def reduce_line_lp(election: Election | LineView, spec: AggregationSpec) -> AggregationResult:
    """Reduced L_p: the limit of the L_q winners as q -> p.

    On convex domains only ``p = 1`` with an even median interval differs
    from :func:`solve_line_lp`.  Finite domains fall back to comparing the
    bracketing points with the finite-space limit rule (flagged).
    """
    view = election if isinstance(election, LineView) else LineView.from_election(election)
    p = spec.p
    if view.finite:
        cands, D, obj, mask = _finite_lp(view, p, spec)
        idx = np.flatnonzero(mask)
        keep = idx[_finite.reduced_select(D[idx], p)]
        return finalize(
            [Real(float(c)) for c in cands[keep]], spec, float(obj[mask].min()),
            diagnostics={"domain": "finite", "nonconvex_domain": True},
        )
    lo, hi = view.bounds
    if p == 1:
        x = _clip(reduced_median(view.values), lo, hi)
    else:
        a, _ = _convex_argmin(view, p, spec.tolerance)
        x = _clip(a, lo, hi)
    return finalize([Real(x)], spec, objective(view.values, x, p), diagnostics={"domain": "convex"})


def solve_line_condorcet(election: Election | LineView, spec: AggregationSpec) -> AggregationResult:
    """Condorcet winners under single-peaked preferences (the median).

    With an even number of voters and ``v_{n/2} < v_{n/2+1}`` every point of
    the median interval is a weak winner and none is strict; the interval's
    endpoints are reported.
    """
    view = election if isinstance(election, LineView) else LineView.from_election(election)
    v = view.values
    if view.finite:
        X = np.asarray(view.domain[1])
        work = X.size**2 * v.size
        if work > CONDORCET_PAIR_GUARD:
            raise GuardExceeded("finite-domain Condorcet comparisons", work, CONDORCET_PAIR_GUARD)
        D = np.abs(X[:, None] - v[None, :])
        mask = _finite.condorcet_mask(D, spec.strict)
        return finalize([Real(float(x)) for x in X[mask]], spec, None,
                        diagnostics={"domain": "finite"})

    lo, hi = view.bounds
    a, b = median_interval(v)
    if b < lo:
        a = b = lo
    elif a > hi:
        a = b = hi
    else:
        a, b = max(a, lo), min(b, hi)
    diagnostics = {"domain": "convex", "interval": (a, b)}
    if a == b:
        c = a
        # the closest challengers on each side decide strictness
        beats_right = c >= hi or np.sum(v <= c) > np.sum(v > c)
        beats_left = c <= lo or np.sum(v >= c) > np.sum(v < c)
        if not spec.strict or (beats_right and beats_left):
            return finalize([Real(c)], spec, None, diagnostics=diagnostics)
        return finalize([], spec, None, reason="no_strict_condorcet_winner", diagnostics=diagnostics)
    if spec.strict:
        return finalize([], spec, None, reason="no_strict_condorcet_winner", diagnostics=diagnostics)
    return finalize([Real(a), Real(b)], spec, None, unique=False, diagnostics=diagnostics)


def figure1_voters(n: int, distribution: str) -> list[float]:
    """n - 1 voters at 0 and one at 1, or (n - 1) / 2 at -1 and the rest at +1."""
    if n % 2 == 0 or n < 1:
        raise ValidationError("n must be a positive odd number")
    if distribution == "consensus_outlier":
        return [0.0] * (n - 1) + [1.0]
    if distribution == "polarized":
        h = (n - 1) // 2
        return [-1.0] * h + [1.0] * (n - h)
    raise ValidationError(f"unknown distribution {distribution!r}")


def figure1_curve(n: int, p: float, distribution: str) -> float:
    """L_p winner over ``[-1, 1]`` for one of the two outlier distributions."""
    if not p > 1:
        raise ValidationError("p must exceed 1")
    view = LineView.of(figure1_voters(n, distribution), ("interval", -1.0, 1.0))
    res = solve_line_lp(view, AggregationSpec(method="lp", p=p))
    return res.representative.value
