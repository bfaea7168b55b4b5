"""Continuous budgeting: L_p aggregation on the probability simplex.

Distances are Euclidean.  Every minimizer lies in the convex hull of the
ideal points (projecting onto the hull never increases a distance), and the
hull lies in the simplex, so the solvers run unconstrained and only check
feasibility at the end.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from . import line
from .core import (
    AggregationResult,
    AggregationSpec,
    Election,
    Simplex,
    ValidationError,
    finalize,
)

COLLINEAR_TOL = 1e-9
VERTEX_TOL = 1e-12
WEISZFELD_STEP_TOL = 1e-10
WEISZFELD_OBJ_TOL = 1e-12
WEISZFELD_CAP = 100_000
FALSIFIER_RADII = (1e-3, 1e-2, 1e-1)


@dataclass(frozen=True)
class SimplexInstance:
    points: np.ndarray  # (n, m)

    @classmethod
    def from_election(cls, election: Election) -> "SimplexInstance":
        if election.setting != "budget":
            raise ValidationError(f"expected a budget election, got {election.setting!r}")
        return cls(np.array([v.weights for v in election.voters], dtype=float))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def affine_rank(self) -> int:
        centered = self.points - self.points.mean(axis=0)
        s = np.linalg.svd(centered, compute_uv=False)
        if s.size == 0 or s[0] <= COLLINEAR_TOL:
            return 0
        return int(np.sum(s > COLLINEAR_TOL * max(1.0, s[0])))

    @property
    def collinear(self) -> bool:
        return self.affine_rank() <= 1


def objective(points: np.ndarray, x: np.ndarray, p: float) -> float:
    dist = np.linalg.norm(points - x, axis=1)
    if math.isinf(p):
        return float(dist.max())
    return float(np.sum(dist**p))


def gradient(points: np.ndarray, x: np.ndarray, p: float) -> np.ndarray:
    """Gradient of ``sum ||x - v_i||**p`` (terms with x = v_i contribute 0 for p > 1)."""
    diff = x - points
    dist = np.linalg.norm(diff, axis=1)
    w = np.zeros_like(dist)
    nz = dist > 0
    w[nz] = p * dist[nz] ** (p - 2)
    return (w[:, None] * diff).sum(axis=0)


# -- p = 1 ----------------------------------------------------------------


def _optimal_vertex(points: np.ndarray) -> np.ndarray | None:
    """A data point satisfying the geometric-median subgradient condition."""
    uniq, counts = np.unique(points, axis=0, return_counts=True)
    for u, c in zip(uniq, counts):
        diff = points - u
        dist = np.linalg.norm(diff, axis=1)
        far = dist > VERTEX_TOL
        residual = (diff[far] / dist[far, None]).sum(axis=0)
        if np.linalg.norm(residual) <= c + 1e-12:
            return u.copy()
    return None


def geometric_median(points: np.ndarray, max_iterations: int = WEISZFELD_CAP):
    """Weiszfeld iteration with the Vardi-Zhang correction at data points.

    Returns ``(x, iterations, converged)``.
    """
    vertex = _optimal_vertex(points)
    if vertex is not None:
        return vertex, 0, True
    x = points.mean(axis=0)
    f = objective(points, x, 1)
    for it in range(1, max_iterations + 1):
        diff = points - x
        dist = np.linalg.norm(diff, axis=1)
        at = dist <= VERTEX_TOL
        far = ~at
        w = 1.0 / dist[far]
        T = (points[far] * w[:, None]).sum(axis=0) / w.sum()
        eta = int(at.sum())
        if eta:
            # step off the data point along the residual direction
            r = np.linalg.norm((diff[far] * w[:, None]).sum(axis=0))
            lam = min(1.0, eta / r) if r > 0 else 1.0
            x_new = (1 - lam) * T + lam * x
        else:
            x_new = T
        f_new = objective(points, x_new, 1)
        step = np.linalg.norm(x_new - x)
        improvement = f - f_new
        x, f = x_new, f_new
        if step < WEISZFELD_STEP_TOL or 0 <= improvement < WEISZFELD_OBJ_TOL:
            return x, it, True
    return x, max_iterations, False


# -- p = inf --------------------------------------------------------------


def _circumcenter(S: np.ndarray):
    """Center of the smallest sphere through the affinely independent rows of S.

    Returns ``(center, barycentric coords)`` or ``None`` if degenerate.
    """
    base = S[0]
    E = S[1:] - base
    if E.shape[0] == 0:
        return base.copy(), np.array([1.0])
    G = E @ E.T
    rhs = 0.5 * np.sum(E**2, axis=1)
    try:
        alpha = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(alpha)) or np.linalg.cond(G) > 1e12:
        return None
    center = base + alpha @ E
    return center, np.concatenate([[1.0 - alpha.sum()], alpha])


def _exact_ball(points: np.ndarray, approx: np.ndarray, dim: int, pool: int = 10):
    """Try to certify the minimum enclosing ball from the points farthest from ``approx``.

    A ball whose center is a convex combination of the boundary points it
    passes through, and which contains every point, is optimal.
    """
    dist = np.linalg.norm(points - approx, axis=1)
    order = np.argsort(-dist)
    uniq = []
    for i in order:
        if not any(np.array_equal(points[i], points[j]) for j in uniq):
            uniq.append(i)
        if len(uniq) >= pool:
            break
    best = None
    for size in range(1, min(dim + 1, len(uniq)) + 1):
        for combo in itertools.combinations(uniq, size):
            got = _circumcenter(points[list(combo)])
            if got is None:
                continue
            c, bary = got
            if np.any(bary < -1e-12):
                continue
            r = np.linalg.norm(points[combo[0]] - c)
            if np.all(np.linalg.norm(points - c, axis=1) <= r * (1 + 1e-12) + 1e-15):
                if best is None or r < best[1]:
                    best = (c, r)
        if best is not None:
            return best[0]
    return None


def min_enclosing_ball(points: np.ndarray, max_iterations: int = 100_000):
    """Center of the smallest ball around the points.

    Runs the core-set iteration ``x += (farthest - x) / (k + 1)`` and, at
    checkpoints, tries to certify the exact ball spanned by at most
    ``dim + 1`` support points.  Returns ``(x, iterations, exact)``.
    """
    inst = SimplexInstance(points)
    dim = inst.affine_rank()
    x = points[0].astype(float).copy()
    if dim == 0:
        return x, 0, True
    checkpoints = {10, 100, 1000, 10_000, max_iterations}
    for k in range(1, max_iterations + 1):
        far = np.argmax(np.linalg.norm(points - x, axis=1))
        x = x + (points[far] - x) / (k + 1)
        if k in checkpoints:
            exact = _exact_ball(points, x, dim)
            if exact is not None:
                return exact, k, True
    return x, max_iterations, False


# -- general p ------------------------------------------------------------


def lp_descent(points: np.ndarray, p: float, max_iterations: int, tol: float = 1e-7):
    """Gradient descent with Barzilai-Borwein trial steps and Armijo backtracking."""
    x = points.mean(axis=0)
    f = objective(points, x, p)
    g = gradient(points, x, p)
    t = 1.0 / max(1.0, p * points.shape[0])
    prev = None
    for it in range(1, max_iterations + 1):
        gn2 = float(g @ g)
        if gn2 == 0.0:
            return x, it, True
        if prev is not None:
            s, y = x - prev[0], g - prev[1]
            sy = float(s @ y)
            if sy > 0:
                t = float(s @ s) / sy
        while True:
            x_new = x - t * g
            f_new = objective(points, x_new, p)
            if f_new <= f - 1e-4 * t * gn2 or t < 1e-20:
                break
            t *= 0.5
        prev = (x, g)
        step = np.linalg.norm(x_new - x)
        dec = f - f_new
        x, f = x_new, f_new
        g = gradient(points, x, p)
        if step < 1e-13 * max(1.0, np.linalg.norm(x)) or dec <= 1e-15 * max(1.0, f):
            return x, it, True
    return x, max_iterations, False


# -- driver ---------------------------------------------------------------


def _as_simplex(x: np.ndarray) -> tuple[Simplex, dict]:
    diag = {}
    if x.min() < -1e-9 or abs(x.sum() - 1) > 1e-9:
        diag["infeasible"] = True
    x = np.where(np.abs(x) < 1e-15, 0.0, x)
    x = np.clip(x, 0.0, None)
    x = x / x.sum()
    return Simplex(tuple(float(w) for w in x)), diag


def _solve_collinear(inst: SimplexInstance, spec: AggregationSpec, reduced: bool):
    P = inst.points
    c = P.mean(axis=0)
    centered = P - c
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    u = vt[0]
    t = centered @ u
    view = line.LineView.of(t)
    sub = line.reduce_line_lp(view, spec) if reduced else line.solve_line_lp(view, spec)
    x = c + sub.representative.value * u
    interval = sub.diagnostics.get("interval")
    diag = {"collinear": True}
    if interval is not None:
        diag["segment"] = tuple(tuple(float(z) for z in c + e * u) for e in interval)
    return x, sub.unique, diag


def solve_simplex_lp(election: Election | SimplexInstance, spec: AggregationSpec) -> AggregationResult:
    """L_p (or reduced L_p) winner on the simplex.

    p = 2 is the coordinate mean, p = 1 the geometric median (Weiszfeld),
    p = inf the minimum-enclosing-ball center, anything else gradient
    descent.  Collinear inputs are solved on their supporting line.
    """
    inst = election if isinstance(election, SimplexInstance) else SimplexInstance.from_election(election)
    if inst.n == 0:
        raise ValidationError("empty instance")
    P, p = inst.points, spec.p
    iterations, converged, unique = 0, True, True
    diag: dict = {}
    rank = inst.affine_rank()
    if rank == 0:
        x = P[0].copy()
    elif rank == 1 and not math.isinf(p) and p != 2:
        x, unique, diag = _solve_collinear(inst, spec, spec.method == "reduced_lp")
    elif p == 2:
        x = P.mean(axis=0)
    elif p == 1:
        x, iterations, converged = geometric_median(P, min(spec.max_iterations, WEISZFELD_CAP))
    elif math.isinf(p):
        x, iterations, converged = min_enclosing_ball(P, spec.max_iterations)
        diag["exact_ball"] = converged
    else:
        x, iterations, converged = lp_descent(P, p, spec.max_iterations, spec.iter_tolerance)
    point, feas = _as_simplex(x)
    diag.update(feas)
    return finalize(
        [point], spec, objective(P, np.array(point.weights), p),
        unique=unique, converged=converged, iterations=iterations, diagnostics=diag,
    )


# -- Condorcet ------------------------------------------------------------


def _challengers(candidate: np.ndarray, trials: int, rng: np.random.Generator) -> np.ndarray:
    """Trial i is a Dirichlet sample when i % 4 == 0, else a perturbation of the candidate."""
    m = candidate.size
    out = np.empty((trials, m))
    kinds = np.arange(trials) % 4
    uni = kinds == 0
    out[uni] = rng.dirichlet(np.ones(m), size=int(uni.sum()))
    pert = ~uni
    k = int(pert.sum())
    if k:
        dirs = rng.normal(size=(k, m))
        dirs -= dirs.mean(axis=1, keepdims=True)  # stay on the hyperplane sum = 1
        norms = np.linalg.norm(dirs, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        radii = np.array(FALSIFIER_RADII)[kinds[pert] - 1][:, None]
        y = candidate + radii * dirs / norms
        # pull outside points back along the segment towards the candidate
        neg = y < 0
        if neg.any():
            step = y - candidate
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(step < 0, candidate / -step, np.inf)
            scale = np.minimum(1.0, ratios.min(axis=1, keepdims=True))
            y = candidate + scale * step
        out[pert] = y
    return out


def falsify_condorcet_simplex(
    election: Election | SimplexInstance, candidate: Simplex, spec: AggregationSpec
) -> AggregationResult:
    """Search for a point a voter majority strictly prefers to ``candidate``.

    One-sided: a witness disproves that the candidate is a Condorcet winner
    (strong or weak); no witness is only evidence.  The first witness in
    trial order is returned.
    """
    inst = election if isinstance(election, SimplexInstance) else SimplexInstance.from_election(election)
    c = np.asarray(candidate.weights, dtype=float)
    if c.size != inst.m:
        raise ValidationError("candidate dimension mismatch")
    spec = replace(spec, method="condorcet")
    rng = np.random.default_rng(spec.seed)
    trials = spec.falsifier_trials
    Y = _challengers(c, trials, rng) if trials else np.empty((0, inst.m))
    d_c = np.linalg.norm(inst.points - c, axis=1)
    witness = None
    first = None
    batch = 2048
    for start in range(0, trials, batch):
        Yb = Y[start:start + batch]
        d_y = np.linalg.norm(inst.points[None, :, :] - Yb[:, None, :], axis=2)
        pro_y = (d_y < d_c).sum(axis=1)
        pro_c = (d_y > d_c).sum(axis=1)
        hits = np.flatnonzero(pro_y > pro_c)
        if hits.size:
            first = start + int(hits[0])
            witness = Simplex(tuple(float(w) for w in Yb[hits[0]]))
            break
    diag = {"trials": trials, "one_sided": True}
    if witness is None:
        diag["status"] = f"not falsified after {trials} trials"
        return finalize([candidate], spec, None, unique=False, diagnostics=diag,
                        reason="not_falsified")
    diag["status"] = "falsified"
    diag["witness_trial"] = first
    return AggregationResult(
        winners=(), objective=None, spec=spec, witness=witness,
        reason="falsified", diagnostics=diag,
    )
