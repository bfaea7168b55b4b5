"""Argmin, reduced-argmin and Condorcet selection over a distance matrix.

Rows of ``D`` are candidate points, columns are voters.
"""

from __future__ import annotations

import math

import numpy as np

# relative slack when comparing real-valued objectives
REL_TOL = 1e-9
# number of log-moment terms used to break ties in the q -> p expansion
EXPANSION_ORDER = 4


def near_min(values: np.ndarray, tol: float = REL_TOL) -> np.ndarray:
    """Boolean mask of entries within ``tol`` (relative, floor 1) of the minimum."""
    values = np.asarray(values, dtype=float)
    lo = values.min()
    return values <= lo + tol * max(1.0, abs(lo))


def objectives(D: np.ndarray, p: float) -> np.ndarray:
    D = np.asarray(D, dtype=float)
    if math.isinf(p):
        return D.max(axis=1)
    return np.sum(D**p, axis=1)


def lp_argmin(D: np.ndarray, p: float) -> tuple[np.ndarray, float]:
    """Indices of rows minimizing the L_p objective, and the minimum."""
    obj = objectives(D, p)
    idx = np.flatnonzero(near_min(obj))
    return idx, float(obj[idx].min())


def _log_moments(D: np.ndarray, p: float) -> np.ndarray:
    """Columns k = 1..K of ``sum_i d_i**p * ln(d_i)**k`` (0 ln 0 := 0)."""
    D = np.asarray(D, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(D > 0, np.log(np.where(D > 0, D, 1.0)), 0.0)
    base = D**p
    return np.stack([np.sum(base * logs**k, axis=1) for k in range(1, EXPANSION_ORDER + 1)], axis=1)


def _lex_filter(keys: np.ndarray) -> np.ndarray:
    keep = np.arange(keys.shape[0])
    for col in range(keys.shape[1]):
        vals = keys[keep, col]
        keep = keep[near_min(vals)]
        if keep.size == 1:
            break
    return keep


def reduced_select(D: np.ndarray, p: float) -> np.ndarray:
    """Rows of ``D`` (already L_p co-winners) that survive the limit q -> p.

    For finite ``p`` the objective at ``q = p + h`` expands as
    ``sum_k h**k / k! * sum_i d_i**p ln(d_i)**k``; the limit set is the union
    of the lexicographic minimizers for ``h -> 0+`` and, when ``p > 1``,
    ``h -> 0-``.  For ``p = inf`` the limit compares distance profiles sorted
    in decreasing order lexicographically.
    """
    D = np.asarray(D, dtype=float)
    if D.shape[0] <= 1:
        return np.arange(D.shape[0])
    if math.isinf(p):
        prof = -np.sort(-np.round(D, 9), axis=1)
        order = np.lexsort(prof.T[::-1])
        best = prof[order[0]]
        return np.sort(order[np.all(np.abs(prof[order] - best) <= 1e-9, axis=1)])
    mom = _log_moments(D, p)
    plus = _lex_filter(mom)
    if p <= 1:
        return np.sort(plus)
    signs = np.array([(-1) ** k for k in range(1, EXPANSION_ORDER + 1)], dtype=float)
    minus = _lex_filter(mom * signs)
    return np.union1d(plus, minus)


def condorcet_mask(D: np.ndarray, strict: bool, chunk: int = 256) -> np.ndarray:
    """Rows that beat (strict) or tie-or-beat (weak) every other row pairwise."""
    D = np.asarray(D, dtype=float)
    N = D.shape[0]
    ok = np.ones(N, dtype=bool)
    for start in range(0, N, chunk):
        rows = D[start:start + chunk]
        closer = (rows[:, None, :] < D[None, :, :]).sum(axis=2)
        farther = (rows[:, None, :] > D[None, :, :]).sum(axis=2)
        cmp = closer > farther if strict else closer >= farther
        idx = np.arange(start, min(start + chunk, N))
        cmp[np.arange(len(idx)), idx] = True
        ok[idx] = cmp.all(axis=1)
    return ok
