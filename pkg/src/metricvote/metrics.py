"""Distance functions for the six point spaces.

All six are metrics.  Integer-valued ones (discrete, Kendall, Hamming) are
returned as ``int`` so that equality tests stay exact.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .core import (
    Document,
    Election,
    Label,
    Permutation,
    Point,
    Real,
    Simplex,
    Subset,
    ValidationError,
)


def discrete_distance(x: Label, y: Label) -> int:
    return 0 if x.id == y.id else 1


def line_distance(x: Real, y: Real) -> float:
    return abs(x.value - y.value)


def simplex_distance(x: Simplex, y: Simplex) -> float:
    if len(x.weights) != len(y.weights):
        raise ValidationError(f"dimension mismatch: {len(x.weights)} vs {len(y.weights)}")
    return float(np.linalg.norm(np.subtract(x.weights, y.weights)))


def count_inversions(seq: list[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j], by merge sort in O(z log z)."""

    def sort_count(a: list[int]) -> tuple[list[int], int]:
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, inv_l = sort_count(a[:mid])
        right, inv_r = sort_count(a[mid:])
        merged = []
        inv = inv_l + inv_r
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort_count(list(seq))[1]


def kendall_distance(x: Permutation, y: Permutation) -> int:
    """Minimum number of adjacent swaps turning ``x`` into ``y``."""
    if len(x.order) != len(y.order) or set(x.order) != set(y.order):
        raise ValidationError("permutations over different alternative universes")
    pos = {a: i for i, a in enumerate(x.order)}
    return count_inversions([pos[a] for a in y.order])


def hamming_distance(x: Subset, y: Subset) -> int:
    return len(x.members ^ y.members)


def common_inversions(x: Document, y: Document) -> int:
    """Pairs of sentences present in both documents but in opposite order."""
    in_y = set(y.sentences)
    pos = {s: i for i, s in enumerate(x.sentences)}
    return count_inversions([pos[s] for s in y.sentences if s in pos and s in in_y])


def document_distance(x: Document, y: Document, ell: int) -> float:
    """Weighted edit distance: unit insert/delete, adjacent swap at 1/ell**2.

    Evaluated as ``|set(x) ^ set(y)| + inv(x, y) / ell**2``.  Swapping a
    common sentence across the whole document costs at most
    ``(ell - 1) / ell**2 < 2``, so re-inserting never beats swapping; the
    uniform-cost search in :mod:`metricvote.oracle` checks this.
    """
    if ell < max(len(x.sentences), len(y.sentences), 1):
        raise ValidationError(
            f"ell={ell} is shorter than a document ({len(x.sentences)}, {len(y.sentences)})"
        )
    sym = len(set(x.sentences) ^ set(y.sentences))
    return sym + common_inversions(x, y) / ell**2


def distance(x: Point, y: Point, ell: int | None = None) -> float:
    """Dispatch on the point variant."""
    if type(x) is not type(y):
        raise ValidationError(f"cannot compare {type(x).__name__} with {type(y).__name__}")
    if isinstance(x, Label):
        return discrete_distance(x, y)
    if isinstance(x, Real):
        return line_distance(x, y)
    if isinstance(x, Simplex):
        return simplex_distance(x, y)
    if isinstance(x, Permutation):
        return kendall_distance(x, y)
    if isinstance(x, Subset):
        return hamming_distance(x, y)
    if isinstance(x, Document):
        if ell is None:
            ell = max(len(x.sentences), len(y.sentences), 1)
        return document_distance(x, y, ell)
    raise TypeError(f"not a point: {x!r}")


def metric_for(election: Election) -> Callable[[Point, Point], float]:
    """The election's metric as a two-argument function (``ell`` bound for documents)."""
    if election.setting == "legislation":
        ell = election.ell

        def d(x: Point, y: Point) -> float:
            return document_distance(x, y, max(ell, len(x.sentences), len(y.sentences)))

        return d
    return distance


def lp_objective(distances, p: float) -> float:
    """``sum d**p`` for finite ``p``, ``max d`` for ``p = inf``."""
    ds = np.asarray(distances, dtype=float)
    if math.isinf(p):
        return float(ds.max())
    return float(np.sum(ds**p))
