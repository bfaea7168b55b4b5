"""Participatory legislation: documents are sequences of distinct sentences.

Aggregation runs in two phases.  Phase one is a committee election over
the sentence pool (each voter approves the sentences in their document);
phase two orders the elected sentences as a social welfare function over
each voter's document restricted to those sentences.  A voter contributes
to the pairwise count of two sentences only if both appear in their
document.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _finite, committee, ranking
from .core import (
    WINNER_CAP,
    AggregationResult,
    AggregationSpec,
    Document,
    Election,
    GuardExceeded,
    Subset,
    ValidationError,
    finalize,
)
from .metrics import document_distance, lp_objective

PHASE1_BRANCH_CAP = 64


@dataclass(frozen=True)
class LegislationPlan:
    """Both phase views of a legislation election.

    ``projected[i]`` lists voter i's elected sentences in their original
    order (as indices into ``elected``) and ``coverage[i]`` is its length.
    """

    pool: tuple[str, ...]
    phase1: Election
    elected: tuple[str, ...]
    projected: tuple[tuple[int, ...], ...]
    coverage: tuple[int, ...]
    ell: int

    def pairwise(self) -> np.ndarray:
        return ranking.pairwise_matrix(self.projected, len(self.elected))


def _check(election: Election) -> None:
    if election.setting != "legislation":
        raise ValidationError(f"expected a legislation election, got {election.setting!r}")


def phase1_election(election: Election) -> Election:
    return Election("committee", election.alternatives,
                    tuple(Subset(v.sentences) for v in election.voters))


def plan_legislation(election: Election, elected=None) -> LegislationPlan:
    """Build the committee view and, for ``elected`` sentences, the ordering view.

    ``elected`` defaults to the whole pool.
    """
    _check(election)
    keep = set(election.alternatives if elected is None else elected)
    chosen = tuple(s for s in election.alternatives if s in keep)
    idx = {s: i for i, s in enumerate(chosen)}
    projected = tuple(tuple(idx[s] for s in v.sentences if s in idx) for v in election.voters)
    return LegislationPlan(
        pool=election.alternatives,
        phase1=phase1_election(election),
        elected=chosen,
        projected=projected,
        coverage=tuple(len(o) for o in projected),
        ell=election.ell,
    )


def document_objective(election: Election, doc: Document, p: float) -> tuple[float, int]:
    """L_p objective of ``doc`` with ell extended to cover it if needed."""
    ell = max(election.ell, len(doc.sentences), 1)
    ds = [document_distance(doc, v, ell) for v in election.voters]
    return lp_objective(ds, p), ell


def _phase(label: str, fn, *args):
    try:
        return fn(*args)
    except GuardExceeded as exc:
        raise GuardExceeded(f"{label}: {exc.what}", exc.required, exc.limit) from None


def _order_cost(plan: LegislationPlan, p: float):
    ballots = [b for b in plan.projected if len(b) > 1]

    def cost(order):
        pos = {a: i for i, a in enumerate(order)}
        ds = [sum(pos[b[s]] > pos[b[t]] for s in range(len(b)) for t in range(s + 1, len(b)))
              for b in ballots]
        if not ds:
            return 0.0
        return float(max(ds)) if math.isinf(p) else float(sum(d**p for d in ds))

    return cost


def _phase2(plan: LegislationPlan, spec: AggregationSpec):
    """Orders of ``plan.elected`` chosen by the phase-two rule.

    Returns ``(orders, heuristic, truncated)`` with orders as index tuples.
    """
    z = len(plan.elected)
    if z == 0:
        return [()], False, False
    p = spec.p
    if spec.method == "condorcet":
        ranking._exhaustive_guard(z, ranking.CONDORCET_GUARD, "phase 2 Condorcet tournament")
        perms = ranking.all_orders(z)
        D = ranking.order_distances(perms, plan.projected)
        mask = _finite.condorcet_mask(D, spec.strict)
        return [tuple(o) for o in perms[mask]], False, False
    if spec.method == "lp" and p == 1 and z <= ranking.KEMENY_GUARD:
        _, orders, truncated = ranking.kemeny_dp(plan.pairwise())
        return orders, False, truncated
    if z <= ranking.EXHAUSTIVE_GUARD:
        perms = ranking.all_orders(z)
        D = ranking.order_distances(perms, plan.projected)
        idx, _ = _finite.lp_argmin(D, p)
        if spec.method == "reduced_lp":
            idx = idx[_finite.reduced_select(D[idx], p)]
        return [tuple(o) for o in perms[idx]], False, False
    rng = np.random.default_rng(spec.seed)
    starts = list(dict.fromkeys(b for b in plan.projected if len(b) == z))
    starts.append(tuple(range(z)))
    starts += [tuple(int(a) for a in rng.permutation(z)) for _ in range(ranking.LOCAL_SEARCH_RESTARTS)]
    _, best = ranking.local_search(z, _order_cost(plan, p), starts)
    return [best], True, False


def solve_legislation(election: Election, spec: AggregationSpec) -> AggregationResult:
    """Two-phase aggregation: elect a sentence set, then order it.

    Every phase-one co-winner set (up to a cap) is ordered in phase two;
    the union of resulting documents is reported.  The objective is the
    document L_p objective of the representative, computed with ell
    extended to the output length when the output is longer than every
    proposal (``diagnostics["ell_extended"]``).
    """
    _check(election)
    p1 = phase1_election(election)
    r1 = _phase("phase 1", committee.solve_committee, p1, spec)
    if not r1.winners:
        return finalize([], spec, None, reason="no_condorcet_winner_phase1",
                        diagnostics={"phase": 1})
    # representative first so its document leads
    sets = [r1.representative] + [s for s in r1.winners if s != r1.representative]
    branch_truncated = len(sets) > PHASE1_BRANCH_CAP or r1.truncated
    sets = sets[:PHASE1_BRANCH_CAP]

    docs: list[Document] = []
    heuristic = truncated = False
    for S in sets:
        plan = plan_legislation(election, S.members)
        orders, heur, trunc = _phase("phase 2", _phase2, plan, spec)
        heuristic |= heur
        truncated |= trunc
        docs.extend(Document(tuple(plan.elected[i] for i in o)) for o in orders)
        if len(docs) > WINNER_CAP:
            truncated = True
            break
    if not docs:
        return finalize([], spec, None, reason="no_condorcet_winner_phase2",
                        diagnostics={"phase": 2})
    docs = list(dict.fromkeys(docs))
    rep = docs[0]
    obj, ell = document_objective(election, rep, spec.p)
    diagnostics = {
        "phase1_winners": len(r1.winners),
        "phase1_branches": len(sets),
        "ell": ell,
        "ell_extended": ell > election.ell,
    }
    if heuristic:
        diagnostics["phase2"] = "local_search"
    return finalize(
        docs, spec, None if spec.method == "condorcet" else obj,
        representative=None if spec.tie_break == "lexicographic" else rep,
        truncated=truncated or branch_truncated, heuristic=heuristic,
        **({"unique": False} if heuristic else {}),
        diagnostics=diagnostics,
    )
