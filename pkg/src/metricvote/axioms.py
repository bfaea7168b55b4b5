"""Executable checks of majoritarity and monotonicity, and the summary-table suite.

Random trials are evidence, never proof: a cell either shows a concrete
counterexample or reports "no counterexample in N trials".
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from .core import (
    AggregationSpec,
    AxiomReport,
    Document,
    Election,
    Label,
    Permutation,
    Point,
    Real,
    Simplex,
    Subset,
    canonical_encode,
    validate_election,
)
from .solve import aggregate, is_winner

FALSIFIER_TRIALS = 500
POOL = ("s1", "s2", "s3", "s4")
LETTERS = "abcdefgh"


# -- the two axioms -------------------------------------------------------


def majority_point(election: Election) -> Point | None:
    """A point chosen by at least half the voters, if any."""
    keys = Counter(canonical_encode(v) for v in election.voters)
    key, count = max(sorted(keys.items()), key=lambda kv: kv[1])
    if 2 * count < election.n:
        return None
    return next(v for v in election.voters if canonical_encode(v) == key)


def check_majoritarian(election: Election, spec: AggregationSpec) -> AxiomReport:
    """Pass iff a point shared by at least n/2 voters is among the winners."""
    w = majority_point(election)
    if w is None:
        return AxiomReport("majoritarian", None, election, spec, note="no point has n/2 voters")
    res = aggregate(election, spec)
    ok = is_winner(election, spec, w, res)
    return AxiomReport(
        "majoritarian", ok, election, spec, res.winners,
        counterexample=None if ok else election,
        note=f"majority point {canonical_encode(w)}",
    )


def check_monotone(election: Election, spec: AggregationSpec, voter_index: int,
                   w: Point | None = None) -> AxiomReport:
    """Move one voter onto a current winner ``w``; pass iff ``w`` still wins.

    ``w`` defaults to the representative winner.  Not applicable when
    there is no winner or the given ``w`` is not one.
    """
    res = aggregate(election, spec)
    if w is None:
        if not res.winners:
            return AxiomReport("monotone", None, election, spec, note="no winner")
        w = res.representative
    elif not is_winner(election, spec, w, res):
        return AxiomReport("monotone", None, election, spec, res.winners,
                           note=f"{canonical_encode(w)} is not a winner")
    moved = election.with_voter(voter_index, w)
    res2 = aggregate(moved, spec)
    ok = is_winner(moved, spec, w, res2)
    return AxiomReport(
        "monotone", ok, moved, spec, res2.winners,
        counterexample=None if ok else moved,
        note=f"voter {voter_index} moved to {canonical_encode(w)}",
    )


# -- random instances -----------------------------------------------------


def random_point(setting: str, rng: np.random.Generator, alternatives) -> Point:
    m = len(alternatives)
    if setting == "plurality":
        return Label(alternatives[rng.integers(m)])
    if setting == "line":
        if rng.random() < 0.5:
            return Real(float(rng.integers(-5, 6)))
        return Real(float(np.round(rng.uniform(-5, 5), 6)))
    if setting == "budget":
        if rng.random() < 0.2:
            x = np.zeros(m)
            x[rng.integers(m)] = 1.0
        else:
            x = rng.dirichlet(np.ones(m))
        return Simplex(tuple(float(w) for w in x))
    if setting == "ranking":
        return Permutation(tuple(alternatives[i] for i in rng.permutation(m)))
    if setting in ("committee", "committee_fixed_k"):
        return Subset(a for a in alternatives if rng.random() < 0.5)
    if setting == "legislation":
        size = int(rng.integers(0, min(3, m) + 1))
        return Document(tuple(alternatives[i] for i in rng.permutation(m)[:size]))
    raise ValueError(setting)


def random_election(setting: str, rng: np.random.Generator, max_m: int = 4, max_n: int = 9) -> Election:
    """A small random election, inside every solver guard."""
    n = int(rng.integers(1, max_n + 1))
    if setting == "legislation":
        alts = POOL
    else:
        m = int(rng.integers(2 if setting in ("budget", "ranking", "plurality") else 1, max_m + 1))
        alts = tuple(LETTERS[:m])
    voters = [random_point(setting, rng, alts) for _ in range(n)]
    if setting == "legislation" and not any(v.sentences for v in voters):
        voters[0] = Document((alts[0],))
    if setting == "line":
        alts = ()
    if setting == "committee_fixed_k":
        return validate_election(Election(setting, alts, tuple(voters), k=int(rng.integers(0, len(alts) + 1))))
    return validate_election(Election(setting, alts, tuple(voters)))


def plant_majority(election: Election, rng: np.random.Generator) -> Election:
    """Copy one voter's point onto ceil(n/2) voters (sometimes exactly n/2)."""
    n = election.n
    w = election.voters[int(rng.integers(n))]
    k = (n + 1) // 2
    idx = rng.choice(n, size=k, replace=False)
    for i in idx:
        election = election.with_voter(int(i), w)
    return election


# -- the summary-table suite ----------------------------------------------


@dataclass
class Cell:
    setting: str
    rule: str
    property: str
    claimed: str
    observed: str = ""
    trials: int = 0
    violations: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def reproduced(self) -> bool:
        return self.observed == self.claimed

    def as_dict(self) -> dict:
        return {
            "setting": self.setting, "rule": self.rule, "property": self.property,
            "claimed": self.claimed, "observed": self.observed, "reproduced": self.reproduced,
            "trials": self.trials, "violations": self.violations,
            "counterexample": self.counterexample, "notes": list(self.notes),
        }


@dataclass
class Table1Report:
    seed: int
    trials: int
    cells: list[Cell]

    @property
    def all_reproduced(self) -> bool:
        return all(c.reproduced for c in self.cells)

    def as_dict(self) -> dict:
        return {"seed": self.seed, "trials": self.trials,
                "all_reproduced": self.all_reproduced,
                "cells": [c.as_dict() for c in self.cells]}

    def format(self) -> str:
        rows = [("setting", "rule", "property", "claimed", "observed", "trials", "violations")]
        for c in self.cells:
            rows.append((c.setting, c.rule, c.property, c.claimed, c.observed,
                         str(c.trials), str(c.violations)))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        return "\n".join("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)


def _spec(method: str, p: float = 1.0, **kw) -> AggregationSpec:
    return AggregationSpec(method=method, p=p, strict=False, falsifier_trials=FALSIFIER_TRIALS, **kw)


SIZES = {
    "plurality": dict(max_m=6, max_n=15),
    "line": dict(max_m=1, max_n=15),
    "budget": dict(max_m=4, max_n=9),
    "ranking": dict(max_m=4, max_n=9),
    "committee": dict(max_m=4, max_n=9),
    "legislation": dict(max_m=4, max_n=7),
}


def _trial_check(setting: str, prop: str, spec: AggregationSpec, seed: int, trials: int):
    """Run seeded random trials; returns (applicable trials, first failing report or None, failures)."""
    done = failures = 0
    first = None
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        e = random_election(setting, rng, **SIZES[setting])
        if prop == "majoritarian":
            rep = check_majoritarian(plant_majority(e, rng), spec)
        else:
            if setting == "budget" and spec.method == "condorcet":
                # random budgets almost never have a Condorcet winner
                e = plant_majority(e, rng)
            rep = check_monotone(e, spec, int(rng.integers(e.n)))
        if rep.passed is None:
            continue
        done += 1
        if not rep.passed:
            failures += 1
            first = first or rep
    return done, first, failures


def _describe(e: Election) -> str:
    return f"{e.setting}: " + " | ".join(canonical_encode(v).replace("\x1e", "/") for v in e.voters)


def _yes_cell(cell: Cell, specs, seed: int, trials: int) -> Cell:
    for spec in specs:
        done, first, fails = _trial_check(cell.setting, cell.property, spec, seed, trials)
        cell.trials += done
        cell.violations += fails
        if first is not None and cell.counterexample is None:
            cell.counterexample = _describe(first.counterexample)
    return cell


def _known_counterexamples():
    """(setting, property, spec, election, voter index, w) of known failures for p > 1."""
    V = validate_election
    return {
        ("line", "majoritarian"): [(_spec("reduced_lp", 2.0), V({"setting": "line", "voters": [0, 0, 0, 0, 1]}), None, None)],
        ("line", "monotone"): [(_spec("reduced_lp", 2.0), V({"setting": "line", "voters": [0, 0, 1]}), 2, None)],
        ("budget", "majoritarian"): [(_spec("reduced_lp", 2.0), V({"setting": "budget", "voters": [
            {"a": 1.0}, {"a": 1.0}, {"b": 1.0}]}), None, None)],
        ("ranking", "majoritarian"): [(_spec("reduced_lp", 2.0), V({"setting": "ranking", "alternatives": ["a", "b", "c"],
                                                                     "voters": [["a", "b", "c"], ["a", "b", "c"], ["c", "a", "b"]]}), None, None)],
        ("ranking", "monotone"): [(_spec("reduced_lp", math.inf), V({"setting": "ranking", "alternatives": list("abcde"),
                                                                      "voters": [list("abcde"), list("eabcd")]}), 1,
                                   Permutation(tuple("abecd")))],
        ("committee", "majoritarian"): [(_spec("reduced_lp", 2.0), V({"setting": "committee", "alternatives": ["a", "b"],
                                                                       "voters": [["a"], ["a"], ["b"]]}), None, None)],
        ("committee", "monotone"): [(_spec("reduced_lp", 2.0), V({"setting": "committee", "alternatives": list("abcd"),
                                                                   "voters": [[], list("abcd")]}), 1, Subset("ab"))],
        ("legislation", "majoritarian"): [(_spec("reduced_lp", 2.0), V({"setting": "legislation",
                                                                         "voters": [["s1"], ["s1"], ["s2"]]}), None, None)],
        ("legislation", "monotone"): [(_spec("reduced_lp", 2.0), V({"setting": "legislation",
                                                                     "voters": [[], ["s1", "s2", "s3", "s4"]]}), 1,
                                       Document(("s1", "s2")))],
    }


def _triangle_search(seed: int, p: float, trials: int):
    """Seeded search for a three-voter budget where moving a voter onto the winner breaks it."""
    spec = _spec("reduced_lp", p)
    for t in range(trials):
        rng = np.random.default_rng([seed, 7, t])
        pts = rng.dirichlet(np.ones(3), size=3)
        e = validate_election(Election("budget", ("a", "b", "c"), tuple(Simplex(tuple(map(float, x))) for x in pts)))
        rep = check_monotone(e, spec, 0)
        if rep.passed is False:
            return t + 1, rep
    return trials, None


def run_table1_suite(seed: int = 0, trials: int = 200) -> Table1Report:
    """Majoritarity and monotonicity for every setting and both rule families.

    "yes" cells run ``trials`` seeded instances per rule (Condorcet cells
    use weak winners; L_p cells use p = 1 with co-winner membership, and
    plurality also runs reduced L_p for p in {1, 2, 3, inf}).  "no" parts
    replay known counterexamples for p > 1.  Two uniqueness cells are
    checked as well.
    """
    cells: list[Cell] = []
    lp1 = [_spec("lp", 1.0)]
    known = _known_counterexamples()
    table = [
        ("plurality", "yes", "yes"),
        ("line", "only p=1", "only p=1"),
        ("budget", "only p=1", "no"),
        ("ranking", "only p=1", "only p=1"),
        ("committee", "only p=1", "only p=1"),
        ("legislation", "only p=1", "only p=1"),
    ]
    for setting, maj, mono in table:
        for prop in ("majoritarian", "monotone"):
            cell = _yes_cell(Cell(setting, "condorcet", prop, "yes"), [_spec("condorcet")], seed, trials)
            cell.observed = "yes" if cell.violations == 0 else "no"
            cells.append(cell)
        for prop, claimed in (("majoritarian", maj), ("monotone", mono)):
            cell = Cell(setting, "L_p", prop, claimed)
            if setting == "plurality":
                specs = [_spec("reduced_lp", q) for q in (1.0, 2.0, 3.0, math.inf)]
                _yes_cell(cell, specs, seed, trials)
                cell.observed = "yes" if cell.violations == 0 else "no"
                cells.append(cell)
                continue
            _yes_cell(cell, lp1, seed, trials)
            p1_holds = cell.violations == 0
            found = False
            if (setting, prop) in known:
                for spec, e, i, w in known[(setting, prop)]:
                    rep = check_majoritarian(e, spec) if prop == "majoritarian" else check_monotone(e, spec, i, w)
                    if rep.passed is False:
                        found = True
                        cell.counterexample = _describe(rep.counterexample)
                        cell.notes.append(f"p={spec.p:g} counterexample: {rep.note}")
            elif setting == "budget" and prop == "monotone":
                for q in (2.0, math.inf):
                    tried, rep = _triangle_search(seed, q, 200)
                    if rep is not None:
                        found = True
                        cell.counterexample = _describe(rep.counterexample)
                        cell.notes.append(f"p={q:g}: triangle counterexample after {tried} seeded draws")
                        break
                cell.notes.append(f"p=1: no counterexample in {cell.trials} trials")
            if claimed == "only p=1":
                cell.observed = "only p=1" if p1_holds and found else ("yes" if p1_holds else "no")
            else:
                cell.observed = "no" if found or not p1_holds else "yes"
            cells.append(cell)

    cells.append(_uniqueness_line(seed, trials))
    cells.append(_uniqueness_committee(seed, max(trials, 500)))
    for c in cells:
        if c.claimed == "yes" and c.observed == "yes":
            c.notes.append(f"no counterexample in {c.trials} trials")
    return Table1Report(seed, trials, cells)


def _uniqueness_line(seed: int, trials: int) -> Cell:
    cell = Cell("line", "condorcet", "unique (n odd)", "yes")
    spec = AggregationSpec(method="condorcet")
    for t in range(trials):
        rng = np.random.default_rng([seed, 11, t])
        n = 2 * int(rng.integers(0, 8)) + 1
        e = validate_election({"setting": "line", "voters": [float(x) for x in rng.integers(-5, 6, size=n)]})
        res = aggregate(e, spec)
        cell.trials += 1
        if len(res.winners) != 1:
            cell.violations += 1
    cell.observed = "yes" if cell.violations == 0 else "no"
    return cell


def _uniqueness_committee(seed: int, trials: int) -> Cell:
    """L_1 ties checked by exhaustive enumeration on odd-n committee elections."""
    from .committee import solve_committee_lp

    cell = Cell("committee", "L_p", "unique (p=1, n odd)", "yes")
    spec = AggregationSpec(method="lp", p=1.0)
    for t in range(trials):
        rng = np.random.default_rng([seed, 13, t])
        e = random_election("committee", rng, max_m=6, max_n=9)
        if e.n % 2 == 0:
            e = replace(e, voters=e.voters[:-1]) if e.n > 1 else e
        cell.trials += 1
        if len(solve_committee_lp(e, spec).winners) != 1:
            cell.violations += 1
    cell.observed = "yes" if cell.violations == 0 else "no"
    return cell
