"""Shared data model: ideal points, elections, aggregation specs and results.

Every setting stores voters as one variant of the point union below.  All
objects are frozen; solvers never mutate their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence, Union

SETTINGS = (
    "plurality",
    "line",
    "budget",
    "ranking",
    "committee",
    "committee_fixed_k",
    "legislation",
)
FINITE_SETTINGS = ("plurality", "ranking", "committee", "committee_fixed_k", "legislation")
METHODS = ("condorcet", "lp", "reduced_lp")
TIE_BREAKS = ("report_all", "lexicographic")

INF = math.inf
WINNER_CAP = 10_000
SIMPLEX_TOL = 1e-9
SIMPLEX_INGEST_TOL = 1e-6
# separates sentences in document encodings; sentences may not contain it
DOC_SEP = "\x1e"


class ValidationError(ValueError):
    """Raised when an election, point or spec violates its invariants."""


class GuardExceeded(RuntimeError):
    """An exact solver refused an instance that is too large.

    ``required`` holds the size the solver would have needed.
    """

    def __init__(self, what: str, required: int | float, limit: int | float):
        self.what = what
        self.required = required
        self.limit = limit
        super().__init__(f"{what}: required size {required} exceeds guard {limit}")


# -- points ---------------------------------------------------------------


@dataclass(frozen=True)
class Label:
    id: str


@dataclass(frozen=True)
class Real:
    value: float


@dataclass(frozen=True)
class Simplex:
    weights: tuple[float, ...]


@dataclass(frozen=True)
class Permutation:
    order: tuple[str, ...]


@dataclass(frozen=True)
class Subset:
    members: frozenset

    def __init__(self, members: Iterable[str] = ()):
        object.__setattr__(self, "members", frozenset(members))


@dataclass(frozen=True)
class Document:
    sentences: tuple[str, ...]


Point = Union[Label, Real, Simplex, Permutation, Subset, Document]

POINT_TYPE = {
    "plurality": Label,
    "line": Real,
    "budget": Simplex,
    "ranking": Permutation,
    "committee": Subset,
    "committee_fixed_k": Subset,
    "legislation": Document,
}


def canonical_encode(point: Point) -> str:
    """Deterministic string key for a point; winner lists are sorted by it."""
    if isinstance(point, Label):
        return point.id
    if isinstance(point, Real):
        return f"{point.value:.12f}"
    if isinstance(point, Simplex):
        return ",".join(f"{w:.12f}" for w in point.weights)
    if isinstance(point, Permutation):
        return ">".join(point.order)
    if isinstance(point, Subset):
        return ",".join(sorted(point.members))
    if isinstance(point, Document):
        return DOC_SEP.join(point.sentences)
    raise TypeError(f"not a point: {point!r}")


def sort_points(points: Iterable[Point]) -> list[Point]:
    return sorted(points, key=canonical_encode)


# -- elections ------------------------------------------------------------


@dataclass(frozen=True)
class Election:
    """A validated election.

    ``alternatives`` is the universe A for plurality/ranking/committee
    settings, the union of proposed items for budgets, and the sentence pool
    (first-appearance order) for legislation.  ``domain`` only applies to
    the line setting: ``None`` for the whole real line, ``("interval", lo, hi)``
    or ``("points", (x1, x2, ...))`` for a finite alternative set.
    """

    setting: str
    alternatives: tuple[str, ...]
    voters: tuple[Point, ...]
    k: int | None = None
    domain: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def ell(self) -> int | None:
        if self.setting != "legislation":
            return None
        return max(len(v.sentences) for v in self.voters)

    def with_voter(self, index: int, point: Point) -> "Election":
        voters = list(self.voters)
        voters[index] = point
        return replace(self, voters=tuple(voters))


def _check_id(a: str) -> str:
    if not isinstance(a, str) or not a:
        raise ValidationError(f"alternative ids must be non-empty strings, got {a!r}")
    if "," in a or ">" in a:
        raise ValidationError(f"alternative id {a!r} may not contain ',' or '>'")
    return a


def _normalize_simplex(weights: Sequence[float]) -> tuple[float, ...]:
    ws = [float(w) for w in weights]
    if any(not math.isfinite(w) for w in ws):
        raise ValidationError("simplex weights must be finite")
    if any(w < 0 for w in ws):
        raise ValidationError(f"negative simplex weight in {ws}")
    total = math.fsum(ws)
    if abs(total - 1.0) > SIMPLEX_INGEST_TOL:
        raise ValidationError(f"simplex weights sum to {total}, not 1")
    if abs(total - 1.0) <= 1e-12:
        return tuple(ws)
    return tuple(w / total for w in ws)


def _dedupe(sentences: Iterable[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for s in sentences:
        if not isinstance(s, str):
            raise ValidationError(f"sentences must be strings, got {s!r}")
        if DOC_SEP in s:
            raise ValidationError("sentence contains the reserved separator \\x1e")
        seen.setdefault(s, None)
    return tuple(seen)


def validate_election(raw: Any) -> Election:
    """Build a normalized :class:`Election` from a raw mapping or an Election.

    Raw mappings follow the JSON election-file schema (``setting``,
    ``alternatives``, ``voters``, optional ``k`` and ``domain``).  Passing an
    already validated :class:`Election` re-validates it; the result is equal
    to the input.
    """
    if isinstance(raw, Election):
        raw = election_to_raw(raw)
    if not isinstance(raw, dict):
        raise ValidationError("election must be a mapping")
    setting = raw.get("setting")
    if setting not in SETTINGS:
        raise ValidationError(f"unknown setting {setting!r}")
    ballots = raw.get("voters")
    if not isinstance(ballots, (list, tuple)) or len(ballots) < 1:
        raise ValidationError("an election needs at least one voter")
    alts_raw = raw.get("alternatives")
    alternatives: tuple[str, ...] = ()
    if alts_raw is not None:
        alternatives = tuple(_check_id(a) for a in alts_raw)
        if len(set(alternatives)) != len(alternatives):
            raise ValidationError("duplicate alternatives")

    k = raw.get("k")
    domain = None
    voters: list[Point] = []

    if setting == "plurality":
        if not alternatives:
            alternatives = tuple(
                dict.fromkeys(_check_id(b.id if isinstance(b, Label) else b) for b in ballots)
            )
        for b in ballots:
            if isinstance(b, Label):
                b = b.id
            if not isinstance(b, str):
                raise ValidationError(f"plurality ballot must be a label, got {b!r}")
            if b not in alternatives:
                raise ValidationError(f"ballot {b!r} not among alternatives")
            voters.append(Label(b))

    elif setting == "line":
        for b in ballots:
            if isinstance(b, Real):
                b = b.value
            if isinstance(b, bool) or not isinstance(b, (int, float)) or not math.isfinite(b):
                raise ValidationError(f"line ballot must be a finite number, got {b!r}")
            voters.append(Real(float(b)))
        domain = _validate_domain(raw.get("domain"))
        alternatives = ()

    elif setting == "budget":
        union: dict[str, None] = dict.fromkeys(alternatives)
        proposals = []
        for b in ballots:
            if isinstance(b, Simplex):
                if not alternatives:
                    raise ValidationError("Simplex ballots need explicit alternatives")
                b = dict(zip(alternatives, b.weights))
            if not isinstance(b, dict) or not b:
                raise ValidationError(f"budget ballot must be a non-empty mapping, got {b!r}")
            for a in b:
                union.setdefault(_check_id(a), None)
            proposals.append(b)
        alternatives = tuple(union)
        for b in proposals:
            voters.append(Simplex(_normalize_simplex([b.get(a, 0.0) for a in alternatives])))

    elif setting == "ranking":
        for b in ballots:
            if isinstance(b, Permutation):
                b = b.order
            order = tuple(b)
            if not alternatives:
                alternatives = tuple(_check_id(a) for a in order)
            if len(order) != len(alternatives) or set(order) != set(alternatives) or len(set(order)) != len(order):
                raise ValidationError(f"ranking {list(order)} is not a bijection over the alternatives")
            voters.append(Permutation(order))

    elif setting in ("committee", "committee_fixed_k"):
        sets = []
        for b in ballots:
            if isinstance(b, Subset):
                b = sorted(b.members)
            members = list(b)
            if len(set(members)) != len(members):
                raise ValidationError(f"committee ballot {members} has duplicates")
            sets.append(frozenset(members))
        if not alternatives:
            alternatives = tuple(sorted({a for s in sets for a in s}))
            for a in alternatives:
                _check_id(a)
        for s in sets:
            if not s <= set(alternatives):
                raise ValidationError(f"ballot {sorted(s)} is not a subset of the alternatives")
            voters.append(Subset(s))
        if setting == "committee_fixed_k":
            if k is None or isinstance(k, bool) or not isinstance(k, int):
                raise ValidationError("committee_fixed_k needs an integer k")
            if not 0 <= k <= len(alternatives):
                raise ValidationError(f"k={k} outside [0, m={len(alternatives)}]")
        else:
            k = None

    elif setting == "legislation":
        pool: dict[str, None] = {}
        for b in ballots:
            if isinstance(b, Document):
                b = b.sentences
            if isinstance(b, str) or not isinstance(b, (list, tuple)):
                raise ValidationError(f"legislation ballot must be a sentence list, got {b!r}")
            doc = _dedupe(b)
            for s in doc:
                pool.setdefault(s, None)
            voters.append(Document(doc))
        if not pool:
            raise ValidationError("legislation needs at least one non-empty document")
        alternatives = tuple(pool)

    if setting not in ("committee_fixed_k",):
        k = None
    if setting in ("plurality", "ranking", "committee", "committee_fixed_k") and not alternatives:
        raise ValidationError("empty alternative universe")
    return Election(setting, alternatives, tuple(voters), k, domain)


def _validate_domain(dom: Any) -> tuple | None:
    if dom is None:
        return None
    if isinstance(dom, tuple) and dom and dom[0] in ("interval", "points"):
        dom = {dom[0]: list(dom[1:]) if dom[0] == "interval" else list(dom[1])}
    if not isinstance(dom, dict) or len(dom) != 1:
        raise ValidationError("domain must be {'interval': [lo, hi]} or {'points': [...]}")
    if "interval" in dom:
        lo, hi = (float(x) for x in dom["interval"])
        if not lo <= hi:
            raise ValidationError("domain interval needs lo <= hi")
        return ("interval", lo, hi)
    if "points" in dom:
        pts = tuple(sorted({float(x) for x in dom["points"]}))
        if not pts:
            raise ValidationError("finite domain must be non-empty")
        return ("points", pts)
    raise ValidationError(f"unknown domain kind {list(dom)}")


def election_to_raw(election: Election) -> dict:
    """Inverse of :func:`validate_election` (JSON-compatible)."""
    s = election.setting
    if s == "plurality":
        ballots: list = [v.id for v in election.voters]
    elif s == "line":
        ballots = [v.value for v in election.voters]
    elif s == "budget":
        ballots = [
            {a: w for a, w in zip(election.alternatives, v.weights) if w > 0}
            for v in election.voters
        ]
    elif s == "ranking":
        ballots = [list(v.order) for v in election.voters]
    elif s in ("committee", "committee_fixed_k"):
        ballots = [sorted(v.members) for v in election.voters]
    else:
        ballots = [list(v.sentences) for v in election.voters]
    raw: dict = {"setting": s, "voters": ballots}
    if s not in ("line", "legislation"):
        raw["alternatives"] = list(election.alternatives)
    if election.k is not None:
        raw["k"] = election.k
    if election.domain is not None:
        kind = election.domain[0]
        raw["domain"] = {kind: list(election.domain[1:]) if kind == "interval" else list(election.domain[1])}
    return raw


# -- specs and results ----------------------------------------------------


@dataclass(frozen=True)
class AggregationSpec:
    """What to compute and how.

    ``p`` is a float in [1, inf]; infinity is ``math.inf`` and every solver
    branches on it instead of raising distances to that power.  ``strict``
    selects strong (>) versus weak (>=) Condorcet winners.
    """

    method: str = "lp"
    p: float = 1.0
    tolerance: float = 1e-9
    iter_tolerance: float = 1e-7
    max_iterations: int = 100_000
    reduced_epsilon: float = 1e-4
    tie_break: str = "report_all"
    seed: int = 0
    falsifier_trials: int = 10_000
    strict: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}")
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise ValidationError(f"p must lie in [1, inf], got {self.p}")
        object.__setattr__(self, "p", p)
        if self.tolerance <= 0 or self.iter_tolerance <= 0:
            raise ValidationError("tolerances must be positive")
        if not 0 < self.reduced_epsilon <= 0.1:
            raise ValidationError("reduced_epsilon must lie in (0, 0.1]")
        if self.tie_break not in TIE_BREAKS:
            raise ValidationError(f"unknown tie_break {self.tie_break!r}")
        if self.max_iterations < 1 or self.falsifier_trials < 0:
            raise ValidationError("iteration limits must be positive")

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)


@dataclass(frozen=True)
class AggregationResult:
    """Outcome of one aggregation.

    ``winners`` is canonically sorted.  For continuous settings it holds a
    single representative; ``unique`` says whether it is the only winner and
    ``diagnostics`` may describe the full tie set (e.g. an interval).  An
    empty winner list only happens for Condorcet aggregation, with ``reason``
    set.
    """

    winners: tuple[Point, ...]
    objective: float | None
    spec: AggregationSpec
    representative: Point | None = None
    unique: bool = True
    converged: bool = True
    truncated: bool = False
    iterations: int = 0
    heuristic: bool = False
    witness: Point | None = None
    reason: str | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.winners and self.spec.method != "condorcet":
            raise ValueError("only Condorcet aggregation may return no winner")
        if not self.winners and self.reason is None:
            object.__setattr__(self, "reason", "no_condorcet_winner")
        if self.representative is None and self.winners:
            object.__setattr__(self, "representative", self.winners[0])

    def keys(self) -> list[str]:
        return [canonical_encode(w) for w in self.winners]


def finalize(
    winners: Iterable[Point],
    spec: AggregationSpec,
    objective: float | None,
    *,
    representative: Point | None = None,
    truncated: bool = False,
    **kw,
) -> AggregationResult:
    """Sort winners canonically, apply the tie-break policy and build the result."""
    ordered = sort_points(winners)
    if len(ordered) > WINNER_CAP:
        ordered, truncated = ordered[:WINNER_CAP], True
    unique = kw.pop("unique", len(ordered) <= 1 and not truncated)
    if spec.tie_break == "lexicographic" and ordered:
        ordered = ordered[:1]
        representative = ordered[0]
    return AggregationResult(
        winners=tuple(ordered),
        objective=objective,
        spec=spec,
        representative=representative,
        unique=unique,
        truncated=truncated,
        **kw,
    )


@dataclass(frozen=True)
class AxiomReport:
    property: str
    passed: bool | None  # None: precondition not met
    election: Election
    spec: AggregationSpec
    winners: tuple[Point, ...] = ()
    counterexample: Election | None = None
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.passed is not None
