import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricvote.core import (
    AggregationResult,
    AggregationSpec,
    Document,
    Election,
    Label,
    Permutation,
    Real,
    Simplex,
    Subset,
    ValidationError,
    canonical_encode,
    election_to_raw,
    finalize,
    validate_election,
)


def test_budget_zero_fill():
    e = validate_election({"setting": "budget", "voters": [{"a": 1.0}, {"b": 0.5, "c": 0.5}]})
    assert e.alternatives == ("a", "b", "c")
    assert e.voters == (Simplex((1.0, 0.0, 0.0)), Simplex((0.0, 0.5, 0.5)))


def test_permutation_must_be_bijection():
    with pytest.raises(ValidationError, match="bijection"):
        validate_election({"setting": "ranking", "alternatives": ["a", "b"], "voters": [["a", "b", "a"]]})


def test_documents_deduplicated():
    e = validate_election({"setting": "legislation", "voters": [["s1", "s2", "s1"]]})
    assert e.voters == (Document(("s1", "s2")),)
    assert e.ell == 2
    assert e.alternatives == ("s1", "s2")


@pytest.mark.parametrize(
    "raw",
    [
        {"setting": "nope", "voters": ["a"]},
        {"setting": "plurality", "voters": []},
        {"setting": "budget", "voters": [{"a": -0.1, "b": 1.1}]},
        {"setting": "budget", "voters": [{"a": 0.5, "b": 0.4}]},
        {"setting": "committee_fixed_k", "alternatives": ["a"], "voters": [["a"]]},
        {"setting": "committee_fixed_k", "alternatives": ["a"], "k": 2, "voters": [["a"]]},
        {"setting": "committee", "alternatives": ["a"], "voters": [["b"]]},
        {"setting": "line", "voters": ["x"]},
        {"setting": "legislation", "voters": [[]]},
    ],
)
def test_rejects_invalid(raw):
    with pytest.raises(ValidationError):
        validate_election(raw)


def test_simplex_renormalized_within_tolerance():
    e = validate_election({"setting": "budget", "voters": [{"a": 0.5, "b": 0.5000004}]})
    assert math.isclose(sum(e.voters[0].weights), 1.0, abs_tol=1e-12)


def test_canonical_encodings():
    assert canonical_encode(Subset({"b", "a"})) == "a,b"
    assert canonical_encode(Real(0.5)) == "0.500000000000"
    assert canonical_encode(Permutation(("a", "c", "b"))) == "a>c>b"
    assert canonical_encode(Label("x")) == "x"
    assert canonical_encode(Simplex((0.25, 0.75))) == "0.250000000000,0.750000000000"
    assert canonical_encode(Document(("s1", "s2"))) == "s1\x1es2"


RAWS = [
    {"setting": "plurality", "voters": ["a", "b", "a"]},
    {"setting": "line", "voters": [0, 1.5, -2]},
    {"setting": "line", "voters": [0, 1], "domain": {"interval": [-1, 1]}},
    {"setting": "budget", "voters": [{"a": 0.3, "b": 0.7}, {"c": 1.0}]},
    {"setting": "ranking", "alternatives": ["a", "b", "c"], "voters": [["c", "a", "b"]]},
    {"setting": "committee", "alternatives": ["a", "b"], "voters": [["a"], []]},
    {"setting": "committee_fixed_k", "alternatives": ["a", "b"], "k": 1, "voters": [["a"]]},
    {"setting": "legislation", "voters": [["s1", "s2"], []]},
]


@pytest.mark.parametrize("raw", RAWS)
def test_validation_idempotent(raw):
    e = validate_election(raw)
    assert validate_election(e) == e
    assert validate_election(election_to_raw(e)) == e


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1, allow_nan=False), min_size=2, max_size=6).filter(lambda w: sum(w) > 0.1))
def test_normalization_keeps_coordinate_order(ws):
    total = sum(ws)
    ws = [w / total for w in ws]
    e = validate_election(Election("budget", tuple("abcdef"[: len(ws)]), (Simplex(tuple(ws)),)))
    out = e.voters[0].weights
    assert all((a < b) == (c < d) for a, c in zip(ws, out) for b, d in zip(ws, out))
    assert validate_election(e) == e


@given(st.frozensets(st.sampled_from("abcdef")), st.frozensets(st.sampled_from("abcdef")))
def test_subset_encoding_injective(x, y):
    assert (canonical_encode(Subset(x)) == canonical_encode(Subset(y))) == (x == y)


def test_spec_validation():
    with pytest.raises(ValidationError):
        AggregationSpec(p=0.5)
    with pytest.raises(ValidationError):
        AggregationSpec(method="borda")
    with pytest.raises(ValidationError):
        AggregationSpec(reduced_epsilon=0.5)
    assert AggregationSpec(p=math.inf).is_inf


def test_result_invariants():
    spec = AggregationSpec()
    with pytest.raises(ValueError):
        AggregationResult(winners=(), objective=None, spec=spec)
    r = AggregationResult(winners=(), objective=None, spec=AggregationSpec(method="condorcet"))
    assert r.reason == "no_condorcet_winner"


def test_finalize_sorts_and_breaks_ties():
    pts = [Label("c"), Label("a"), Label("b")]
    r = finalize(pts, AggregationSpec(), 1.0)
    assert r.keys() == ["a", "b", "c"] and not r.unique
    r = finalize(pts, AggregationSpec(tie_break="lexicographic"), 1.0)
    assert r.keys() == ["a"] and r.representative == Label("a")


def test_finalize_caps_winners():
    r = finalize([Real(float(i)) for i in range(10_050)], AggregationSpec(), 0.0)
    assert len(r.winners) == 10_000 and r.truncated and not r.unique
