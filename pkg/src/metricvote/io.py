"""JSON election and result files."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .core import AggregationResult, Election, ValidationError, canonical_encode, validate_election


def load_election(path: str | Path) -> Election:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return validate_election(raw)


def jsonable(obj: Any) -> Any:
    """Convert tuples, numpy scalars, points and infinities to plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if obj is None or isinstance(obj, (str, int)):
        return obj
    return canonical_encode(obj)


def result_to_dict(result: AggregationResult) -> dict:
    rep = result.representative
    return {
        "winners": result.keys(),
        "representative": None if rep is None else canonical_encode(rep),
        "objective": jsonable(result.objective),
        "unique": result.unique,
        "truncated": result.truncated,
        "converged": result.converged,
        "heuristic": result.heuristic,
        "witness": None if result.witness is None else canonical_encode(result.witness),
        "reason": result.reason,
        "diagnostics": jsonable(dict(sorted(result.diagnostics.items()))),
    }


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False, ensure_ascii=False) + "\n"
