"""Vote aggregation in metric spaces: Condorcet and L_p winners for six settings."""

from .axioms import check_majoritarian, check_monotone, run_table1_suite
from .core import (
    AggregationResult,
    AggregationSpec,
    AxiomReport,
    Document,
    Election,
    GuardExceeded,
    Label,
    Permutation,
    Real,
    Simplex,
    Subset,
    ValidationError,
    canonical_encode,
    validate_election,
)
from .metrics import distance
from .solve import aggregate, is_winner, point_objective

__version__ = "0.1.0"

__all__ = [
    "AggregationResult",
    "AggregationSpec",
    "AxiomReport",
    "Document",
    "Election",
    "GuardExceeded",
    "Label",
    "Permutation",
    "Real",
    "Simplex",
    "Subset",
    "ValidationError",
    "aggregate",
    "canonical_encode",
    "check_majoritarian",
    "check_monotone",
    "distance",
    "is_winner",
    "point_objective",
    "run_table1_suite",
    "validate_election",
]
