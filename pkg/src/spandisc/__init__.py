"""Exact and constructive computation of edge-labeling discrepancy for spanning-structure families."""

__version__ = "0.1.0"

from .engine import DiscrepancyReport, exact_discrepancy, labeling_discrepancy  # noqa: E402
from .families import FamilyKind, Witness  # noqa: E402
from .graph import Graph, make_complete, make_grid  # noqa: E402
from .labeling import Labeling  # noqa: E402

__all__ = [
    "DiscrepancyReport", "FamilyKind", "Graph", "Labeling", "Witness", "__version__",
    "exact_discrepancy", "labeling_discrepancy", "make_complete", "make_grid",
]
