"""Subtrajectory clustering under the Frechet distance by greedy pathlet cover."""

from .clustering import Clustering, StallError, cluster, validate_clustering
from .curve_core import Tolerance, frechet_decide
from .postprocess import interior_disjoint_clustering
from .simplification import build_simplification

__all__ = [
    "Clustering",
    "StallError",
    "Tolerance",
    "build_simplification",
    "cluster",
    "frechet_decide",
    "interior_disjoint_clustering",
    "validate_clustering",
]
