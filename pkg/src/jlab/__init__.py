"""Extremal problems in generalized Johnson graphs J(n, k, L).

Exact clique and coclique numbers, Deza-Erdos-Frankl bounds, exact-rational
Delsarte/ratio LP certificates, extremal family constructions and spectral
supersaturation checks.
"""

from jlab.combinatorics import (
    KSet,
    binomial,
    intersection_size,
    rank_colex,
    unrank_colex,
)
from jlab.graph import JohnsonSpec, adjacent, degree, induced_edges, is_clique, is_coclique
from jlab.families import SetFamily

__version__ = "0.1.0"

__all__ = [
    "KSet",
    "binomial",
    "intersection_size",
    "rank_colex",
    "unrank_colex",
    "JohnsonSpec",
    "adjacent",
    "degree",
    "induced_edges",
    "is_clique",
    "is_coclique",
    "SetFamily",
    "__version__",
]
