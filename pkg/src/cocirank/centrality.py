"""Degree, harmonic closeness and betweenness on an unweighted graph."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .network import SimpleGraph

MEASURES = ("degree", "closeness", "betweenness")


@dataclass(frozen=True, eq=False)
class CentralityResult:
    measure: str
    values: np.ndarray
    theta: int


def degree_centrality(g: SimpleGraph) -> CentralityResult:
    return CentralityResult("degree", g.adjacency.sum(axis=1).astype(np.float64), g.theta)


def _brandes(g: SimpleGraph):
    indptr, indices = g.csr()
    return kernels.brandes(indptr, indices, g.n)


def closeness_centrality(g: SimpleGraph) -> CentralityResult:
    """Sum of reciprocal shortest-path lengths to every reachable node.

    Unreachable nodes add nothing, so the value is finite on disconnected
    graphs and 0 for an isolated node.
    """
    _, closeness = _brandes(g)
    return CentralityResult("closeness", closeness, g.theta)


def betweenness_centrality(g: SimpleGraph) -> CentralityResult:
    """Unnormalised betweenness, each unordered endpoint pair counted once."""
    betweenness, _ = _brandes(g)
    return CentralityResult("betweenness", betweenness, g.theta)


def all_centralities(g: SimpleGraph) -> dict[str, CentralityResult]:
    """All three measures from a single Brandes pass."""
    betweenness, closeness = _brandes(g)
    return {
        "degree": degree_centrality(g),
        "closeness": CentralityResult("closeness", closeness, g.theta),
        "betweenness": CentralityResult("betweenness", betweenness, g.theta),
    }
