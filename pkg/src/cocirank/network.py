"""Co-citation network, its column-stochastic transition matrix, and the
unweighted graph used for centralities."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CoCitationNetwork:
    """Symmetric nonnegative co-citation counts over an ordered author list."""

    authors: tuple[str, ...]
    A: np.ndarray

    def __post_init__(self):
        A = _frozen(self.A, np.int64)
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "A", A)
        n = len(self.authors)
        if A.shape != (n, n):
            raise ValueError(f"matrix shape {A.shape} does not match {n} authors")
        if len(set(self.authors)) != n:
            raise ValueError("duplicate author ids")
        if (A < 0).any():
            raise ValueError("co-citation counts must be nonnegative")
        if not np.array_equal(A, A.T):
            raise ValueError("co-citation matrix must be symmetric")

    @property
    def n(self) -> int:
        return len(self.authors)

    def index(self, author: str) -> int:
        return self.authors.index(author)


@dataclass(frozen=True, eq=False)
class MarkovMatrix:
    """Column-stochastic matrix; ``dangling`` lists columns that were patched."""

    T: np.ndarray
    dangling: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "T", _frozen(self.T, np.float64))
        object.__setattr__(self, "dangling", frozenset(self.dangling))

    @property
    def n(self) -> int:
        return self.T.shape[0]


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Undirected loop-free graph stored as a boolean adjacency matrix."""

    adjacency: np.ndarray
    theta: int = 1

    def __post_init__(self):
        adj = _frozen(self.adjacency, bool)
        object.__setattr__(self, "adjacency", adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(adj, adj.T) or adj.diagonal().any():
            raise ValueError("adjacency must be symmetric with no self-loops")

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Neighbour lists as ``(indptr, indices)``, neighbours ascending."""
        rows, cols = np.nonzero(self.adjacency)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.n), out=indptr[1:])
        return indptr, cols.astype(np.int64)

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        adj = np.zeros((n, n), dtype=bool)
        for j, k in edges:
            adj[j, k] = adj[k, j] = True
        return cls(adj)


class DanglingNodeError(ValueError):
    pass


def apply_diagonal_policy(net: CoCitationNetwork, policy: str = "zero") -> CoCitationNetwork:
    if policy == "keep":
        return net
    if policy != "zero":
        raise ValueError(f"unknown diagonal policy {policy!r}")
    A = net.A.copy()
    np.fill_diagonal(A, 0)
    return CoCitationNetwork(net.authors, A)


def normalize_columns(net: CoCitationNetwork, dangling_policy: str = "uniform") -> MarkovMatrix:
    """Scale each column of the count matrix to sum to one.

    A zero column either becomes the uniform column ``1/n`` or raises
    :class:`DanglingNodeError`.
    """
    if dangling_policy not in ("uniform", "error"):
        raise ValueError(f"unknown dangling policy {dangling_policy!r}")
    A = net.A.astype(np.float64)
    colsum = A.sum(axis=0)
    dangling = np.flatnonzero(colsum == 0)
    if dangling.size and dangling_policy == "error":
        names = ", ".join(net.authors[i] for i in dangling)
        raise DanglingNodeError(f"zero column for {names}")
    T = np.divide(A, colsum, out=np.zeros_like(A), where=colsum > 0)
    T[:, dangling] = 1.0 / net.n
    return MarkovMatrix(T, frozenset(int(i) for i in dangling))


def to_simple_graph(net: CoCitationNetwork, theta: int = 1) -> SimpleGraph:
    if theta < 1:
        raise ValueError("theta must be >= 1")
    adj = net.A >= theta
    np.fill_diagonal(adj, False)
    return SimpleGraph(adj, theta)


def dump_matrix(net: CoCitationNetwork, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["", *net.authors])
    for author, row in zip(net.authors, net.A):
        writer.writerow([author, *(int(v) for v in row)])


def load_matrix(stream: TextIO) -> CoCitationNetwork:
    rows = list(csv.reader(stream))
    authors = rows[0][1:]
    if [r[0] for r in rows[1:]] != authors:
        raise ValueError("row labels must match column labels")
    return CoCitationNetwork(tuple(authors), np.array([[int(v) for v in r[1:]] for r in rows[1:]]))
