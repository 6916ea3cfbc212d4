"""Measure registry and CSV report writers.

Measure labels follow the layout of the usual comparison tables:
``PR(.15)`` plain PageRank, ``PR_c(.55)`` citation-weighted, ``PR_p(.85)``
publication-weighted, ``PR_w(.5)`` custom-weighted, then ``Degree``,
``Betweenness``, ``Closeness``, ``h-index`` and ``Citation``.
"""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .centrality import all_centralities
from .ingest import AuthorStats
from .network import CoCitationNetwork, apply_diagonal_policy, normalize_columns, to_simple_graph
from .pagerank import (DEFAULT_TOL, PRESETS, PageRankResult, TeleportVector, classify_trajectory,
                       make_teleport, power_iterate, steady_state_direct)
from .scores import Ranking, h_index, ranks_from_scores

WEIGHT_SUFFIX = {"": "uniform", "_c": "citations", "_p": "publications", "_w": "custom"}
KIND_SUFFIX = {v: k for k, v in WEIGHT_SUFFIX.items()}
STATIC_MEASURES = {"degree": "Degree", "betweenness": "Betweenness", "closeness": "Closeness",
                   "h-index": "h-index", "citation": "Citation"}
_PR_LABEL = re.compile(r"^PR(_[cpw])?\(\s*([0-9]*\.?[0-9]+)\s*\)$", re.IGNORECASE)


def format_d(d: float) -> str:
    """``0.15`` -> ``.15``; ``0`` -> ``0``."""
    text = f"{d:g}"
    return text[1:] if text.startswith("0.") else text


def pr_label(kind: str, d: float) -> str:
    return f"PR{KIND_SUFFIX[kind]}({format_d(d)})"


DEFAULT_SELECTION = tuple(
    [pr_label(kind, d) for kind in ("uniform", "citations", "publications") for d in PRESETS]
    + ["Degree", "Betweenness", "Closeness", "h-index", "Citation"]
)


def parse_measure(label: str) -> tuple[str, str | float]:
    """Return ``(kind, d)`` for PageRank labels or ``("static", name)``."""
    m = _PR_LABEL.match(label.strip())
    if m:
        kind = WEIGHT_SUFFIX[(m.group(1) or "").lower()]
        d = float(m.group(2))
        if not 0 <= d < 1:
            raise ValueError(f"damping factor out of range in {label!r}")
        return kind, d
    name = label.strip().lower()
    if name in STATIC_MEASURES:
        return "static", name
    valid = ", ".join(["PR(d)", "PR_c(d)", "PR_p(d)", "PR_w(d)", *STATIC_MEASURES.values()])
    raise ValueError(f"unknown measure {label!r}; valid labels: {valid}")


def fmt6(x: float) -> str:
    return f"{x:.6g}"


@dataclass
class Analysis:
    """Lazily computed measures over one co-citation network."""

    network: CoCitationNetwork
    stats: Mapping[str, AuthorStats] | None = None
    diagonal: str = "zero"
    dangling: str = "uniform"
    theta: int = 1
    tol: float = DEFAULT_TOL
    max_iter: int | None = None
    method: str = "power"
    custom_weights: Mapping[str, float] | None = None
    _pr_cache: dict = field(default_factory=dict, repr=False)

    @property
    def authors(self) -> tuple[str, ...]:
        return self.network.authors

    @cached_property
    def markov(self):
        return normalize_columns(apply_diagonal_policy(self.network, self.diagonal), self.dangling)

    @cached_property
    def graph(self):
        return to_simple_graph(self.network, self.theta)

    @cached_property
    def centralities(self):
        return all_centralities(self.graph)

    def _require_stats(self, what: str):
        if self.stats is None:
            raise ValueError(f"{what} needs per-author statistics (papers-csv input or --stats)")
        missing = [a for a in self.authors if a not in self.stats]
        if missing:
            raise ValueError(f"{what}: no statistics for {', '.join(missing[:5])}")

    def teleport(self, kind: str) -> TeleportVector:
        if kind in ("citations", "publications"):
            self._require_stats(f"{kind} weights")
            return make_teleport(kind, self.stats, authors=self.authors)
        if kind == "custom":
            if self.custom_weights is None:
                raise ValueError("custom weights were not supplied")
            missing = [a for a in self.authors if a not in self.custom_weights]
            if missing:
                raise ValueError(f"custom weights missing for {', '.join(missing[:5])}")
            return make_teleport("custom", weights=[self.custom_weights[a] for a in self.authors])
        return make_teleport(kind, n=self.network.n)

    def pagerank(self, kind: str, d: float, method: str | None = None) -> PageRankResult:
        method = method or ("direct" if self.method == "direct" else "power")
        key = (kind, d, method)
        if key not in self._pr_cache:
            w = self.teleport(kind)
            if method == "direct":
                self._pr_cache[key] = steady_state_direct(self.markov, d, w)
            else:
                self._pr_cache[key] = power_iterate(self.markov, d, w, self.tol, self.max_iter)
        return self._pr_cache[key]

    def citation_counts(self) -> np.ndarray:
        self._require_stats("Citation")
        return np.array([self.stats[a].citation_count for a in self.authors], dtype=np.float64)

    def scores(self, label: str) -> np.ndarray:
        kind, arg = parse_measure(label)
        if kind != "static":
            return self.pagerank(kind, arg).scores
        if arg in ("degree", "betweenness", "closeness"):
            return self.centralities[arg].values
        if arg == "citation":
            return self.citation_counts()
        self._require_stats("h-index")
        return np.array([h_index(self.stats[a].per_paper_citations) for a in self.authors], dtype=np.float64)

    def ranking(self, label: str) -> Ranking:
        return ranks_from_scores(self.scores(label), True, label)

    def citation_order(self) -> list[int]:
        """Node indices by citation count (desc), then author id; node order
        when no statistics are available."""
        if self.stats is None:
            return list(range(self.network.n))
        counts = self.citation_counts()
        return sorted(range(self.network.n), key=lambda i: (-counts[i], self.authors[i]))


def _writer(path: Path):
    f = open(path, "w", newline="", encoding="utf-8")
    return f, csv.writer(f, lineterminator="\n")


def pagerank_filename(kind: str, d: float, suffix: str = "") -> str:
    return f"pr_{kind}_d{d:g}{suffix}.csv"


def write_pagerank_csv(path: Path, authors: Sequence[str], result: PageRankResult) -> None:
    ranks = ranks_from_scores(result.scores).ranks
    f, w = _writer(path)
    with f:
        w.writerow(["author_id", "score", "rank"])
        for a, s, r in zip(authors, result.scores, ranks):
            w.writerow([a, repr(float(s)), f"{r:g}"])


def write_centrality_csv(path: Path, analysis: Analysis) -> None:
    c = analysis.centralities
    f, w = _writer(path)
    with f:
        w.writerow(["author_id", "degree", "closeness", "betweenness"])
        for i, a in enumerate(analysis.authors):
            w.writerow([a, int(c["degree"].values[i]), repr(float(c["closeness"].values[i])),
                        repr(float(c["betweenness"].values[i]))])


def rank_table(analysis: Analysis, kind: str, d_values: Sequence[float]) -> tuple[list[str], list[list[str]]]:
    """Rows of ranks per author, ordered by citation rank."""
    columns = [f"d={d:g}" for d in d_values]
    pr_ranks = [ranks_from_scores(analysis.pagerank(kind, d).scores).ranks for d in d_values]
    extra = ["Degree", "Betweenness", "Closeness"]
    if analysis.stats is not None:
        extra.insert(0, "Citation")
    extra_ranks = [analysis.ranking(label).ranks for label in extra]
    header = ["author_id", *columns, *extra, "trajectory"]
    rows = []
    for i in analysis.citation_order():
        traj = [r[i] for r in pr_ranks]
        label = classify_trajectory(traj) if len(traj) >= 2 else "n/a"
        rows.append([analysis.authors[i], *(fmt6(r[i]) for r in pr_ranks),
                     *(fmt6(r[i]) for r in extra_ranks), label])
    return header, rows


def write_rank_table(path: Path, analysis: Analysis, kind: str, d_values: Sequence[float]) -> None:
    header, rows = rank_table(analysis, kind, d_values)
    f, w = _writer(path)
    with f:
        w.writerow(header)
        w.writerows(rows)


def write_correlation_csv(path: Path, labels: Sequence[str], matrix) -> None:
    f, w = _writer(path)
    with f:
        w.writerow(["", *labels])
        for label, row in zip(labels, matrix):
            w.writerow([label, *(fmt6(rep.r) + rep.mark for rep in row)])


def scatter_rows(analysis: Analysis, x: str, y: str) -> list[tuple[str, float, float]]:
    rx = analysis.ranking(x).ranks
    ry = analysis.ranking(y).ranks
    order = sorted(range(len(rx)), key=lambda i: rx[i])
    return [(analysis.authors[i], float(rx[i]), float(ry[i])) for i in order]


def write_scatter_csv(path: Path, analysis: Analysis, x: str, y: str) -> None:
    f, w = _writer(path)
    with f:
        w.writerow(["author_id", "x_rank", "y_rank"])
        for a, rx, ry in scatter_rows(analysis, x, y):
            w.writerow([a, fmt6(rx), fmt6(ry)])
