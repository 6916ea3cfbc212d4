"""h-index, rankings and Spearman rank correlation with one-tailed tests."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats as sstats


def h_index(per_paper_citations: Iterable[int]) -> int:
    """Largest ``h`` with at least ``h`` papers cited ``h`` or more times."""
    h = 0
    for i, c in enumerate(sorted(per_paper_citations, reverse=True), start=1):
        if c < i:
            break
        h = i
    return h


@dataclass(frozen=True, eq=False)
class Ranking:
    """Average ranks (1 = best); tied scores share the mean position."""

    ranks: np.ndarray
    source: str = ""
    higher_is_better: bool = True

    @property
    def n(self) -> int:
        return self.ranks.size


def ranks_from_scores(scores, higher_is_better: bool = True, source: str = "") -> Ranking:
    s = np.asarray(scores, dtype=np.float64)
    if s.ndim != 1:
        raise ValueError("scores must be 1-d")
    if np.isnan(s).any():
        raise ValueError(f"NaN score in {source or 'ranking'}")
    if not np.isfinite(s).all():
        raise ValueError(f"non-finite score in {source or 'ranking'}")
    ranks = sstats.rankdata(-s if higher_is_better else s, method="average")
    ranks.setflags(write=False)
    return Ranking(ranks, source, higher_is_better)


@dataclass(frozen=True)
class CorrelationReport:
    r: float
    n: int
    significant_01: bool
    significant_05: bool
    p_value: float

    @property
    def mark(self) -> str:
        """``''`` at 0.01, ``'*'`` at 0.05 only, ``"'"`` when not significant."""
        if self.significant_01:
            return ""
        return "*" if self.significant_05 else "'"


def _check_pair(ra: Ranking, rb: Ranking):
    if ra.n != rb.n:
        raise ValueError(f"ranking lengths differ: {ra.n} vs {rb.n}")
    if ra.n < 3:
        raise ValueError("need at least 3 ranked items")
    for r in (ra, rb):
        if np.all(r.ranks == r.ranks[0]):
            raise ValueError(f"degenerate ranking {r.source!r}: zero variance")


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    da = a - a.mean()
    db = b - b.mean()
    r = float(np.dot(da, db) / math.sqrt(np.dot(da, da) * np.dot(db, db)))
    return max(-1.0, min(1.0, r))


def spearman(ra: Ranking, rb: Ranking) -> CorrelationReport:
    """Pearson correlation of two rank vectors, one-tailed t test."""
    _check_pair(ra, rb)
    n = ra.n
    r = _pearson(ra.ranks, rb.ranks)
    if abs(r) >= 1.0:
        p = 0.0
    else:
        t = abs(r) * math.sqrt((n - 2) / (1.0 - r * r))
        p = float(sstats.t.sf(t, n - 2))
    return CorrelationReport(r, n, p < 0.01, p < 0.05, p)


def spearman_permutation(ra: Ranking, rb: Ranking, n_resamples: int = 10_000, seed: int = 42) -> CorrelationReport:
    """Same coefficient; one-tailed p from shuffling ``rb``."""
    _check_pair(ra, rb)
    r = _pearson(ra.ranks, rb.ranks)
    rng = np.random.default_rng(seed)
    a = ra.ranks - ra.ranks.mean()
    b = rb.ranks - rb.ranks.mean()
    norm = math.sqrt(np.dot(a, a) * np.dot(b, b))
    sign = 1.0 if r >= 0 else -1.0
    hits = 0
    for _ in range(n_resamples):
        if sign * np.dot(a, rng.permutation(b)) / norm >= abs(r) - 1e-12:
            hits += 1
    p = (hits + 1) / (n_resamples + 1)
    return CorrelationReport(r, ra.n, p < 0.01, p < 0.05, p)


def correlation_matrix(rankings: Sequence[Ranking], permutation: bool = False,
                       n_resamples: int = 10_000, seed: int = 42) -> list[list[CorrelationReport]]:
    """Pairwise reports; the diagonal is ``r = 1`` and the matrix symmetric."""
    k = len(rankings)
    if k == 0:
        return []
    n = rankings[0].n
    out: list[list[CorrelationReport | None]] = [[None] * k for _ in range(k)]
    for i in range(k):
        out[i][i] = CorrelationReport(1.0, n, True, True, 0.0)
        for j in range(i + 1, k):
            try:
                if permutation:
                    rep = spearman_permutation(rankings[i], rankings[j], n_resamples, seed)
                else:
                    rep = spearman(rankings[i], rankings[j])
            except ValueError as exc:
                raise ValueError(f"{rankings[i].source} vs {rankings[j].source}: {exc}") from exc
            out[i][j] = out[j][i] = rep
    return out


def mean_correlation(matrix, labels: Sequence[str], cells: Iterable[tuple[str, str]]) -> float:
    """Arithmetic mean of ``r`` over the named (row, column) cells."""
    pos = {label: i for i, label in enumerate(labels)}
    values = [matrix[pos[a]][pos[b]].r for a, b in cells]
    if not values:
        raise ValueError("no cells named")
    return float(np.mean(values))
