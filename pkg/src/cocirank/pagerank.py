"""PageRank on a column-stochastic matrix with a uniform or weighted teleport.

The fixed point solves ``x = d*T@x + (1-d)*w``. It is reached either by power
iteration or by a dense LU solve of ``(I - d*T) x = (1-d)*w``; the two paths
check each other.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from . import kernels
from .network import MarkovMatrix

DEFAULT_TOL = 1e-10
DEFAULT_GRID = tuple(round(0.05 + 0.1 * i, 2) for i in range(10))
PRESETS = (0.15, 0.55, 0.85)
TELEPORT_KINDS = ("uniform", "citations", "publications", "custom")


class ConvergenceError(RuntimeError):
    """Power iteration hit ``max_iter`` first; carries the last iterate."""

    def __init__(self, message, scores=None, residual=None, d=None):
        super().__init__(message)
        self.scores = scores
        self.residual = residual
        self.d = d


@dataclass(frozen=True, eq=False)
class TeleportVector:
    w: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        w = np.array(self.w, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("teleport vector must be a nonempty 1-d array")
        if not np.isfinite(w).all() or (w < 0).any():
            raise ValueError("teleport weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"teleport weights sum to {w.sum()!r}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.size

    @classmethod
    def uniform(cls, n: int) -> "TeleportVector":
        return cls(np.full(n, 1.0 / n), "uniform")

    @classmethod
    def from_weights(cls, weights, kind: str = "custom") -> "TeleportVector":
        """Normalise raw nonnegative weights to a probability vector."""
        raw = np.asarray(weights, dtype=np.float64)
        if raw.ndim != 1 or raw.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if not np.isfinite(raw).all():
            raise ValueError("weights must be finite")
        if (raw < 0).any():
            raise ValueError("weights must be nonnegative")
        total = raw.sum()
        if total <= 0:
            raise ValueError(f"{kind} weights sum to zero; cannot normalise")
        return cls(raw / total, kind)


@dataclass(frozen=True, eq=False)
class PageRankResult:
    scores: np.ndarray
    d: float
    iterations: int | str
    residual: float
    method: str
    # per-iteration L1 step differences and iterate sums (power method only)
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    masses: np.ndarray = field(default_factory=lambda: np.empty(0))


def make_teleport(kind: str, stats: Mapping | None = None, n: int | None = None,
                  authors: Sequence[str] | None = None, weights=None) -> TeleportVector:
    """Build a teleport vector.

    ``citations`` and ``publications`` read ``citation_count`` and
    ``first_author_pub_count`` from ``stats`` for each of ``authors``;
    ``custom`` normalises ``weights``.
    """
    if kind == "uniform":
        if n is None:
            n = len(authors)
        if n < 1:
            raise ValueError("n must be >= 1")
        return TeleportVector.uniform(n)
    if kind in ("citations", "publications"):
        attr = "citation_count" if kind == "citations" else "first_author_pub_count"
        missing = [a for a in authors if a not in stats]
        if missing:
            raise ValueError(f"no statistics for {', '.join(missing[:5])}")
        return TeleportVector.from_weights([getattr(stats[a], attr) for a in authors], kind)
    if kind == "custom":
        return TeleportVector.from_weights(weights, "custom")
    raise ValueError(f"unknown teleport kind {kind!r}; expected one of {TELEPORT_KINDS}")


def default_max_iter(d: float, tol: float) -> int:
    if d <= 0:
        return 100
    return int(min(100_000, max(100, 10 * math.ceil(math.log(tol) / math.log(d)))))


def _check_d(d):
    if not 0 <= d < 1:
        raise ValueError(f"damping factor must lie in [0, 1), got {d}")


def power_iterate(T: MarkovMatrix, d: float, w: TeleportVector, tol: float = DEFAULT_TOL,
                  max_iter: int | None = None, x0=None) -> PageRankResult:
    """Iterate ``x <- d*T@x + (1-d)*w`` from ``x0`` (default ``w``) until the
    L1 step difference drops below ``tol``."""
    _check_d(d)
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if max_iter is None:
        max_iter = default_max_iter(d, tol)
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if T.n != w.n:
        raise ValueError(f"matrix has {T.n} nodes, teleport vector {w.n}")
    x0 = w.w if x0 is None else np.asarray(x0, dtype=np.float64)
    x, iters, residuals, masses, converged = kernels.power_iteration(T.T, w.w, x0, d, tol, max_iter)
    if not converged:
        raise ConvergenceError(
            f"no convergence at d={d} after {max_iter} iterations (residual {residuals[-1]:.3g})",
            scores=x, residual=float(residuals[-1]), d=d,
        )
    return PageRankResult(x, d, int(iters), float(residuals[-1]), "power", residuals, masses)


def steady_state_direct(T: MarkovMatrix, d: float, w: TeleportVector) -> PageRankResult:
    """Solve ``(I - d*T) x = (1-d)*w`` by partial-pivot LU."""
    _check_d(d)
    if T.n != w.n:
        raise ValueError(f"matrix has {T.n} nodes, teleport vector {w.n}")
    M = np.eye(T.n) - d * T.T
    rhs = (1.0 - d) * w.w
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            x = lu_solve(lu_factor(M), rhs)
        except LinAlgWarning as exc:
            raise np.linalg.LinAlgError(f"singular system at d={d}: {exc}") from exc
    if not np.isfinite(x).all():
        raise np.linalg.LinAlgError(f"singular system at d={d}")
    residual = float(np.abs(M @ x - rhs).sum())
    return PageRankResult(x, d, "direct", residual, "direct")


def damping_sweep(T: MarkovMatrix, w: TeleportVector, d_values=DEFAULT_GRID, tol: float = DEFAULT_TOL,
                  max_iter: int | None = None, method: str = "power") -> dict[float, PageRankResult]:
    """One solve per damping factor, keyed by ``d`` in input order."""
    results = {}
    for d in d_values:
        try:
            if method == "power":
                results[d] = power_iterate(T, d, w, tol, max_iter)
            elif method == "direct":
                results[d] = steady_state_direct(T, d, w)
            else:
                raise ValueError(f"unknown method {method!r}")
        except ConvergenceError as exc:
            exc.d = d
            raise
        except ValueError as exc:
            raise ValueError(f"d={d}: {exc}") from exc
    return results


def classify_trajectory(ranks_by_d: Sequence[float], slack: float = 2) -> str:
    """Label a rank trajectory (1 = best) across increasing ``d``.

    Compares the last rank with the first: a move of at most ``slack``
    positions is ``stable``, a smaller rank number is ``increase``, a
    larger one ``drop``.
    """
    if len(ranks_by_d) < 2:
        raise ValueError("need at least two ranks")
    delta = ranks_by_d[-1] - ranks_by_d[0]
    if abs(delta) <= slack:
        return "stable"
    return "increase" if delta < 0 else "drop"
