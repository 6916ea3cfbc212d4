"""Pure-Python reference kernels.

Same signatures and semantics as the compiled ``_kernels`` extension. Used
when the extension is not built, or when ``COCIRANK_PURE=1`` is set.
"""
from collections import deque

import numpy as np


def power_iteration(T, w, x0, d, tol, max_iter):
    """Iterate ``x <- d*T@x + (1-d)*w`` from ``x0``.

    Returns ``(x, iterations, residuals, masses, converged)`` where
    ``residuals[k]`` is the L1 step difference of iteration ``k + 1`` and
    ``masses[k]`` the component sum of that iterate.
    """
    T = np.ascontiguousarray(T, dtype=np.float64)
    b = (1.0 - d) * np.asarray(w, dtype=np.float64)
    x = np.array(x0, dtype=np.float64)
    residuals = np.empty(max_iter, dtype=np.float64)
    masses = np.empty(max_iter, dtype=np.float64)
    for k in range(max_iter):
        x_new = d * (T @ x) + b
        residuals[k] = np.abs(x_new - x).sum()
        masses[k] = x_new.sum()
        x = x_new
        if residuals[k] < tol:
            return x, k + 1, residuals[: k + 1].copy(), masses[: k + 1].copy(), True
    return x, max_iter, residuals, masses, False


def cocitation_counts(indptr, indices, counts, n, multiplicity):
    """Accumulate co-citation counts from per-paper author index lists.

    Paper ``p`` cites authors ``indices[indptr[p]:indptr[p+1]]`` (distinct),
    each with reference multiplicity ``counts[...]``. Off-diagonal cells get
    1 per co-citing paper, or the product of multiplicities when
    ``multiplicity`` is true. The diagonal gets 1 per citing paper, or the
    reference count.
    """
    A = np.zeros((n, n), dtype=np.int64)
    for p in range(len(indptr) - 1):
        lo, hi = indptr[p], indptr[p + 1]
        for a in range(lo, hi):
            j = indices[a]
            cj = counts[a] if multiplicity else 1
            A[j, j] += cj
            for b in range(a + 1, hi):
                k = indices[b]
                v = cj * counts[b] if multiplicity else 1
                A[j, k] += v
                A[k, j] += v
    return A


def brandes(indptr, indices, n):
    """Unweighted Brandes pass over every source.

    Returns ``(betweenness, closeness)``: undirected betweenness counting
    each unordered pair once, and harmonic closeness (sum of reciprocal BFS
    distances to reachable nodes).
    """
    betweenness = np.zeros(n, dtype=np.float64)
    closeness = np.zeros(n, dtype=np.float64)
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1
        order = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
                if dist[u] == dist[v] + 1:
                    sigma[u] += sigma[v]
                    preds[u].append(v)
        h = 0.0
        for v in order[1:]:
            h += 1.0 / dist[v]
        closeness[s] = h
        delta = [0.0] * n
        for v in reversed(order):
            for u in preds[v]:
                delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
            if v != s:
                betweenness[v] += delta[v]
    return betweenness / 2.0, closeness
