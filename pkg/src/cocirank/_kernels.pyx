# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` one-for-one."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs
from scipy.linalg.cython_blas cimport dgemv

cnp.import_array()


def power_iteration(T, w, x0, double d, double tol, Py_ssize_t max_iter):
    cdef const double[:, ::1] Tm = np.ascontiguousarray(T, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = Tm.shape[0]
    x_arr = np.array(x0, dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    res_arr = np.empty(max_iter, dtype=np.float64)
    mass_arr = np.empty(max_iter, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double[::1] res = res_arr
    cdef double[::1] mass = mass_arr
    cdef double[::1] tmp
    cdef double one_minus_d = 1.0 - d
    cdef double r, m
    cdef double zero = 0.0
    cdef int nn = <int>n, inc = 1
    cdef char trans = b"T"
    cdef Py_ssize_t i, k
    for k in range(max_iter):
        r = 0.0
        m = 0.0
        # row-major T is its own transpose in BLAS column-major terms
        if n > 0:
            dgemv(&trans, &nn, &nn, &d, <double*>&Tm[0, 0], &nn, &x[0], &inc, &zero, &y[0], &inc)
        for i in range(n):
            y[i] = y[i] + one_minus_d * wv[i]
            r += fabs(y[i] - x[i])
            m += y[i]
        res[k] = r
        mass[k] = m
        tmp = x
        x = y
        y = tmp
        x_arr, y_arr = y_arr, x_arr
        if r < tol:
            return x_arr, k + 1, res_arr[: k + 1].copy(), mass_arr[: k + 1].copy(), True
    return x_arr, max_iter, res_arr, mass_arr, False


def cocitation_counts(indptr, indices, counts, Py_ssize_t n, bint multiplicity):
    cdef const cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const cnp.int64_t[::1] cnt = np.ascontiguousarray(counts, dtype=np.int64)
    A_arr = np.zeros((n, n), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] A = A_arr
    cdef Py_ssize_t p, a, b, lo, hi, j, k
    cdef cnp.int64_t cj, v
    for p in range(ptr.shape[0] - 1):
        lo = ptr[p]
        hi = ptr[p + 1]
        for a in range(lo, hi):
            j = idx[a]
            cj = cnt[a] if multiplicity else 1
            A[j, j] += cj
            for b in range(a + 1, hi):
                k = idx[b]
                v = cj * cnt[b] if multiplicity else 1
                A[j, k] += v
                A[k, j] += v
    return A_arr


def brandes(indptr, indices, Py_ssize_t n):
    cdef const cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    bc_arr = np.zeros(n, dtype=np.float64)
    cl_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] bc = bc_arr
    cdef double[::1] cl = cl_arr
    cdef cnp.int64_t[::1] dist = np.empty(n, dtype=np.int64)
    cdef double[::1] sigma = np.empty(n, dtype=np.float64)
    cdef double[::1] delta = np.empty(n, dtype=np.float64)
    cdef cnp.int64_t[::1] order = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t s, v, u, e, head, tail, t
    cdef double h
    for s in range(n):
        for v in range(n):
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        # BFS; `order` doubles as the queue and the visit stack
        while head < tail:
            v = order[head]
            head += 1
            for e in range(ptr[v], ptr[v + 1]):
                u = idx[e]
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    order[tail] = u
                    tail += 1
                if dist[u] == dist[v] + 1:
                    sigma[u] += sigma[v]
        h = 0.0
        for t in range(1, tail):
            h += 1.0 / dist[order[t]]
        cl[s] = h
        # predecessors of v are neighbours one step closer to s
        for t in range(tail - 1, -1, -1):
            v = order[t]
            for e in range(ptr[v], ptr[v + 1]):
                u = idx[e]
                if dist[u] == dist[v] - 1:
                    delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
            if v != s:
                bc[v] += delta[v]
    for v in range(n):
        bc[v] /= 2.0
    return bc_arr, cl_arr
