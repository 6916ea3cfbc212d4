"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--sizes 108 250 500] [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from cocirank import _kernels_py

try:
    from cocirank import _kernels
except ImportError:
    _kernels = None


def power_inputs(rng, n):
    A = rng.integers(0, 20, size=(n, n)).astype(float)
    A = A + A.T
    np.fill_diagonal(A, 0)
    T = A / A.sum(axis=0)
    w = np.full(n, 1.0 / n)
    return (T, w, w.copy(), 0.85, 1e-12, 10_000)


def cocitation_inputs(rng, n, papers=5000):
    indptr, indices, counts = [0], [], []
    for _ in range(papers):
        refs = rng.choice(n, size=int(rng.integers(1, 30)), replace=False)
        indices.extend(refs)
        counts.extend(rng.integers(1, 3, size=refs.size))
        indptr.append(len(indices))
    return (np.array(indptr, np.int64), np.array(indices, np.int64), np.array(counts, np.int64), n, False)


def brandes_inputs(rng, n, p=0.1):
    adj = np.triu(rng.random((n, n)) < p, 1)
    adj = adj | adj.T
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(adj.sum(axis=1))
    indices = np.concatenate([np.flatnonzero(r) for r in adj]).astype(np.int64)
    return (indptr, indices, n)


KERNELS = {
    "power_iteration": power_inputs,
    "cocitation_counts": cocitation_inputs,
    "brandes": brandes_inputs,
}


def best_of(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[108, 250, 500])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = {"python": _kernels_py}
    if _kernels is not None:
        backends["cython"] = _kernels
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18} {'n':>5} " + " ".join(f"{b + ' (s)':>12}" for b in backends) + f" {'speedup':>8}")
    for name, make in KERNELS.items():
        for n in args.sizes:
            inputs = make(rng, n)
            times = {b: best_of(getattr(m, name), inputs, args.repeat) for b, m in backends.items()}
            speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{name:<18} {n:>5} " + " ".join(f"{t:>12.5f}" for t in times.values()) + f" {speedup:>8.1f}")


if __name__ == "__main__":
    main()
