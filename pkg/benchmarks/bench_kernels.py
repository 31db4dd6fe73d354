"""Time each GF(2) kernel under the numba and numpy backends and check they agree.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from tbcode.kernels import _numba, _numpy
from tbcode.peeters import _labels


def _cases(rng):
    k = 6
    labels = _labels(k)
    u = np.array([p[0] for p in labels], dtype=np.uint64)
    v = np.array([p[1] for p in labels], dtype=np.uint64)
    words = rng.integers(0, 2**63, size=(400, 7), dtype=np.uint64)
    a = rng.integers(0, 2**63, size=(200, 4), dtype=np.uint64)
    b = rng.integers(0, 2**63, size=(256, 4), dtype=np.uint64)
    stack = rng.integers(0, 2**63, size=(2000, 9, 1), dtype=np.uint64)
    base = np.array([1 << i for i in range(8)], dtype=np.uint64)
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, (i + 3) % 8) for i in range(0, 8, 2)]
    fr = np.array([i for i, _ in edges], dtype=np.int64)
    fc = np.array([j for _, j in edges], dtype=np.int64)
    W = np.arange(2**k, dtype=np.uint64)
    return {
        "label_adjacency(k=6)": ("label_adjacency", (u, v)),
        "rref(400x448)": ("rref", (words, 448)),
        "matmul(200x256x256)": ("matmul", (a, 256, b)),
        "last_row_in_span(2000x9)": ("last_row_in_span", (stack,)),
        "min_rank_completion(12 free)": ("min_rank_completion", (base, fr, fc, 0)),
        "count_odd_pairs(64x64)": ("count_odd_pairs", (W, W)),
    }


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(p, q) for p, q in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cases = _cases(np.random.default_rng(args.seed))
    print(f"{'kernel':32s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  agree")
    for label, (name, fargs) in cases.items():
        getattr(_numba, name)(*fargs)  # compile outside the timing
        tn, on = _time(getattr(_numba, name), fargs, args.repeat)
        tp, op = _time(getattr(_numpy, name), fargs, args.repeat)
        print(f"{label:32s} {tn * 1e3:10.3f} {tp * 1e3:10.3f} {tp / tn:8.1f}x  {_same(on, op)}")


if __name__ == "__main__":
    main()
