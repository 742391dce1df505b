"""Time the compiled kernels against their plain fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each kernel runs on the same random inputs through both paths; outputs are
checked for equality before timings are reported. The first numba call is
timed separately as compile/cache-load time.
"""

import argparse
import time

import numpy as np

from jeptrees import _accel


def _random_dfa(rng, n, k):
    delta = rng.integers(0, n, size=(n, k), dtype=np.int64)
    accept = rng.random(n) < 0.3
    return delta, accept


def case_triple_product(rng):
    k = 3
    autos = []
    for n in (40, 40, 40):
        delta, accept = _random_dfa(rng, n, k)
        accept[:] = False
        accept[n - 1] = True
        autos += [delta, 0, accept]
    return autos


def case_tarjan(rng):
    n, m = 20000, 60000
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return [indptr, dst.astype(np.int64)]


def case_subsequence(rng):
    rows, width = 300, 10
    codes = rng.integers(0, 2, size=(rows, width), dtype=np.int64)
    lens = rng.integers(0, width + 1, size=rows, dtype=np.int64)
    return [codes, lens, codes, lens]


def case_run_batch(rng):
    delta, _ = _random_dfa(rng, 50, 4)
    codes = rng.integers(0, 4, size=(50000, 20), dtype=np.int64)
    lens = rng.integers(0, 21, size=50000, dtype=np.int64)
    return [delta, 0, codes, lens]


KERNELS = [
    ("triple_product_search", case_triple_product),
    ("tarjan_scc", case_tarjan),
    ("subsequence_matrix", case_subsequence),
    ("dfa_run_batch", case_run_batch),
]


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba not importable; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':24} {'first call':>11} {'numba':>10} {'fallback':>10} {'speedup':>8}")
    for name, make in KERNELS:
        inputs = make(rng)
        fast = getattr(_accel, name + "_numba")
        slow = getattr(_accel, name + "_py")
        t0 = time.perf_counter()
        out_fast = fast(*inputs)
        first = time.perf_counter() - t0
        out_slow = slow(*inputs)
        if not _same(out_fast, out_slow):
            raise SystemExit(f"{name}: numba and fallback outputs differ")
        t_fast = _best(fast, inputs, args.repeat)
        t_slow = _best(slow, inputs, max(1, args.repeat // 2))
        print(f"{name:24} {first:10.3f}s {t_fast:9.5f}s {t_slow:9.4f}s {t_slow / t_fast:7.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
