#!/usr/bin/env python3
"""Benchmark the scoring kernels: numba fast path vs pure-numpy fallback.

Builds a synthetic corpus large enough for the loops to dominate, runs
both backends on identical inputs, and prints a timing table. JIT warmup
runs outside the timed region.

    python3 benchmarks/bench_kernels.py [--docs 50000] [--dim 256] [--repeat 5]
"""

import argparse
import time

import numpy as np

from aqgr.kernels import _load


def bench(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def make_bm25_inputs(rng, n_docs: int, n_terms: int):
    doc_norms = rng.uniform(0.5, 2.5, n_docs)
    rows, tfs, offsets = [], [], [0]
    for _ in range(n_terms):
        count = int(rng.integers(n_docs // 20, n_docs // 4))
        chosen = rng.choice(n_docs, size=count, replace=False)
        rows.append(chosen.astype(np.int64))
        tfs.append(rng.integers(1, 12, count).astype(np.float64))
        offsets.append(offsets[-1] + count)
    idfs = rng.uniform(0.05, 3.0, n_terms)
    return (n_docs, doc_norms, np.concatenate(rows), np.concatenate(tfs),
            np.array(offsets, dtype=np.int64), idfs, 1.2)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=50_000)
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--terms", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    bm25_args = make_bm25_inputs(rng, args.docs, args.terms)
    mat = rng.standard_normal((args.docs, args.dim)).astype(np.float32)
    query = rng.standard_normal(args.dim).astype(np.float64)

    backends = {}
    backends["numpy"], _ = _load("numpy")
    try:
        backends["numba"], _ = _load("numba")
    except RuntimeError as exc:
        print(f"numba backend unavailable: {exc}")

    results = {}
    for name, backend in backends.items():
        backend.bm25_scores(*make_bm25_inputs(rng, 64, 2))  # warmup / JIT
        backend.dense_scores(mat[:8], query)
        results[name] = {
            "bm25": bench(backend.bm25_scores, bm25_args, args.repeat),
            "dense": bench(backend.dense_scores, (mat, query), args.repeat),
        }

    ref = {k: backends["numpy"].bm25_scores(*bm25_args) for k in ("check",)}["check"]
    for name, backend in backends.items():
        got = backend.bm25_scores(*bm25_args)
        assert np.allclose(got, ref, atol=1e-10), f"{name} disagrees with numpy"

    print(f"\ncorpus: {args.docs} docs, {args.terms} query terms, dim {args.dim}; "
          f"best of {args.repeat}")
    print(f"{'kernel':<10} {'backend':<8} {'seconds':>10}")
    for kernel in ("bm25", "dense"):
        for name in results:
            print(f"{kernel:<10} {name:<8} {results[name][kernel]:>10.5f}")
    if "numba" in results:
        for kernel in ("bm25", "dense"):
            speedup = results["numpy"][kernel] / results["numba"][kernel]
            print(f"{kernel}: numba is {speedup:.1f}x the numpy fallback")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
