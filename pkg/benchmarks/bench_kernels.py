#!/usr/bin/env python3
"""Compare the compiled kernel backend against the numpy fallback.

Micro-benchmarks hit the raw kernel entry points; the end-to-end case runs
a full automatic fit with each backend patched in. Usage:

    python benchmarks/bench_kernels.py [--n 7] [--m 4000] [--steps 8]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import ordboost._kernels as kernels
from ordboost._kernels import _ref

try:
    from ordboost._kernels import _fast
except ImportError:
    _fast = None

from ordboost import fit_auto
from ordboost.core import Dataset, Permutation


def make_dataset(n: int, m: int, seed: int = 0) -> Dataset:
    rng = np.random.default_rng(seed)
    rows = [
        (Permutation(tuple(int(x) + 1 for x in rng.permutation(n))), float(y))
        for y in rng.uniform(-1, 1, size=m)
    ]
    return Dataset(n, rows)


def timeit(fn, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_micro(backend, name: str, pos, delta, cands, parent_words) -> dict[str, float]:
    out = {}
    out["eval_dense"] = timeit(lambda: backend.eval_candidates(pos, delta, cands))
    # the search's hot case: children scored inside a shrunken parent support
    out["eval_within"] = timeit(
        lambda: backend.eval_candidates(pos, delta, cands, parent_words)
    )
    out["support_words"] = timeit(
        lambda: [backend.support_words(pos, c) for c in cands[:64]]
    )
    words, _ = backend.support_words(pos, cands[0])
    out["masked_stats"] = timeit(
        lambda: [backend.masked_stats(words, delta) for _ in range(256)]
    )
    print(f"  {name:<5} " + "  ".join(f"{k}={v * 1e3:8.2f}ms" for k, v in out.items()))
    return out


def bench_fit(backend, ds: Dataset, steps: int) -> float:
    saved = (kernels.support_words, kernels.eval_candidates, kernels.masked_stats)
    kernels.support_words = backend.support_words
    kernels.eval_candidates = backend.eval_candidates
    kernels.masked_stats = backend.masked_stats
    try:
        return timeit(lambda: fit_auto(ds, steps, 0.5, max_len=3), repeats=3)
    finally:
        kernels.support_words, kernels.eval_candidates, kernels.masked_stats = saved


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--m", type=int, default=4000)
    ap.add_argument("--steps", type=int, default=8)
    args = ap.parse_args()

    ds = make_dataset(args.n, args.m)
    rng = np.random.default_rng(42)
    delta = rng.normal(size=args.m)
    pos = ds.positions()
    cands = np.stack(
        [rng.permutation(args.n)[:3] for _ in range(512)]
    ).astype(np.int32)

    # ~5% of rows survive as the parent support, as on deep search levels
    from ordboost._kernels.bits import pack_mask

    parent_words = pack_mask(rng.random(args.m) < 0.05)

    print(f"dataset: n={args.n}, m={args.m}; 512 candidates of length 3")
    results = {}
    if _fast is not None:
        results["fast"] = bench_micro(_fast, "fast", pos, delta, cands, parent_words)
    results["ref"] = bench_micro(_ref, "ref", pos, delta, cands, parent_words)
    if _fast is not None:
        for key in results["fast"]:
            ratio = results["ref"][key] / results["fast"][key]
            print(f"  speedup {key}: {ratio:.1f}x")

    print(f"\nfit_auto: {args.steps} steps, max_len=3")
    if _fast is not None:
        t_fast = bench_fit(_fast, ds, args.steps)
        print(f"  fast  {t_fast * 1e3:8.1f}ms")
    t_ref = bench_fit(_ref, ds, args.steps)
    print(f"  ref   {t_ref * 1e3:8.1f}ms")
    if _fast is not None:
        print(f"  speedup fit_auto: {t_ref / t_fast:.1f}x")


if __name__ == "__main__":
    main()
