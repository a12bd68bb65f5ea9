#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times each construction kernel and the end-to-end index build on random
binary texts.  Usage:

    python benchmarks/bench_kernels.py --exponents 14,16,18,20
"""

import argparse
import time

import numpy as np


def timed(fn, *args, repeat=1):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_kernels(n, pure, fast):
    from rangecoo.text_index import (
        build_suffix_tree,
        compute_leaf_pointers,
        decompose_heavy_paths,
        suffix_array,
    )

    gen = np.random.default_rng(1)
    text = bytes(97 + gen.integers(0, 2, size=n, dtype=np.uint8))
    codes = np.append(np.frombuffer(text, np.uint8).astype(np.int32) + 1, np.int32(0))
    sa = suffix_array(codes)

    rows = []
    t_pure, lcp = timed(pure.kasai_lcp, codes, sa)
    t_fast, _ = timed(fast.kasai_lcp, codes, sa) if fast else (float("nan"), None)
    rows.append(("kasai_lcp", t_pure, t_fast))

    t_pure, _ = timed(pure.suffix_tree_arrays, sa, lcp)
    t_fast, _ = timed(fast.suffix_tree_arrays, sa, lcp) if fast else (float("nan"), None)
    rows.append(("suffix_tree_arrays", t_pure, t_fast))

    tree = build_suffix_tree(text)
    hld = compute_leaf_pointers(tree, decompose_heavy_paths(tree))
    order = np.argsort(tree.str_depth, kind="stable").astype(np.int32)
    t_pure, _ = timed(pure.heavy_path_assign, tree.parent, hld.heavy_child, order)
    t_fast, _ = (
        timed(fast.heavy_path_assign, tree.parent, hld.heavy_child, order)
        if fast
        else (float("nan"), None)
    )
    rows.append(("heavy_path_assign", t_pure, t_fast))

    args = (hld.inc_label, hld.inc_del, hld.inc_off, hld.path_len, tree.n + 1)
    t_pure, _ = timed(pure.extract_segments, *args)
    t_fast, _ = timed(fast.extract_segments, *args) if fast else (float("nan"), None)
    rows.append(("extract_segments", t_pure, t_fast))

    seg = hld.inc_label  # reuse sizes for a same-scale assignment benchmark
    m = min(len(seg), 200_000)
    l = np.asarray(gen.integers(0, 32, size=m), np.int32)
    r = np.minimum(l + gen.integers(0, 16, size=m).astype(np.int32), 63)
    t_pure, _ = timed(pure.segtree_assign, l, r, 64)
    t_fast, _ = timed(fast.segtree_assign, l, r, 64) if fast else (float("nan"), None)
    rows.append((f"segtree_assign ({m} segs)", t_pure, t_fast))
    return rows, text


def bench_build(text):
    from rangecoo import build_index

    t0 = time.perf_counter()
    build_index(text)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument(
        "--exponents",
        default="14,16,18",
        help="comma-separated exponents e; texts have n = 2**e",
    )
    args = ap.parse_args()

    from rangecoo import _kernels_py as pure
    from rangecoo import kernels

    try:
        from rangecoo import _speedups as fast
    except ImportError:
        fast = None
        print("compiled extension not available; pure lane only\n")

    print(f"active lane in this process: {'compiled' if kernels.COMPILED else 'pure'}\n")
    for e in [int(x) for x in args.exponents.split(",")]:
        n = 1 << e
        print(f"n = 2**{e} = {n}")
        rows, text = bench_kernels(n, pure, fast)
        print(f"  {'kernel':<28} {'pure':>9} {'compiled':>9} {'speedup':>8}")
        for name, tp, tf in rows:
            speed = f"{tp / tf:6.1f}x" if tf == tf and tf > 0 else "    n/a"
            tfs = f"{tf * 1e3:7.1f}ms" if tf == tf else "    n/a"
            print(f"  {name:<28} {tp * 1e3:7.1f}ms {tfs} {speed}")
        print(f"  end-to-end build (active lane): {bench_build(text):.2f}s\n")


if __name__ == "__main__":
    main()
