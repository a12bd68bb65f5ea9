"""Shared segment-tree plumbing for the two stabbing structures.

Segments with integer endpoints [l, r] in a dense universe [0, U) are stored
on the canonical nodes of an implicit segment tree over U unit slabs
[p, p+1).  A node's list holds its segments sorted by (weight, y, id); both
query structures are built on top of these lists.
"""

from __future__ import annotations

import numpy as np

from rangecoo import kernels


def pow2_at_least(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


class SlabLists:
    """Canonical node lists of a segment tree over unit slabs.

    Nodes use heap numbering 1..2*size-1 with ``size`` a power of two; leaves
    size..2*size-1 own slabs 0..size-1.  Per node v, the slice
    off[v]:off[v+1] of the concatenated arrays holds v's segments sorted by
    (weight, y, segment id).
    """

    def __init__(self, l, r, y, w, universe: int | None = None):
        l = np.asarray(l, dtype=np.int64)
        r = np.asarray(r, dtype=np.int64)
        self.y = np.asarray(y, dtype=np.int64)
        self.w = np.asarray(w, dtype=np.int64)
        self.n_segments = len(l)
        if universe is None:
            universe = int(r.max()) + 1 if len(r) else 1
        self.universe = universe
        self.size = pow2_at_least(max(1, universe))
        self.levels = self.size.bit_length() - 1
        if self.n_segments:
            if l.min() < 0 or (r >= universe).any() or (l > r).any():
                raise ValueError("segment endpoints must satisfy 0 <= l <= r < universe")
            nodes, segs = kernels.segtree_assign(
                l.astype(np.int32), r.astype(np.int32), self.size
            )
            order = np.lexsort((segs, self.y[segs], self.w[segs], nodes))
            self.node_of = nodes[order]
            self.seg_of = segs[order].astype(np.int64)
        else:
            self.node_of = np.empty(0, dtype=np.int64)
            self.seg_of = np.empty(0, dtype=np.int64)
        counts = np.bincount(self.node_of, minlength=2 * self.size)
        self.off = np.zeros(2 * self.size + 1, dtype=np.int64)
        np.cumsum(counts, out=self.off[1:])
        self.lw = self.w[self.seg_of]
        self.ly = self.y[self.seg_of]

    def search_path(self, x: int) -> list[int]:
        """Root-to-leaf node ids whose slabs contain x."""
        leaf = self.size + x
        return [leaf >> s for s in range(self.levels, -1, -1)]

    def node_slice(self, v: int) -> tuple[int, int]:
        return int(self.off[v]), int(self.off[v + 1])

    def stabbed_via_tree(self, x: int) -> list[int]:
        """Segment ids stabbed by x, collected from the search path (tests)."""
        if x < 0 or x >= self.universe:
            return []
        out: list[int] = []
        for v in self.search_path(x):
            s, e = self.node_slice(v)
            out.extend(self.seg_of[s:e].tolist())
        return out
