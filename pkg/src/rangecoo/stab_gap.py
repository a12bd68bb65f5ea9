"""Height-bounded stabbing with a weight constraint over horizontal segments.

Query (x, [w1, w2], [y1, y2]): ALL segments with l <= x <= r, weight in
[w1, w2] and y in [y1, y2], sorted by (y, weight).  Same segment tree as the
top-k structure; per node the segments become points (weight, y) organised
as a merge tree over the weight order, each canonical block storing its
points y-sorted.  A query decomposes the weight range of every path node
into canonical blocks, opens a streaming cursor per block at the first
y >= y1, and merges all cursors through one min-heap, stopping each cursor
past y2.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left

import numpy as np

from rangecoo._slabs import SlabLists, pow2_at_least
from rangecoo.segments import HSegment, make_pair

_BULK_MIN = 2048  # node size above which levels are built with numpy sorts


class _MergeTree:
    """Static merge tree over one node's weight-sorted points.

    ``levels[h]`` holds the node's m items rearranged so that every aligned
    block of 2**h consecutive weight-rank positions is sorted by
    (y, weight, id); level 0 is the weight order itself.  Any rank interval
    decomposes into at most 2 canonical blocks per level.
    """

    __slots__ = ("m", "size", "levels")

    def __init__(self, ys, ws, sids):
        m = len(ys)
        self.m = m
        self.size = pow2_at_least(max(1, m))
        base = list(zip(ys, ws, sids))
        levels = [base]
        h = 1
        if m > _BULK_MIN:
            ya = np.asarray(ys, dtype=np.int64)
            wa = np.asarray(ws, dtype=np.int64)
            sa = np.asarray(sids, dtype=np.int64)
            idx = np.arange(m, dtype=np.int64)
            while (1 << h) <= m:
                order = np.lexsort((sa, wa, ya, idx >> h))
                levels.append(list(zip(ya[order].tolist(), wa[order].tolist(),
                                       sa[order].tolist())))
                h += 1
        else:
            while (1 << h) <= m:
                width = 1 << h
                half = width >> 1
                prev = levels[-1]
                cur = []
                for start in range(0, m, width):
                    a = prev[start : start + half]
                    b = prev[start + half : start + width]
                    cur.extend(_merge_sorted(a, b))
                levels.append(cur)
                h += 1
        self.levels = levels

    def canonical_blocks(self, lo: int, hi: int):
        """Decompose rank interval [lo, hi) into (level, start, end) blocks."""
        out = []
        a = lo + self.size
        b = hi + self.size
        h = 0
        while a < b:
            if a & 1:
                out.append((h, (a << h) - self.size))
                a += 1
            if b & 1:
                b -= 1
                out.append((h, (b << h) - self.size))
            a >>= 1
            b >>= 1
            h += 1
        return [(h, s, min(s + (1 << h), self.m)) for h, s in out]


def _merge_sorted(a, b):
    out = []
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        if a[ia] <= b[ib]:
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return out


class GapStabber:
    """Immutable gap-band stabbing structure; concurrent queries are safe."""

    def __init__(self, l, r, y, w, pairs_i=None, pairs_j=None, universe=None):
        self.slabs = SlabLists(l, r, y, w, universe)
        self._l = np.asarray(l, dtype=np.int64)
        self._r = np.asarray(r, dtype=np.int64)
        self._pi = None if pairs_i is None else np.asarray(pairs_i, dtype=np.int64)
        self._pj = None if pairs_j is None else np.asarray(pairs_j, dtype=np.int64)
        sl = self.slabs
        self._trees: dict[int, _MergeTree] = {}
        for v in np.unique(sl.node_of).tolist():
            s, e = sl.node_slice(v)
            self._trees[v] = _MergeTree(
                sl.ly[s:e].tolist(),
                sl.lw[s:e].tolist(),
                sl.seg_of[s:e].tolist(),
            )

    @classmethod
    def from_segments(cls, segments: list[HSegment]) -> "GapStabber":
        l = [s.l for s in segments]
        r = [s.r for s in segments]
        y = [s.y for s in segments]
        w = [s.weight for s in segments]
        pi = [s.pair.i if s.pair else s.weight for s in segments]
        pj = [s.pair.j if s.pair else s.weight + s.y for s in segments]
        gs = cls(l, r, y, w, pi, pj)
        gs._originals = segments
        return gs

    def segment(self, sid: int) -> HSegment:
        orig = getattr(self, "_originals", None)
        if orig is not None:
            return orig[sid]
        pair = None
        if self._pi is not None:
            pair = make_pair(int(self._pi[sid]), int(self._pj[sid]))
        return HSegment(
            int(self._l[sid]),
            int(self._r[sid]),
            int(self.slabs.y[sid]),
            int(self.slabs.w[sid]),
            pair,
        )

    def query_ids(self, x, w1, w2, y1, y2) -> list[int]:
        """Ids of all matching segments, sorted by (y, weight, id)."""
        if w1 > w2 or y1 > y2 or x < 0 or x >= self.slabs.universe:
            return []
        sl = self.slabs
        lw = sl.lw
        heap = []
        cursors = []  # per cursor: (level items, pos, end)
        for v in sl.search_path(x):
            tree = self._trees.get(v)
            if tree is None:
                continue
            s, e = sl.node_slice(v)
            lo = bisect_left(lw, w1, s, e) - s
            hi = bisect_left(lw, w2 + 1, s, e) - s
            if lo >= hi:
                continue
            for h, bs, be in tree.canonical_blocks(lo, hi):
                items = tree.levels[h]
                pos = _first_at_least(items, y1, bs, be)
                if pos < be and items[pos][0] <= y2:
                    cid = len(cursors)
                    cursors.append((items, pos, be))
                    heapq.heappush(heap, (*items[pos], cid))
        out = []
        while heap:
            yv, wv, sid, cid = heapq.heappop(heap)
            out.append(sid)
            items, pos, end = cursors[cid]
            pos += 1
            if pos < end and items[pos][0] <= y2:
                cursors[cid] = (items, pos, end)
                heapq.heappush(heap, (*items[pos], cid))
        return out

    def query(self, x, w1, w2, y1, y2) -> list[HSegment]:
        return [self.segment(sid) for sid in self.query_ids(x, w1, w2, y1, y2)]


def _first_at_least(items, y1, lo, hi):
    """First position in y-sorted items[lo:hi] with y >= y1."""
    while lo < hi:
        mid = (lo + hi) // 2
        if items[mid][0] < y1:
            lo = mid + 1
        else:
            hi = mid
    return lo


def build_gap_stabber(segments: list[HSegment]) -> GapStabber:
    return GapStabber.from_segments(segments)


def query_gap_stab(gs: GapStabber, x: int, w1: int, w2: int, y1: int, y2: int
                   ) -> list[HSegment]:
    return gs.query(x, w1, w2, y1, y2)
