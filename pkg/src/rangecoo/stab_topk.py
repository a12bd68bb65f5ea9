"""Top-k stabbing with a weight constraint over horizontal segments.

Query (x, [w1, w2], k): among segments with l <= x <= r and weight in
[w1, w2], report the k with smallest y, sorted by (y, weight).  Structure: a
segment tree whose node lists are weight-sorted; rank intervals for [w1, w2]
are located along the search path by fractional cascading (one binary search
at the root, O(1) bridge steps per node); per node, a sorted-range-selection
index over the y values feeds a doubling buffer scheme merged through one
binary min-heap.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from collections import deque

import numpy as np

from rangecoo._slabs import SlabLists
from rangecoo.segments import HSegment, make_pair
from rangecoo.srs import SortedRangeSelect

_FC_NUMPY_MIN = 512  # below this, plain lists beat numpy per-node
_MAX_BRIDGE_WALK = 16  # sampling every 4th item bounds the walk well under this


class _FCEntry:
    """Fractional-cascading node record: merged keys plus bridge pointers."""

    __slots__ = ("keys", "own_prefix", "down_left", "down_right")

    def __init__(self, keys, own_prefix, down_left, down_right):
        self.keys = keys
        self.own_prefix = own_prefix
        self.down_left = down_left
        self.down_right = down_right


class TopKStabber:
    """Immutable top-k stabbing structure; queries use private scratch only."""

    def __init__(self, l, r, y, w, pairs_i=None, pairs_j=None, universe=None,
                 use_fc: bool = True):
        self.slabs = SlabLists(l, r, y, w, universe)
        self.use_fc = use_fc
        self._l = np.asarray(l, dtype=np.int64)
        self._r = np.asarray(r, dtype=np.int64)
        self._pi = None if pairs_i is None else np.asarray(pairs_i, dtype=np.int64)
        self._pj = None if pairs_j is None else np.asarray(pairs_j, dtype=np.int64)
        self.srs = SortedRangeSelect(self.slabs.ly)
        self._fc = self._build_fc() if use_fc else {}

    @classmethod
    def from_segments(cls, segments: list[HSegment], use_fc: bool = True
                      ) -> "TopKStabber":
        l = [s.l for s in segments]
        r = [s.r for s in segments]
        y = [s.y for s in segments]
        w = [s.weight for s in segments]
        pi = [s.pair.i if s.pair else s.weight for s in segments]
        pj = [s.pair.j if s.pair else s.weight + s.y for s in segments]
        st = cls(l, r, y, w, pi, pj, use_fc=use_fc)
        st._originals = segments
        return st

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

    # -- fractional cascading ---------------------------------------------

    def _build_fc(self) -> dict:
        sl = self.slabs
        size = sl.size
        relevant = set()
        for v in np.unique(sl.node_of).tolist():
            while v >= 1 and v not in relevant:
                relevant.add(v)
                v >>= 1
        fc: dict[int, _FCEntry] = {}
        for v in sorted(relevant, reverse=True):
            s, e = sl.node_slice(v)
            own = sl.lw[s:e]
            left = fc.get(2 * v) if v < size else None
            right = fc.get(2 * v + 1) if v < size else None
            samp_l = left.keys[3::4] if left is not None else []
            samp_r = right.keys[3::4] if right is not None else []
            total = len(own) + len(samp_l) + len(samp_r)
            if total == 0:
                continue
            if total < _FC_NUMPY_MIN:
                fc[v] = self._fc_entry_small(own, samp_l, samp_r, left, right)
            else:
                fc[v] = self._fc_entry_bulk(own, samp_l, samp_r, left, right)
        return fc

    @staticmethod
    def _fc_entry_small(own, samp_l, samp_r, left, right) -> _FCEntry:
        tagged = [(int(k), 1) for k in own]
        tagged += [(int(k), 0) for k in samp_l]
        tagged += [(int(k), 0) for k in samp_r]
        tagged.sort()
        keys = [k for k, _ in tagged]
        own_prefix = [0]
        for _, flag in tagged:
            own_prefix.append(own_prefix[-1] + flag)
        lk = left.keys if left is not None else []
        rk = right.keys if right is not None else []
        down_left = [bisect_left(lk, k) for k in keys] + [len(lk)]
        down_right = [bisect_left(rk, k) for k in keys] + [len(rk)]
        return _FCEntry(keys, own_prefix, down_left, down_right)

    @staticmethod
    def _fc_entry_bulk(own, samp_l, samp_r, left, right) -> _FCEntry:
        own = np.asarray(own, dtype=np.int64)
        parts = [own]
        flags = [np.ones(len(own), dtype=np.int64)]
        for samp in (samp_l, samp_r):
            arr = np.asarray(samp, dtype=np.int64)
            parts.append(arr)
            flags.append(np.zeros(len(arr), dtype=np.int64))
        keys = np.concatenate(parts)
        flag = np.concatenate(flags)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        own_prefix = np.zeros(len(keys) + 1, dtype=np.int64)
        np.cumsum(flag[order], out=own_prefix[1:])
        downs = []
        for ent in (left, right):
            ck = np.asarray(ent.keys, dtype=np.int64) if ent is not None else np.empty(0, np.int64)
            d = np.empty(len(keys) + 1, dtype=np.int64)
            d[:-1] = np.searchsorted(ck, keys, side="left")
            d[-1] = len(ck)
            downs.append(d)
        return _FCEntry(keys, own_prefix, downs[0], downs[1])

    def _fc_locate(self, path: list[int], key: int) -> list[int]:
        """Lower-bound rank of key in each path node's weight list."""
        fc = self._fc
        ranks = []
        ent = fc.get(path[0])
        if ent is None:
            pos = 0
            ranks.append(0)
        else:
            pos = bisect_left(ent.keys, key)
            ranks.append(int(ent.own_prefix[pos]))
        for step in range(1, len(path)):
            child = path[step]
            cent = fc.get(child)
            if cent is None:
                ent, pos = None, 0
                ranks.append(0)
                continue
            ckeys = cent.keys
            if ent is None:
                s = len(ckeys)
            elif child & 1:
                s = int(ent.down_right[pos])
            else:
                s = int(ent.down_left[pos])
            walked = 0
            while s > 0 and ckeys[s - 1] >= key:
                s -= 1
                walked += 1
                assert walked <= _MAX_BRIDGE_WALK, "bridge walk exceeded sampling bound"
            ent, pos = cent, s
            ranks.append(int(cent.own_prefix[pos]))
        return ranks

    def _bisect_ranks(self, path: list[int], key: int) -> list[int]:
        lw = self.slabs.lw
        off = self.slabs.off
        out = []
        for v in path:
            s, e = int(off[v]), int(off[v + 1])
            out.append(bisect_left(lw, key, s, e) - s)
        return out

    def _rank_intervals(self, path, w1, w2, debug):
        if self.use_fc:
            lo = self._fc_locate(path, w1)
            hi = self._fc_locate(path, w2 + 1)
            if debug:
                assert lo == self._bisect_ranks(path, w1), "cascading ranks diverge"
                assert hi == self._bisect_ranks(path, w2 + 1), "cascading ranks diverge"
        else:
            lo = self._bisect_ranks(path, w1)
            hi = self._bisect_ranks(path, w2 + 1)
        out = []
        for v, a, b in zip(path, lo, hi):
            s, e = self.slabs.node_slice(v)
            if a < b:
                out.append((s + a, s + b - 1))
            else:
                out.append(None)
        return out

    # -- query ---------------------------------------------------------------

    def query_ids(self, x, w1, w2, k, debug=False, stats=None):
        """Ids of the top-k stabbed segments, sorted by (y, weight, id)."""
        if k <= 0 or w1 > w2 or x < 0 or x >= self.slabs.universe:
            if stats is not None:
                stats["fetched"] = 0
                stats["path_len"] = 0
            return []
        path = self.slabs.search_path(x)
        ranks = self._rank_intervals(path, w1, w2, debug)
        srs = self.srs
        lw = self.slabs.lw
        seg_of = self.slabs.seg_of
        heap = []
        bufs: list[deque | None] = [None] * len(path)
        exps = [0] * len(path)
        fetched = 0
        moved = [0] * len(path)
        for t, rng in enumerate(ranks):
            if rng is None:
                continue
            glo, ghi = rng
            yv, gp = srs._k_smallest0(glo, ghi, 1)[0]
            fetched += 1
            moved[t] = 1
            heapq.heappush(heap, (int(yv), int(lw[gp]), int(seg_of[gp]), t, gp))
        full = None
        if debug:
            full = {
                t: srs._k_smallest0(rng[0], rng[1], rng[1] - rng[0] + 1)
                for t, rng in enumerate(ranks)
                if rng is not None
            }
        out = []
        while heap and len(out) < k:
            yv, wv, sid, t, gp = heapq.heappop(heap)
            if debug:
                self._check_residue((yv, wv, sid), ranks, bufs, moved, full, lw, seg_of)
            out.append(sid)
            glo, ghi = ranks[t]
            b = bufs[t]
            if b:
                yv2, gp2 = b.popleft()
                moved[t] += 1
                heapq.heappush(
                    heap, (int(yv2), int(lw[gp2]), int(seg_of[gp2]), t, gp2)
                )
                continue
            span = ghi - glo + 1
            consumed = 1 << exps[t]
            if consumed >= span:
                continue  # node exhausted
            items = srs._k_smallest0(glo, ghi, min(span, consumed * 2))
            fetched += len(items)
            bufs[t] = deque(items[consumed:])
            exps[t] += 1
            yv2, gp2 = bufs[t].popleft()
            moved[t] += 1
            heapq.heappush(heap, (int(yv2), int(lw[gp2]), int(seg_of[gp2]), t, gp2))
        if stats is not None:
            stats["fetched"] = fetched
            stats["path_len"] = len(path)
        return out

    @staticmethod
    def _check_residue(popped, ranks, bufs, moved, full, lw, seg_of):
        # popped item must precede everything still buffered or unfetched
        for t, rng in enumerate(ranks):
            if rng is None:
                continue
            cands = []
            if bufs[t]:
                cands.append(bufs[t][0])
            rest = full[t]
            if moved[t] < len(rest):
                cands.append(rest[moved[t]])
            for yv, gp in cands:
                key = (int(yv), int(lw[gp]), int(seg_of[gp]))
                assert popped <= key, "reported item is not globally minimal"

    def query(self, x, w1, w2, k, debug=False, stats=None) -> list[HSegment]:
        ids = self.query_ids(x, w1, w2, k, debug=debug, stats=stats)
        return [self.segment(sid) for sid in ids]


def build_topk_stabber(segments: list[HSegment], use_fc: bool = True) -> TopKStabber:
    return TopKStabber.from_segments(segments, use_fc=use_fc)


def query_topk_stab(st: TopKStabber, x: int, w1: int, w2: int, k: int
                    ) -> list[HSegment]:
    return st.query(x, w1, w2, k)
