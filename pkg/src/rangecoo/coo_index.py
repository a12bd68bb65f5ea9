"""Top-level index answering windowed consecutive-occurrence queries.

Composes the suffix tree, heavy-path decomposition, per-path segment sets
and the two stabbing structures.  A query (P, [a, b], ...) finds locus(P),
stabs that node's heavy path at x = d(locus) with weight range
[a, b - m + 1], and drops the at-most-one returned pair whose second
occurrence does not fit inside the window.

Conventions: text positions are 1-based, all ranges inclusive, results
sorted by (distance, first position).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from rangecoo import index_io
from rangecoo.segments import (
    ConsOcc,
    SegmentSet,
    extract_segments,
    make_pair,
    total_segment_count,
)
from rangecoo.stab_gap import GapStabber
from rangecoo.stab_topk import TopKStabber
from rangecoo.text_index import (
    SuffixTree,
    TextLike,
    as_text,
    compute_leaf_pointers,
    decompose_heavy_paths,
)


@dataclass(frozen=True)
class TopKQuery:
    pattern: bytes
    a: int
    b: int
    k: int


@dataclass(frozen=True)
class GapQuery:
    pattern: bytes
    a: int
    b: int
    g1: int
    g2: int


@dataclass(frozen=True)
class IndexStats:
    n: int
    nodes: int
    paths: int
    segments: int
    build_ms: float


class RangeCooIndex:
    """Immutable query index over one text.

    ``stabbers="lazy"`` (default) builds each heavy path's stabbing
    structures on first use; "eager" builds everything up front.  ``use_fc``
    switches the top-k rank location between fractional cascading and plain
    per-node binary search; ``debug`` cross-checks the two and validates
    report order on every query.
    """

    def __init__(self, text: TextLike, *, stabbers: str = "lazy",
                 use_fc: bool = True, debug: bool = False,
                 _raw_segments=None):
        if stabbers not in ("lazy", "eager"):
            raise ValueError("stabbers must be 'lazy' or 'eager'")
        t0 = time.perf_counter()
        self.tree = SuffixTree(text)
        self.n = self.tree.n
        self.hld = decompose_heavy_paths(self.tree)
        compute_leaf_pointers(self.tree, self.hld)
        if _raw_segments is None:
            self.segments = extract_segments(self.tree, self.hld)
        else:
            num_paths, *arrays = _raw_segments
            if num_paths != self.hld.num_paths:
                raise index_io.IndexFileError(
                    "stored segment groups do not match the text's path count"
                )
            self.segments = SegmentSet(self.hld, *arrays)
        self.use_fc = use_fc
        self.debug = debug
        self._topk_cache: dict[int, TopKStabber] = {}
        self._gap_cache: dict[int, GapStabber] = {}
        self._build_ms = (time.perf_counter() - t0) * 1000.0
        if stabbers == "eager":
            for p in range(self.hld.num_paths):
                self._topk_stabber(p)
                self._gap_stabber(p)

    # -- structure plumbing -------------------------------------------------

    def _topk_stabber(self, p: int) -> TopKStabber:
        st = self._topk_cache.get(p)
        if st is None:
            l, r, y, i, j = self.segments.arrays_for_path(p)
            universe = int(self.hld.path_len[p]) + 1
            st = TopKStabber(l, r, y, i, i, j, universe=universe, use_fc=self.use_fc)
            self._topk_cache[p] = st
        return st

    def _gap_stabber(self, p: int) -> GapStabber:
        gs = self._gap_cache.get(p)
        if gs is None:
            l, r, y, i, j = self.segments.arrays_for_path(p)
            universe = int(self.hld.path_len[p]) + 1
            gs = GapStabber(l, r, y, i, i, j, universe=universe)
            self._gap_cache[p] = gs
        return gs

    def _locate(self, pattern: bytes):
        """locus node, its path and stab depth; None when pattern is absent."""
        node = self.tree.locus(pattern)
        if node is None:
            return None
        p = int(self.hld.path_idx[node])
        return node, p, int(self.hld.d[node])

    @staticmethod
    def _check_window(a: int, b: int, n: int) -> None:
        if not 1 <= a <= b <= n:
            raise ValueError(f"malformed window [{a}, {b}] for text of length {n}")

    # -- queries --------------------------------------------------------------

    def query_topk(self, pattern: TextLike, a: int, b: int, k: int) -> list[ConsOcc]:
        """Top-k closest consecutive occurrences of pattern in T[a..b]."""
        pat = as_text(pattern)
        if len(pat) == 0:
            raise ValueError("pattern must be nonempty")
        self._check_window(a, b, self.n)
        if k < 0:
            raise ValueError("k must be >= 0")
        m = len(pat)
        if k == 0 or b - a + 1 < m:
            return []
        loc = self._locate(pat)
        if loc is None:
            return []
        _, p, x = loc
        w_hi = b - m + 1
        kk = min(k, self.n)
        st = self._topk_stabber(p)
        ids = st.query_ids(x, a, w_hi, kk + 1, debug=self.debug)
        return self._materialize(st, ids, w_hi, k)

    def query_gap(self, pattern: TextLike, a: int, b: int, g1: int, g2: int
                  ) -> list[ConsOcc]:
        """All consecutive occurrences in T[a..b] with distance in [g1, g2]."""
        pat = as_text(pattern)
        if len(pat) == 0:
            raise ValueError("pattern must be nonempty")
        self._check_window(a, b, self.n)
        if g1 > g2:
            return []
        m = len(pat)
        if b - a + 1 < m:
            return []
        loc = self._locate(pat)
        if loc is None:
            return []
        _, p, x = loc
        w_hi = b - m + 1
        gs = self._gap_stabber(p)
        ids = gs.query_ids(x, a, w_hi, g1, g2)
        return self._materialize(gs, ids, w_hi, None)

    def _materialize(self, stabber, ids, w_hi, k):
        out = []
        dropped = 0
        pi = stabber._pi
        pj = stabber._pj
        for sid in ids:
            j = int(pj[sid])
            if j > w_hi:
                dropped += 1
                continue
            out.append(make_pair(int(pi[sid]), j))
        if self.debug:
            assert dropped <= 1, "more than one pair escaped the window"
        return out if k is None else out[:k]

    # -- reporting ------------------------------------------------------------

    def stats(self) -> IndexStats:
        return IndexStats(
            n=self.n,
            nodes=int(self.tree.n_nodes),
            paths=int(self.hld.num_paths),
            segments=total_segment_count(self.segments),
            build_ms=self._build_ms,
        )

    # -- persistence ------------------------------------------------------------

    def save(self, path, with_segments: bool = False) -> None:
        index_io.write_index(
            path, self.tree.text, self.segments if with_segments else None
        )

    @classmethod
    def load(cls, path, **kwargs) -> "RangeCooIndex":
        """Rebuild an index from a file written by :meth:`save`.

        The file stores the text and optionally the extracted segments; the
        geometric structures are always rebuilt, so a loaded index answers
        every query exactly like a fresh one.
        """
        text, raw = index_io.read_index(path)
        return cls(text, _raw_segments=raw, **kwargs)


def build_index(text: TextLike, *, stabbers: str = "lazy", use_fc: bool = True,
                debug: bool = False) -> RangeCooIndex:
    return RangeCooIndex(text, stabbers=stabbers, use_fc=use_fc, debug=debug)


def query_topk(idx: RangeCooIndex, q: TopKQuery) -> list[ConsOcc]:
    return idx.query_topk(q.pattern, q.a, q.b, q.k)


def query_gap(idx: RangeCooIndex, q: GapQuery) -> list[ConsOcc]:
    return idx.query_gap(q.pattern, q.a, q.b, q.g1, q.g2)
