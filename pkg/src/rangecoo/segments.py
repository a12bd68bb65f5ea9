"""Horizontal segments encoding consecutive-occurrence liveness on heavy paths.

A pair of adjacent pattern occurrences (i, j) is "live" at a suffix-tree node
v when i and j are neighbours in the sorted leaf list of v's subtree.  On any
heavy path the live nodes of a pair form one contiguous run of depths
[l, r]; each run becomes a horizontal segment [l, r] x (j - i) carrying
weight i.  The extraction sweeps every path top-down, deleting leaves from a
doubly linked list at the depth where they branch off and emitting segments
for deleted adjacencies.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from rangecoo import kernels
from rangecoo.text_index import HeavyPathDecomp, SuffixTree, compute_leaf_pointers


class ConsOcc(NamedTuple):
    """A consecutive occurrence: adjacent pattern starts i < j, dist = j - i."""

    i: int
    j: int
    dist: int


def make_pair(i: int, j: int) -> ConsOcc:
    return ConsOcc(i, j, j - i)


class HSegment(NamedTuple):
    """Horizontal segment [l, r] x y with weight w(s) = pair start i."""

    l: int
    r: int
    y: int
    weight: int
    pair: Optional[ConsOcc] = None


class LeafLists:
    """Sorted subtree leaf lists per heavy path (the extraction work lists)."""

    def __init__(self, tree: SuffixTree, hld: HeavyPathDecomp):
        if hld.inc_label is None:
            compute_leaf_pointers(tree, hld)
        self.tree = tree
        self.hld = hld

    def labels(self, p: int) -> np.ndarray:
        off = self.hld.inc_off
        return self.hld.inc_label[off[p] : off[p + 1]]

    def initial_adjacencies(self, p: int) -> list[ConsOcc]:
        """Adjacent label pairs of the initial list (creation depth 0)."""
        lab = self.labels(p).tolist()
        return [make_pair(x, y) for x, y in zip(lab, lab[1:])]


def build_sorted_leaf_lists(tree: SuffixTree, hld: HeavyPathDecomp) -> LeafLists:
    return LeafLists(tree, hld)


class SegmentSet:
    """All extracted segments, as flat arrays grouped by heavy path.

    Segments whose whole range is the root node itself (l = r = 0 on the
    root's path) are kept but flagged: no nonempty pattern has its locus at
    the root, so the query structures skip them, while the closed-substring
    representation still needs them as the tops of paths that start at the
    root.
    """

    def __init__(self, hld, path, l, r, y, i, j):
        self.hld = hld
        self.path = path
        self.l = l
        self.r = r
        self.y = y
        self.i = i
        self.j = j
        counts = np.bincount(path, minlength=hld.num_paths)
        self.off = np.zeros(hld.num_paths + 1, dtype=np.int64)
        np.cumsum(counts, out=self.off[1:])
        self.root_path = hld.root_path()
        root_slice = slice(self.off[self.root_path], self.off[self.root_path + 1])
        self._root_only = np.zeros(len(path), dtype=bool)
        self._root_only[root_slice] = (l[root_slice] == 0) & (r[root_slice] == 0)

    def __len__(self) -> int:
        return int(len(self.path) - self._root_only.sum())

    @property
    def total_with_root_only(self) -> int:
        return len(self.path)

    def arrays_for_path(self, p: int, include_root_only: bool = False):
        """(l, r, y, i, j) views for one path, optionally with root-only rows."""
        s, e = int(self.off[p]), int(self.off[p + 1])
        sl = slice(s, e)
        if include_root_only or p != self.root_path:
            return self.l[sl], self.r[sl], self.y[sl], self.i[sl], self.j[sl]
        keep = ~self._root_only[sl]
        return (
            self.l[sl][keep],
            self.r[sl][keep],
            self.y[sl][keep],
            self.i[sl][keep],
            self.j[sl][keep],
        )

    def for_path(self, p: int, include_root_only: bool = False) -> list[HSegment]:
        l, r, y, i, j = self.arrays_for_path(p, include_root_only)
        return [
            HSegment(int(a), int(b), int(c), int(w), make_pair(int(w), int(jj)))
            for a, b, c, w, jj in zip(l, r, y, i, j)
        ]

    def as_path_map(self) -> dict[int, list[HSegment]]:
        out: dict[int, list[HSegment]] = {}
        for p in range(self.hld.num_paths):
            segs = self.for_path(p)
            if segs:
                out[p] = segs
        return out


def extract_segments(
    tree: SuffixTree, hld: HeavyPathDecomp, batch_perm=None
) -> SegmentSet:
    """Compute the segment set of every heavy path in one sweep.

    ``batch_perm`` is forwarded to the pure kernel's deletion-order test hook
    and must be None when the compiled kernel is active.
    """
    if hld.inc_label is None:
        compute_leaf_pointers(tree, hld)
    sentinel = tree.n + 1
    if batch_perm is None:
        out = kernels.extract_segments(
            hld.inc_label, hld.inc_del, hld.inc_off, hld.path_len, sentinel
        )
    else:
        from rangecoo import _kernels_py

        out = _kernels_py.extract_segments(
            hld.inc_label,
            hld.inc_del,
            hld.inc_off,
            hld.path_len,
            sentinel,
            batch_perm=batch_perm,
        )
    return SegmentSet(hld, *out)


def total_segment_count(segs: SegmentSet) -> int:
    """Number of query-relevant segments (root-only rows excluded)."""
    return len(segs)
