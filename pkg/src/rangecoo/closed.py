"""Implicit representation of all closed substrings of a text.

A string is closed when it has length one or its longest border occurs in it
exactly twice (as prefix and as suffix).  Every closed substring longer than
one character is T[i .. j+len-1] for a consecutive occurrence (i, j) of its
border; conversely the suffix-tree nodes at which (i, j) is live form one
maximal ancestor-descendant path, and every border length cut from that path
yields a closed substring.  Merging each pair's per-heavy-path segments
therefore gives an O(n log n)-size representation of all closed substrings.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from rangecoo.segments import ConsOcc, make_pair
from rangecoo.text_index import ROOT, TextLike, as_text


class ClosedPath(NamedTuple):
    """Maximal liveness path of one consecutive occurrence.

    Expands to the closed substrings T[i .. j+len-1] for every border length
    len in [min_len, max_len].
    """

    pair: ConsOcc
    top_node: int
    bottom_node: int
    min_len: int
    max_len: int


def compute_closed_paths(idx) -> list[ClosedPath]:
    """One ClosedPath per consecutive occurrence of any node string.

    Consumes every extracted segment (including the root-only ones that the
    query structures skip: a pair whose path starts at the root still needs
    the root subpath for its top node).  Groups segments by pair via a radix
    sort on (i, j) and concatenates each group's heavy-path runs in
    increasing depth; runs of one pair must be contiguous in the tree, and a
    break signals an extraction bug.
    """
    seg = idx.segments
    hld = idx.hld
    tree = idx.tree
    if len(seg.path) == 0:
        return []
    starts = hld.path_off[seg.path]
    top = hld.path_nodes[starts + seg.l]
    bottom = hld.path_nodes[starts + seg.r]
    top_depth = tree.str_depth[top]
    order = np.lexsort((top_depth, seg.j, seg.i))
    i_s = seg.i[order]
    j_s = seg.j[order]
    top_s = top[order]
    bot_s = bottom[order]
    same = np.zeros(len(order), dtype=bool)
    same[1:] = (i_s[1:] == i_s[:-1]) & (j_s[1:] == j_s[:-1])
    if not np.all(tree.parent[top_s[same]] == bot_s[np.flatnonzero(same) - 1]):
        raise RuntimeError(
            "segment groups are not contiguous ancestor-descendant paths"
        )
    first = np.flatnonzero(~same)
    last = np.append(first[1:] - 1, len(order) - 1)
    top_nodes = top_s[first]
    bot_nodes = bot_s[last]
    parent_depth = np.where(
        top_nodes == ROOT, 0, tree.str_depth[tree.parent[top_nodes]]
    )
    min_len = np.maximum(1, parent_depth + 1)
    max_len = tree.str_depth[bot_nodes]
    keep = max_len >= min_len
    return [
        ClosedPath(make_pair(int(i), int(j)), int(t), int(b), int(lo), int(hi))
        for i, j, t, b, lo, hi in zip(
            i_s[first][keep],
            j_s[first][keep],
            top_nodes[keep],
            bot_nodes[keep],
            min_len[keep],
            max_len[keep],
        )
    ]


def iter_closed_occurrences(paths: list[ClosedPath], text: TextLike
                            ) -> Iterator[tuple[int, int]]:
    """Yield every closed-substring occurrence (start, end) exactly once.

    Uniqueness is structural: a border occurring exactly twice is necessarily
    the longest border, so distinct (pair, length) combinations expand to
    distinct spans.
    """
    n = len(as_text(text))
    for p in range(1, n + 1):
        yield p, p
    for cp in paths:
        i, j, _ = cp.pair
        for length in range(cp.min_len, cp.max_len + 1):
            yield i, j + length - 1


def enumerate_closed_occurrences(paths: list[ClosedPath], text: TextLike
                                 ) -> set[tuple[int, int]]:
    return set(iter_closed_occurrences(paths, text))


def border_lengths(s: bytes) -> list[int]:
    """Failure function: border[i] = longest border length of s[:i+1]."""
    out = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = out[k - 1]
        if s[i] == s[k]:
            k += 1
        out[i] = k
    return out


def is_closed(s: TextLike) -> bool:
    """True when s has length one or its longest border occurs exactly twice."""
    data = as_text(s)
    if len(data) == 0:
        raise ValueError("empty string has no closed/open status")
    if len(data) == 1:
        return True
    b = border_lengths(data)[-1]
    if b == 0:
        return False
    border = data[:b]
    count = 0
    pos = data.find(border)
    while pos != -1:
        count += 1
        if count > 2:
            return False
        pos = data.find(border, pos + 1)
    return count == 2
