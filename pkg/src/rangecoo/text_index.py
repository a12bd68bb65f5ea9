"""Suffix tree and heavy-path decomposition over byte texts.

The tree is a compacted trie of all suffixes of the text plus a virtual end
marker that compares smaller than every byte.  Nodes live in flat arrays
(node 0 is the root); leaves are labelled 1..n+1 by suffix start position,
with n+1 being the marker-only suffix.  Reported positions never include
position n+1: the marker exists only so that every suffix ends at its own
leaf.
"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

from rangecoo import kernels

ROOT = 0
ALPHABET = 257  # 256 byte values plus the end marker (code 0)

TextLike = Union[bytes, bytearray, str]


def as_text(text: TextLike) -> bytes:
    """Coerce input to bytes; str is taken as latin-1 (one byte per char)."""
    if isinstance(text, str):
        return text.encode("latin-1")
    if isinstance(text, (bytes, bytearray)):
        return bytes(text)
    raise TypeError(f"text must be bytes or str, got {type(text).__name__}")


def suffix_array(codes: np.ndarray) -> np.ndarray:
    """Suffix array of an integer sequence by prefix-doubling (lexsort rounds)."""
    n = len(codes)
    rank = np.unique(codes, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - k] = rank[k:]
        order = np.lexsort((key2, rank))
        changed = np.ones(n, dtype=bool)
        changed[1:] = (rank[order[1:]] != rank[order[:-1]]) | (
            key2[order[1:]] != key2[order[:-1]]
        )
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(changed) - 1
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order.astype(np.int32)
        k *= 2


class SuffixTree:
    """Suffix tree of a nonempty byte text, with child lookup and locus search."""

    def __init__(self, text: TextLike):
        data = as_text(text)
        if len(data) == 0:
            raise ValueError("cannot index an empty text")
        self.text = data
        self.n = len(data)
        # byte codes shifted by one so the end marker (code 0) sorts first
        codes = np.frombuffer(data, dtype=np.uint8).astype(np.int32) + 1
        self.codes = np.append(codes, np.int32(0))
        self.sa = suffix_array(self.codes)
        self.lcp = kernels.kasai_lcp(self.codes, self.sa)
        (
            self.parent,
            self.str_depth,
            self.sa_lo,
            self.sa_hi,
            self.leaf_node,
            self.n_nodes,
        ) = kernels.suffix_tree_arrays(self.sa, self.lcp)
        self.leaf_label = np.zeros(self.n_nodes, dtype=np.int32)
        self.leaf_label[self.leaf_node] = self.sa + 1
        # first symbol of each node's incoming edge
        first = np.zeros(self.n_nodes, dtype=np.int32)
        v = np.arange(1, self.n_nodes)
        starts = self.sa[self.sa_lo[v]].astype(np.int64)
        first[1:] = self.codes[starts + self.str_depth[self.parent[v]]]
        self.first_sym = first
        keys = self.parent[v].astype(np.int64) * ALPHABET + first[1:]
        self._children = dict(zip(keys.tolist(), v.tolist()))

    # -- basic accessors ------------------------------------------------

    @property
    def num_leaves(self) -> int:
        return self.n + 1

    def is_leaf(self, v: int) -> bool:
        return int(self.sa_hi[v] - self.sa_lo[v]) == 1

    def child(self, v: int, symbol: int) -> Optional[int]:
        """Child of v whose edge starts with the given symbol code (byte+1)."""
        return self._children.get(v * ALPHABET + symbol)

    def leaves_under(self, v: int) -> np.ndarray:
        """Sorted leaf labels (1-based suffix starts) in the subtree of v."""
        return np.sort(self.sa[self.sa_lo[v] : self.sa_hi[v]] + 1)

    def edge_span(self, v: int) -> tuple[int, int]:
        """1-based inclusive text positions of v's incoming edge label.

        The end position may be n+1 for edges that finish at the virtual
        end marker.
        """
        if v == ROOT:
            raise ValueError("root has no incoming edge")
        start = int(self.sa[self.sa_lo[v]])
        d0 = int(self.str_depth[self.parent[v]])
        d1 = int(self.str_depth[v])
        return start + d0 + 1, start + d1

    def str_of(self, v: int) -> bytes:
        """Path string of v, excluding the end marker."""
        start = int(self.sa[self.sa_lo[v]])
        end = min(start + int(self.str_depth[v]), self.n)
        return self.text[start:end]

    # -- pattern search ---------------------------------------------------

    def locus(self, pattern: TextLike) -> Optional[int]:
        """Highest node whose path string has the pattern as a prefix.

        Returns None when the pattern does not occur in the text.  The leaf
        labels below the result are exactly the occurrence positions.
        """
        pat = as_text(pattern)
        if len(pat) == 0:
            raise ValueError("pattern must be nonempty")
        m = len(pat)
        text = self.text
        depth = self.str_depth
        v = ROOT
        matched = 0
        while matched < m:
            child = self._children.get(v * ALPHABET + pat[matched] + 1)
            if child is None:
                return None
            start = int(self.sa[self.sa_lo[child]])
            d0 = int(depth[v])
            take = min(int(depth[child]) - d0, m - matched)
            # a slice running past the text end comes back short and the
            # comparison fails, which is right: patterns never match the marker
            if text[start + d0 : start + d0 + take] != pat[matched : matched + take]:
                return None
            matched += take
            v = child
        return v

    def occurrences(self, pattern: TextLike) -> list[int]:
        """Occurrence positions of a pattern via locus lookup, sorted."""
        v = self.locus(pattern)
        if v is None:
            return []
        return self.leaves_under(v).tolist()


def build_suffix_tree(text: TextLike) -> SuffixTree:
    return SuffixTree(text)


def locus(tree: SuffixTree, pattern: TextLike) -> Optional[int]:
    return tree.locus(pattern)


class HeavyPathDecomp:
    """Heavy-path decomposition of a suffix tree.

    Every node belongs to exactly one root-to-leaf heavy path; at each
    branching the child with the most subtree leaves is chosen, ties broken
    by the smallest first edge symbol (the end marker sorts smallest).
    Paths are numbered by ascending apex node id, so path 0 is the root's.
    """

    def __init__(self, tree):
        self.tree = tree
        m = tree.n_nodes
        leaf_cnt = (tree.sa_hi - tree.sa_lo).astype(np.int64)
        v = np.arange(1, m)
        order = np.lexsort((tree.first_sym[1:], -leaf_cnt[1:], tree.parent[1:]))
        vv = v[order]
        par = tree.parent[vv]
        head = np.ones(len(vv), dtype=bool)
        head[1:] = par[1:] != par[:-1]
        heavy = np.full(m, -1, dtype=np.int32)
        heavy[par[head]] = vv[head]
        self.heavy_child = heavy
        depth_order = np.argsort(tree.str_depth, kind="stable").astype(np.int32)
        self.apex_of, self.d = kernels.heavy_path_assign(
            tree.parent, heavy, depth_order
        )
        self.apexes = np.flatnonzero(self.apex_of == np.arange(m)).astype(np.int32)
        self.path_idx = np.searchsorted(self.apexes, self.apex_of).astype(np.int32)
        self.num_paths = len(self.apexes)
        order2 = np.lexsort((self.d, self.path_idx))
        self.path_nodes = order2.astype(np.int32)
        counts = np.bincount(self.path_idx, minlength=self.num_paths)
        self.path_off = np.zeros(self.num_paths + 1, dtype=np.int64)
        np.cumsum(counts, out=self.path_off[1:])
        self.path_len = (counts - 1).astype(np.int32)  # node depth of the path leaf
        self.n_h = (tree.sa_hi[self.apexes] - tree.sa_lo[self.apexes]).astype(np.int64)
        # filled in by compute_leaf_pointers
        self.inc_label: Optional[np.ndarray] = None
        self.inc_del: Optional[np.ndarray] = None
        self.inc_off: Optional[np.ndarray] = None

    def nodes_of_path(self, p: int) -> np.ndarray:
        """Path nodes apex-first (index within the slice equals d(v))."""
        return self.path_nodes[self.path_off[p] : self.path_off[p + 1]]

    def node_at(self, p: int, depth: int) -> int:
        return int(self.path_nodes[self.path_off[p] + depth])

    def root_path(self) -> int:
        return int(self.path_idx[ROOT])

    def crossings(self, leaf_node: int) -> int:
        """Number of heavy paths met on the walk from the root to a leaf."""
        count = 1
        v = int(self.apex_of[leaf_node])
        while v != ROOT:
            v = int(self.apex_of[self.tree.parent[v]])
            count += 1
        return count

    def leaf_pointers_at(self, node: int) -> np.ndarray:
        """Leaf labels under a path node but not under its path successor.

        Empty for the path leaf itself: its own label survives as the path's
        residual list.
        """
        if self.inc_label is None:
            raise RuntimeError("call compute_leaf_pointers first")
        p = int(self.path_idx[node])
        depth = int(self.d[node])
        if depth == int(self.path_len[p]):
            return np.empty(0, dtype=np.int32)
        s, e = int(self.inc_off[p]), int(self.inc_off[p + 1])
        sel = self.inc_del[s:e] == depth
        return self.inc_label[s:e][sel]


def decompose_heavy_paths(tree) -> HeavyPathDecomp:
    return HeavyPathDecomp(tree)


def compute_leaf_pointers(tree, hld: HeavyPathDecomp) -> HeavyPathDecomp:
    """Attach per-path leaf lists and deletion depths to the decomposition.

    For every heavy path crossed by a leaf's root walk this records one
    (path, label, exit depth) incidence; grouped by path and sorted by label
    these are the sorted subtree leaf lists consumed by segment extraction.
    """
    labels = (tree.sa + 1).astype(np.int32)
    leaf_nodes = tree.leaf_node
    parts_path = [hld.path_idx[leaf_nodes]]
    parts_label = [labels]
    parts_del = [hld.d[leaf_nodes]]
    root_apex = int(hld.apex_of[ROOT])
    cur = hld.apex_of[leaf_nodes].copy()
    live_labels = labels
    while True:
        alive = cur != root_apex
        if not alive.any():
            break
        cur = cur[alive]
        live_labels = live_labels[alive]
        par = tree.parent[cur]
        parts_path.append(hld.path_idx[par])
        parts_label.append(live_labels)
        parts_del.append(hld.d[par])
        cur = hld.apex_of[par]
    path = np.concatenate(parts_path)
    label = np.concatenate(parts_label)
    dels = np.concatenate(parts_del)
    order = np.lexsort((label, path))
    hld.inc_label = label[order].astype(np.int32)
    hld.inc_del = dels[order].astype(np.int32)
    counts = np.bincount(path, minlength=hld.num_paths)
    hld.inc_off = np.zeros(hld.num_paths + 1, dtype=np.int64)
    np.cumsum(counts, out=hld.inc_off[1:])
    return hld
