"""Pure-Python construction kernels.

Same contracts as the compiled versions in ``rangecoo._speedups``; these are
the fallback used when the extension is unavailable (or when RANGECOO_PURE=1).
All functions take and return numpy arrays but loop over plain lists, which
is the fastest interpreter-only option.
"""

from __future__ import annotations

import numpy as np


def kasai_lcp(codes, sa):
    """LCP array for a suffix array, lcp[r] = lcp(sa[r-1], sa[r]), lcp[0] = 0."""
    n = len(sa)
    c = codes.tolist()
    s = sa.tolist()
    rank = [0] * n
    for r, start in enumerate(s):
        rank[start] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = s[r - 1]
        while i + h < n and j + h < n and c[i + h] == c[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int32)


def suffix_tree_arrays(sa, lcp):
    """Build suffix-tree node arrays from a suffix array and its LCP array.

    Returns (parent, str_depth, sa_lo, sa_hi, leaf_node, n_nodes) where node 0
    is the root, sa_lo/sa_hi give the half-open suffix-array interval of each
    node's subtree leaves and leaf_node[r] is the node id of the leaf for
    suffix rank r.
    """
    n = len(sa)
    s = sa.tolist()
    lc = lcp.tolist()
    cap = 2 * n + 1
    parent = [0] * cap
    depth = [0] * cap
    lo = [0] * cap
    hi = [0] * cap
    leaf_node = [0] * n
    parent[0] = -1
    n_nodes = 1
    stack = [0]
    for r in range(n):
        l = lc[r] if r > 0 else 0
        while depth[stack[-1]] > l:
            v = stack.pop()
            hi[v] = r
            below = stack[-1]
            if depth[below] >= l:
                parent[v] = below
            else:
                # split: new internal node at string depth l between below and v
                u = n_nodes
                n_nodes += 1
                depth[u] = l
                parent[u] = below
                lo[u] = lo[v]
                parent[v] = u
                stack.append(u)
        leaf = n_nodes
        n_nodes += 1
        depth[leaf] = n - s[r]
        parent[leaf] = stack[-1]
        lo[leaf] = r
        hi[leaf] = r + 1
        leaf_node[r] = leaf
        stack.append(leaf)
    while len(stack) > 1:
        v = stack.pop()
        hi[v] = n
        parent[v] = stack[-1]
    hi[0] = n
    return (
        np.asarray(parent[:n_nodes], dtype=np.int32),
        np.asarray(depth[:n_nodes], dtype=np.int32),
        np.asarray(lo[:n_nodes], dtype=np.int32),
        np.asarray(hi[:n_nodes], dtype=np.int32),
        np.asarray(leaf_node, dtype=np.int32),
        n_nodes,
    )


def heavy_path_assign(parent, heavy_child, order):
    """Assign every node to a heavy path.

    ``order`` must list node ids with parents before children (ascending
    string depth works).  Returns (apex_of, d) where apex_of[v] is the node id
    of the apex of v's path and d[v] its depth within the path (apex = 0).
    """
    par = parent.tolist()
    hc = heavy_child.tolist()
    m = len(par)
    apex = [0] * m
    d = [0] * m
    for v in order.tolist():
        p = par[v]
        if p >= 0 and hc[p] == v:
            apex[v] = apex[p]
            d[v] = d[p] + 1
        else:
            apex[v] = v
            d[v] = 0
    return np.asarray(apex, dtype=np.int32), np.asarray(d, dtype=np.int32)


def extract_segments(labels, del_depth, path_off, path_len, sentinel,
                     batch_perm=None):
    """Run the top-down leaf-deletion sweep over every heavy path.

    ``labels``/``del_depth`` hold, per path (delimited by ``path_off``), the
    subtree leaf labels in increasing order together with the path depth at
    which each leaf is deleted (path length for the surviving path leaf).
    Emits one segment per maximal liveness run of each consecutive pair;
    pairs ending at ``sentinel`` are suppressed.

    Returns (seg_path, l, r, y, i, j) int32 arrays, grouped by path.

    ``batch_perm`` is a test hook: a callable mapping a list of same-depth
    deletion slots to the order in which to process them (default ascending
    label, which the emission guard makes equivalent to any other order).
    """
    lab = labels.tolist()
    dd = del_depth.tolist()
    off = path_off.tolist()
    plen = path_len.tolist()
    out_path = []
    out_l = []
    out_r = []
    out_y = []
    out_i = []
    out_j = []
    for p in range(len(plen)):
        s, e = off[p], off[p + 1]
        m = e - s
        if m <= 1:
            continue
        t = plen[p]
        # bucket deletion slots by depth; slots are already label-ascending
        buckets = [[] for _ in range(t)]
        for q in range(s, e):
            if dd[q] < t:
                buckets[dd[q]].append(q)
        prev = list(range(s - 1, e - 1))
        nxt = list(range(s + 1, e + 1))
        # cd[q]: creation depth of the adjacency (q, nxt[q])
        cd = [0] * (e - s)
        for depth_p, batch in enumerate(buckets):
            if batch_perm is not None and len(batch) > 1:
                batch = batch_perm(batch)
            for q in batch:
                left = prev[q - s]
                right = nxt[q - s]
                lab_q = lab[q]
                if left >= s and cd[left - s] <= depth_p and lab_q != sentinel:
                    out_path.append(p)
                    out_l.append(cd[left - s])
                    out_r.append(depth_p)
                    out_y.append(lab_q - lab[left])
                    out_i.append(lab[left])
                    out_j.append(lab_q)
                if right < e and cd[q - s] <= depth_p and lab[right] != sentinel:
                    out_path.append(p)
                    out_l.append(cd[q - s])
                    out_r.append(depth_p)
                    out_y.append(lab[right] - lab_q)
                    out_i.append(lab_q)
                    out_j.append(lab[right])
                if left >= s:
                    nxt[left - s] = right
                if right < e:
                    prev[right - s] = left
                if left >= s and right < e:
                    cd[left - s] = depth_p + 1
    return (
        np.asarray(out_path, dtype=np.int32),
        np.asarray(out_l, dtype=np.int32),
        np.asarray(out_r, dtype=np.int32),
        np.asarray(out_y, dtype=np.int32),
        np.asarray(out_i, dtype=np.int32),
        np.asarray(out_j, dtype=np.int32),
    )


def segtree_assign(l, r, size_pow2):
    """Canonical segment-tree node assignment for inclusive ranges [l, r].

    Nodes use heap numbering over ``size_pow2`` unit slabs.  Returns
    (node_ids, seg_ids); a segment lands on every maximal node whose slab
    range it covers (at most two per level).
    """
    ll = l.tolist()
    rr = r.tolist()
    nodes = []
    segs = []
    for sid in range(len(ll)):
        a = ll[sid] + size_pow2
        b = rr[sid] + 1 + size_pow2
        while a < b:
            if a & 1:
                nodes.append(a)
                segs.append(sid)
                a += 1
            if b & 1:
                b -= 1
                nodes.append(b)
                segs.append(sid)
            a >>= 1
            b >>= 1
    return np.asarray(nodes, dtype=np.int64), np.asarray(segs, dtype=np.int64)
