# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled construction kernels; contracts match rangecoo._kernels_py."""

import numpy as np

from libc.stdint cimport int32_t, int64_t


def kasai_lcp(codes, sa):
    cdef int32_t[::1] c = np.ascontiguousarray(codes, dtype=np.int32)
    cdef int32_t[::1] s = np.ascontiguousarray(sa, dtype=np.int32)
    cdef Py_ssize_t n = s.shape[0]
    rank_arr = np.empty(n, dtype=np.int64)
    lcp_arr = np.zeros(n, dtype=np.int32)
    cdef int64_t[::1] rank = rank_arr
    cdef int32_t[::1] lcp = lcp_arr
    cdef Py_ssize_t i, r, j, h = 0
    for i in range(n):
        rank[s[i]] = i
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = s[r - 1]
        while i + h < n and j + h < n and c[i + h] == c[j + h]:
            h += 1
        lcp[r] = <int32_t>h
        if h > 0:
            h -= 1
    return lcp_arr


def suffix_tree_arrays(sa, lcp):
    cdef int32_t[::1] s = np.ascontiguousarray(sa, dtype=np.int32)
    cdef int32_t[::1] lc = np.ascontiguousarray(lcp, dtype=np.int32)
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t cap = 2 * n + 1
    parent_arr = np.zeros(cap, dtype=np.int32)
    depth_arr = np.zeros(cap, dtype=np.int32)
    lo_arr = np.zeros(cap, dtype=np.int32)
    hi_arr = np.zeros(cap, dtype=np.int32)
    leaf_arr = np.zeros(n, dtype=np.int32)
    stack_arr = np.zeros(cap, dtype=np.int32)
    cdef int32_t[::1] parent = parent_arr
    cdef int32_t[::1] depth = depth_arr
    cdef int32_t[::1] lo = lo_arr
    cdef int32_t[::1] hi = hi_arr
    cdef int32_t[::1] leaf_node = leaf_arr
    cdef int32_t[::1] stack = stack_arr
    cdef Py_ssize_t top = 0, n_nodes = 1, r
    cdef int32_t v, below, u, leaf, l
    parent[0] = -1
    stack[0] = 0
    for r in range(n):
        l = lc[r] if r > 0 else 0
        while depth[stack[top]] > l:
            v = stack[top]
            top -= 1
            hi[v] = <int32_t>r
            below = stack[top]
            if depth[below] >= l:
                parent[v] = below
            else:
                u = <int32_t>n_nodes
                n_nodes += 1
                depth[u] = l
                parent[u] = below
                lo[u] = lo[v]
                parent[v] = u
                top += 1
                stack[top] = u
        leaf = <int32_t>n_nodes
        n_nodes += 1
        depth[leaf] = <int32_t>(n - s[r])
        parent[leaf] = stack[top]
        lo[leaf] = <int32_t>r
        hi[leaf] = <int32_t>(r + 1)
        leaf_node[r] = leaf
        top += 1
        stack[top] = leaf
    while top > 0:
        v = stack[top]
        top -= 1
        hi[v] = <int32_t>n
        parent[v] = stack[top]
    hi[0] = <int32_t>n
    return (
        parent_arr[:n_nodes].copy(),
        depth_arr[:n_nodes].copy(),
        lo_arr[:n_nodes].copy(),
        hi_arr[:n_nodes].copy(),
        leaf_arr,
        n_nodes,
    )


def heavy_path_assign(parent, heavy_child, order):
    cdef int32_t[::1] par = np.ascontiguousarray(parent, dtype=np.int32)
    cdef int32_t[::1] hc = np.ascontiguousarray(heavy_child, dtype=np.int32)
    cdef int32_t[::1] o = np.ascontiguousarray(order, dtype=np.int32)
    cdef Py_ssize_t m = par.shape[0]
    apex_arr = np.zeros(m, dtype=np.int32)
    d_arr = np.zeros(m, dtype=np.int32)
    cdef int32_t[::1] apex = apex_arr
    cdef int32_t[::1] d = d_arr
    cdef Py_ssize_t t
    cdef int32_t v, p
    for t in range(m):
        v = o[t]
        p = par[v]
        if p >= 0 and hc[p] == v:
            apex[v] = apex[p]
            d[v] = d[p] + 1
        else:
            apex[v] = v
            d[v] = 0
    return apex_arr, d_arr


def extract_segments(labels, del_depth, path_off, path_len, sentinel):
    cdef int32_t[::1] lab = np.ascontiguousarray(labels, dtype=np.int32)
    cdef int32_t[::1] dd = np.ascontiguousarray(del_depth, dtype=np.int32)
    cdef int64_t[::1] off = np.ascontiguousarray(path_off, dtype=np.int64)
    cdef int32_t[::1] plen = np.ascontiguousarray(path_len, dtype=np.int32)
    cdef int32_t sent = <int32_t>sentinel
    cdef Py_ssize_t n_paths = plen.shape[0]
    cdef Py_ssize_t total = lab.shape[0]
    # worst case two emissions per deletion; deletions = entries minus survivors
    cdef Py_ssize_t cap = 2 * (total - n_paths) + 8 if total > n_paths else 8
    out_path_arr = np.empty(cap, dtype=np.int32)
    out_l_arr = np.empty(cap, dtype=np.int32)
    out_r_arr = np.empty(cap, dtype=np.int32)
    out_y_arr = np.empty(cap, dtype=np.int32)
    out_i_arr = np.empty(cap, dtype=np.int32)
    out_j_arr = np.empty(cap, dtype=np.int32)
    cdef int32_t[::1] out_path = out_path_arr
    cdef int32_t[::1] out_l = out_l_arr
    cdef int32_t[::1] out_r = out_r_arr
    cdef int32_t[::1] out_y = out_y_arr
    cdef int32_t[::1] out_i = out_i_arr
    cdef int32_t[::1] out_j = out_j_arr
    # shared per-path scratch: local linked list, creation depths, deletion
    # order buckets (counting sort by deletion depth, label order preserved)
    prev_arr = np.empty(total, dtype=np.int64)
    nxt_arr = np.empty(total, dtype=np.int64)
    cd_arr = np.empty(total, dtype=np.int32)
    order_arr = np.empty(total, dtype=np.int64)
    cdef int64_t max_t = 0
    cdef Py_ssize_t p
    for p in range(n_paths):
        if plen[p] > max_t:
            max_t = plen[p]
    head_arr = np.empty(max_t + 2, dtype=np.int64)
    cdef int64_t[::1] prev = prev_arr
    cdef int64_t[::1] nxt = nxt_arr
    cdef int32_t[::1] cd = cd_arr
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] head = head_arr
    cdef Py_ssize_t s, e, q, b, out_n = 0
    cdef int64_t left, right, m
    cdef int32_t t, dp, lq
    for p in range(n_paths):
        s = off[p]
        e = off[p + 1]
        m = e - s
        if m <= 1:
            continue
        t = plen[p]
        for b in range(t + 1):
            head[b] = 0
        for q in range(s, e):
            if dd[q] < t:
                head[dd[q] + 1] += 1
        for b in range(t):
            head[b + 1] += head[b]
        for q in range(s, e):
            if dd[q] < t:
                order[s + head[dd[q]]] = q
                head[dd[q]] += 1
        for q in range(s, e):
            prev[q] = q - 1 if q > s else -1
            nxt[q] = q + 1 if q + 1 < e else -1
            cd[q] = 0
        for b in range(s, s + head[t - 1] if t > 0 else s):
            q = order[b]
            dp = dd[q]
            left = prev[q]
            right = nxt[q]
            lq = lab[q]
            if left >= 0 and cd[left] <= dp and lq != sent:
                out_path[out_n] = <int32_t>p
                out_l[out_n] = cd[left]
                out_r[out_n] = dp
                out_y[out_n] = lq - lab[left]
                out_i[out_n] = lab[left]
                out_j[out_n] = lq
                out_n += 1
            if right >= 0 and cd[q] <= dp and lab[right] != sent:
                out_path[out_n] = <int32_t>p
                out_l[out_n] = cd[q]
                out_r[out_n] = dp
                out_y[out_n] = lab[right] - lq
                out_i[out_n] = lq
                out_j[out_n] = lab[right]
                out_n += 1
            if left >= 0:
                nxt[left] = right
            if right >= 0:
                prev[right] = left
            if left >= 0 and right >= 0:
                cd[left] = dp + 1
    return (
        out_path_arr[:out_n].copy(),
        out_l_arr[:out_n].copy(),
        out_r_arr[:out_n].copy(),
        out_y_arr[:out_n].copy(),
        out_i_arr[:out_n].copy(),
        out_j_arr[:out_n].copy(),
    )


def segtree_assign(l, r, size_pow2):
    cdef int32_t[::1] ll = np.ascontiguousarray(l, dtype=np.int32)
    cdef int32_t[::1] rr = np.ascontiguousarray(r, dtype=np.int32)
    cdef Py_ssize_t n = ll.shape[0]
    cdef int64_t size = size_pow2
    cdef Py_ssize_t levels = 0
    cdef int64_t tmp = size
    while tmp > 1:
        levels += 1
        tmp >>= 1
    cdef Py_ssize_t cap = 2 * (levels + 2) * n + 8
    nodes_arr = np.empty(cap, dtype=np.int64)
    segs_arr = np.empty(cap, dtype=np.int64)
    cdef int64_t[::1] nodes = nodes_arr
    cdef int64_t[::1] segs = segs_arr
    cdef Py_ssize_t sid, out_n = 0
    cdef int64_t a, b
    for sid in range(n):
        a = ll[sid] + size
        b = rr[sid] + 1 + size
        while a < b:
            if a & 1:
                nodes[out_n] = a
                segs[out_n] = sid
                out_n += 1
                a += 1
            if b & 1:
                b -= 1
                nodes[out_n] = b
                segs[out_n] = sid
                out_n += 1
            a >>= 1
            b >>= 1
    return nodes_arr[:out_n].copy(), segs_arr[:out_n].copy()
