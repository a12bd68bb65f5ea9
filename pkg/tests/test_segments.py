import math

import numpy as np

from conftest import random_text
from rangecoo import _kernels_py
from rangecoo.segments import (
    build_sorted_leaf_lists,
    extract_segments,
    total_segment_count,
)
from rangecoo.text_index import build_suffix_tree, decompose_heavy_paths

SAMPLE = b"ababaababab"


def built(text):
    tree = build_suffix_tree(text)
    hld = decompose_heavy_paths(tree)
    return tree, hld


def brute_liveness(tree, hld):
    """pair -> {path: set of live depths}, by scanning every node's leaf list."""
    runs = {}
    for v in range(tree.n_nodes):
        labs = tree.leaves_under(v).tolist()
        for i, j in zip(labs, labs[1:]):
            if j == tree.n + 1:
                continue
            p = int(hld.path_idx[v])
            runs.setdefault((i, j), {}).setdefault(p, set()).add(int(hld.d[v]))
    return runs


def segments_as_runs(tree, hld, segs):
    got = {}
    for p in range(hld.num_paths):
        for s in segs.for_path(p, include_root_only=True):
            depths = got.setdefault((s.pair.i, s.pair.j), {}).setdefault(p, set())
            assert not depths & set(range(s.l, s.r + 1)), "overlapping runs"
            depths.update(range(s.l, s.r + 1))
    return got


def test_sorted_leaf_lists():
    tree, hld = built(SAMPLE)
    lists = build_sorted_leaf_lists(tree, hld)
    assert lists.labels(hld.root_path()).tolist() == list(range(1, 13))
    b_apex = tree.locus(b"b")
    p = int(hld.path_idx[b_apex])
    assert int(hld.apex_of[b_apex]) == b_apex
    assert lists.labels(p).tolist() == [2, 4, 7, 9, 11]
    single = [p for p in range(hld.num_paths) if hld.n_h[p] == 1]
    assert single and all(lists.labels(p).size == 1 for p in single)


def test_initial_adjacencies_are_apex_cons_pairs(rng):
    for _ in range(10):
        text = random_text(rng, rng.randint(2, 40), rng.choice([2, 4]))
        tree, hld = built(text)
        lists = build_sorted_leaf_lists(tree, hld)
        n = tree.n
        for p in range(hld.num_paths):
            adj = [(c.i, c.j) for c in lists.initial_adjacencies(p)]
            apex = int(hld.apexes[p])
            if apex == 0:
                assert adj == [(i, i + 1) for i in range(1, n + 1)]
            else:
                occ = [x for x in tree.leaves_under(apex).tolist()]
                assert adj == list(zip(occ, occ[1:]))


def test_golden_segment_for_sample_text():
    tree, hld = built(SAMPLE)
    segs = extract_segments(tree, hld)
    root = [
        (s.l, s.r, s.y, s.weight, s.pair.i, s.pair.j)
        for s in segs.for_path(hld.root_path())
    ]
    assert (2, 3, 3, 3, 3, 6) in root
    # (3, 6) is separated at depths 0 and 1 by the occurrence at 5
    for l, r, _, _, i, j in root:
        if (i, j) == (3, 6):
            assert l == 2 and r == 3


def test_liveness_oracle_equivalence(rng):
    for _ in range(40):
        n = rng.randint(2, 64)
        text = random_text(rng, n, rng.choice([2, 4, 26]))
        tree, hld = built(text)
        segs = extract_segments(tree, hld)
        assert segments_as_runs(tree, hld, segs) == brute_liveness(tree, hld)


def test_segment_fields_are_consistent(rng):
    for _ in range(15):
        text = random_text(rng, rng.randint(2, 50))
        tree, hld = built(text)
        segs = extract_segments(tree, hld)
        n = tree.n
        for p in range(hld.num_paths):
            t = int(hld.path_len[p])
            for s in segs.for_path(p, include_root_only=True):
                assert 0 <= s.l <= s.r <= t
                assert s.y == s.pair.j - s.pair.i == s.pair.dist
                assert s.weight == s.pair.i
                assert 1 <= s.pair.i < s.pair.j <= n


def test_single_symbol_text_has_no_segments():
    tree, hld = built(b"a")
    assert total_segment_count(extract_segments(tree, hld)) == 0


def test_count_matches_brute_force_on_aabaa():
    tree, hld = built(b"aabaa")
    segs = extract_segments(tree, hld)
    runs = brute_liveness(tree, hld)
    brute_count = sum(len(paths) for paths in runs.values())
    assert segs.total_with_root_only == brute_count
    root_only = sum(
        1 for s in segs.for_path(hld.root_path(), include_root_only=True)
        if s.l == s.r == 0
    )
    assert total_segment_count(segs) == brute_count - root_only


def test_count_bound_on_random_texts(rng):
    n = 4096
    bound = 2 * n * math.ceil(math.log2(n))
    for _ in range(50):
        tree, hld = built(random_text(rng, n, rng.choice([2, 4, 26])))
        segs = extract_segments(tree, hld)
        assert total_segment_count(segs) <= bound
        # each deletion emits at most two segments
        assert segs.total_with_root_only <= 2 * int(hld.n_h.sum())


def test_batch_deletion_transient_pair_rule():
    # one path <i, k, k', j> = <1, 2, 3, 4>; k and k' leave at depth 1,
    # i at depth 2, j survives (t = 3)
    labels = np.array([1, 2, 3, 4], dtype=np.int32)
    dels = np.array([2, 1, 1, 3], dtype=np.int32)
    off = np.array([0, 4], dtype=np.int64)
    plen = np.array([3], dtype=np.int32)
    out = _kernels_py.extract_segments(labels, dels, off, plen, sentinel=99)
    got = set(zip(*(a.tolist() for a in out[1:])))
    assert {(0, 1, 1, 1, 2), (0, 1, 1, 2, 3), (0, 1, 1, 3, 4)} <= got
    # transient (1, 3) created mid-batch must not be emitted
    assert not any(g[3] == 1 and g[4] == 3 for g in got)
    assert (2, 2, 3, 1, 4) in got  # (1, 4) becomes adjacent after the batch


def test_deletion_order_independence(rng):
    for _ in range(12):
        text = random_text(rng, rng.randint(2, 40), rng.choice([2, 3]))
        tree, hld = built(text)
        base = extract_segments(tree, hld)
        shuffled = extract_segments(
            tree, hld, batch_perm=lambda b: rng.sample(b, len(b))
        )
        key = lambda segs: sorted(
            zip(segs.path.tolist(), segs.l.tolist(), segs.r.tolist(),
                segs.i.tolist(), segs.j.tolist())
        )
        assert key(base) == key(shuffled)


def test_sentinel_pairs_never_emitted(rng):
    for _ in range(10):
        text = random_text(rng, rng.randint(1, 40))
        tree, hld = built(text)
        segs = extract_segments(tree, hld)
        n = tree.n
        assert segs.total_with_root_only == 0 or int(segs.j.max()) <= n
