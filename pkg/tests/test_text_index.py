import math
from types import SimpleNamespace

import numpy as np
import pytest

from conftest import random_text
from rangecoo import oracle
from rangecoo.text_index import (
    ROOT,
    build_suffix_tree,
    compute_leaf_pointers,
    decompose_heavy_paths,
    locus,
)

SAMPLE = b"ababaababab"


def leaf_count(tree):
    return sum(tree.is_leaf(v) for v in range(tree.n_nodes))


def marker_free(tree, v):
    return int(tree.str_depth[v]) <= tree.n - int(tree.sa[tree.sa_lo[v]])


def test_build_sample_has_expected_leaves():
    tree = build_suffix_tree(SAMPLE)
    assert leaf_count(tree) == 12
    assert tree.num_leaves == 12


def test_single_symbol_text():
    tree = build_suffix_tree(b"a")
    assert tree.n_nodes == 3
    kids = [v for v in range(1, tree.n_nodes) if tree.parent[v] == ROOT]
    assert len(kids) == 2 and all(tree.is_leaf(v) for v in kids)
    assert sorted(int(tree.leaf_label[v]) for v in kids) == [1, 2]


def test_empty_text_rejected():
    with pytest.raises(ValueError):
        build_suffix_tree(b"")


def test_subtree_of_aa_in_aabaa():
    tree = build_suffix_tree(b"aabaa")
    v = tree.locus(b"aa")
    assert sorted(x for x in tree.leaves_under(v) if x <= 5) == [1, 4]
    assert sorted(int(tree.leaf_label[x]) for x in range(tree.n_nodes) if tree.is_leaf(x)) == [1, 2, 3, 4, 5, 6]


def test_every_suffix_walk_ends_at_its_leaf(rng):
    for _ in range(20):
        n = rng.randint(1, 40)
        text = random_text(rng, n, rng.choice([2, 4]))
        tree = build_suffix_tree(text)
        for i in range(1, n + 1):
            v = tree.locus(text[i - 1 :])
            labs = [x for x in tree.leaves_under(v) if x <= n]
            assert i in labs
            assert all(text[x - 1 :].startswith(text[i - 1 :]) for x in labs)


def test_locus_examples():
    tree = build_suffix_tree(SAMPLE)
    v = tree.locus(b"aba")
    assert int(tree.str_depth[v]) == 3
    assert tree.leaves_under(v).tolist() == [1, 3, 6, 8]
    assert tree.occurrences(SAMPLE) == [1]
    assert locus(tree, b"abx") is None
    with pytest.raises(ValueError):
        tree.locus(b"")


def test_leaf_set_property_exhaustive(rng):
    for _ in range(40):
        n = rng.randint(1, 64)
        text = random_text(rng, n, rng.choice([2, 4, 26]))
        tree = build_suffix_tree(text)
        for v in range(1, tree.n_nodes):
            if not marker_free(tree, v):
                continue
            occ = oracle.occurrences(text, tree.str_of(v))
            assert [x for x in tree.leaves_under(v).tolist() if x <= n] == occ


def test_locus_exists_iff_pattern_occurs(rng):
    for _ in range(15):
        n = rng.randint(2, 64)
        text = random_text(rng, n)
        tree = build_suffix_tree(text)
        seen = set()
        for i in range(n):
            for m in range(1, n - i + 1):
                seen.add(text[i : i + m])
        for pat in seen:
            assert tree.locus(pat) is not None
        for _ in range(30):
            pat = random_text(rng, rng.randint(1, 8), 3)
            assert (tree.locus(pat) is not None) == (len(oracle.occurrences(text, pat)) > 0)


def test_leaf_depth_invariant(rng):
    text = random_text(rng, 50)
    tree = build_suffix_tree(text)
    for v in range(tree.n_nodes):
        if tree.is_leaf(v):
            i = int(tree.leaf_label[v])
            assert int(tree.str_depth[v]) == (tree.n + 1) - i + 1


def test_heavy_path_of_sample_follows_the_biggest_subtrees():
    tree = build_suffix_tree(SAMPLE)
    hld = decompose_heavy_paths(tree)
    names = [tree.str_of(v) for v in hld.nodes_of_path(hld.root_path())]
    assert names[:5] == [b"", b"a", b"ab", b"aba", b"abab"]


def test_path_count_equals_leaf_count(rng):
    tree = build_suffix_tree(SAMPLE)
    assert decompose_heavy_paths(tree).num_paths == 12
    for _ in range(10):
        tree = build_suffix_tree(random_text(rng, rng.randint(1, 50)))
        hld = decompose_heavy_paths(tree)
        assert hld.num_paths == tree.num_leaves


def test_heavy_child_dominance(rng):
    for _ in range(15):
        tree = build_suffix_tree(random_text(rng, rng.randint(2, 60), rng.choice([2, 4])))
        hld = decompose_heavy_paths(tree)
        cnt = tree.sa_hi - tree.sa_lo
        for v in range(1, tree.n_nodes):
            p = int(tree.parent[v])
            assert cnt[hld.heavy_child[p]] >= cnt[v]


def test_path_change_bound(rng):
    for _ in range(15):
        n = rng.randint(2, 64)
        tree = build_suffix_tree(random_text(rng, n))
        hld = decompose_heavy_paths(tree)
        bound = math.ceil(math.log2(tree.n_nodes))
        total_nh = int(hld.n_h.sum())
        assert total_nh <= (n + 1) * bound
        for r in range(tree.num_leaves):
            assert hld.crossings(int(tree.leaf_node[r])) - 1 <= bound


def perfect_binary_trie(d):
    m = 2 ** (d + 1) - 1
    first_leaf = 2**d - 1
    parent = np.full(m, -1, dtype=np.int32)
    depth = np.zeros(m, dtype=np.int32)
    first_sym = np.zeros(m, dtype=np.int32)
    lo = np.zeros(m, dtype=np.int32)
    hi = np.zeros(m, dtype=np.int32)
    for v in range(1, m):
        parent[v] = (v - 1) // 2
        depth[v] = depth[parent[v]] + 1
        first_sym[v] = 1 + (v - 1) % 2
    for v in range(m - 1, -1, -1):
        if v >= first_leaf:
            lo[v] = v - first_leaf
            hi[v] = lo[v] + 1
        else:
            lo[v] = lo[2 * v + 1]
            hi[v] = hi[2 * v + 2]
    return SimpleNamespace(
        n_nodes=m, parent=parent, str_depth=depth, first_sym=first_sym, sa_lo=lo, sa_hi=hi
    )


def test_balanced_trie_path_changes_bounded_by_depth():
    for d in range(1, 7):
        trie = perfect_binary_trie(d)
        hld = decompose_heavy_paths(trie)
        assert hld.num_paths == 2**d
        first_leaf = 2**d - 1
        for leaf in range(first_leaf, trie.n_nodes):
            walk = []
            v = leaf
            while v != -1:
                walk.append(int(hld.path_idx[v]))
                v = int(trie.parent[v])
            changes = sum(1 for x, y in zip(walk, walk[1:]) if x != y)
            assert changes <= d


def test_leaf_pointers_definition(rng):
    for _ in range(12):
        tree = build_suffix_tree(random_text(rng, rng.randint(2, 48), rng.choice([2, 4])))
        hld = compute_leaf_pointers(tree, decompose_heavy_paths(tree))
        for p in range(hld.num_paths):
            nodes = hld.nodes_of_path(p).tolist()
            for depth, v in enumerate(nodes):
                got = sorted(hld.leaf_pointers_at(v).tolist())
                mine = set(tree.leaves_under(v).tolist())
                if depth + 1 < len(nodes):
                    below = set(tree.leaves_under(nodes[depth + 1]).tolist())
                    assert got == sorted(mine - below)
                else:
                    assert got == []


def test_leaf_pointers_fig_style_difference():
    # subtree minus heavy-subtree, checked on a concrete node of the sample
    tree = build_suffix_tree(SAMPLE)
    hld = compute_leaf_pointers(tree, decompose_heavy_paths(tree))
    v = tree.locus(b"ab")  # on the root path, heavy child spells "aba"
    child = tree.locus(b"aba")
    expect = sorted(set(tree.leaves_under(v).tolist()) - set(tree.leaves_under(child).tolist()))
    assert sorted(hld.leaf_pointers_at(v).tolist()) == expect


def test_unary_path_node_has_empty_pointers():
    # the path leaf keeps its own label: pointers there are always empty
    tree = build_suffix_tree(SAMPLE)
    hld = compute_leaf_pointers(tree, decompose_heavy_paths(tree))
    for p in range(hld.num_paths):
        nodes = hld.nodes_of_path(p)
        assert hld.leaf_pointers_at(int(nodes[-1])).size == 0


def test_leaf_pointers_partition_on_each_path(rng):
    texts = [b"aabaa"] + [random_text(rng, rng.randint(2, 40)) for _ in range(8)]
    for text in texts:
        tree = build_suffix_tree(text)
        hld = compute_leaf_pointers(tree, decompose_heavy_paths(tree))
        for p in range(hld.num_paths):
            nodes = hld.nodes_of_path(p).tolist()
            apex_leaves = set(tree.leaves_under(nodes[0]).tolist())
            seen = []
            for v in nodes:
                seen.extend(hld.leaf_pointers_at(v).tolist())
            survivor = int(tree.leaf_label[nodes[-1]])
            assert sorted(seen + [survivor]) == sorted(apex_leaves)
            assert len(seen) == len(set(seen))
