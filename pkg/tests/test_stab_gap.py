import math
import random

from rangecoo.segments import HSegment, make_pair
from rangecoo.stab_gap import GapStabber, build_gap_stabber, query_gap_stab

EXAMPLE = [
    HSegment(0, 2, 5, 10, make_pair(10, 15)),
    HSegment(1, 3, 2, 4, make_pair(4, 6)),
    HSegment(2, 2, 7, 1, make_pair(1, 8)),
]


def random_instance(rng, max_segs=60, max_x=30, max_y=20, max_w=25):
    m = rng.randint(0, max_segs)
    out = []
    for _ in range(m):
        l = rng.randint(0, max_x)
        r = rng.randint(l, max_x)
        out.append(HSegment(l, r, rng.randint(0, max_y), rng.randint(0, max_w), None))
    return out


def brute_ids(I, x, w1, w2, y1, y2):
    cands = [
        (s.y, s.weight, i)
        for i, s in enumerate(I)
        if s.l <= x <= s.r and w1 <= s.weight <= w2 and y1 <= s.y <= y2
    ]
    return [i for _, _, i in sorted(cands)]


def test_empty_instance():
    gs = build_gap_stabber([])
    assert query_gap_stab(gs, 0, 0, 9, 0, 9) == []


def test_worked_example():
    gs = build_gap_stabber(EXAMPLE)
    assert query_gap_stab(gs, 2, 1, 10, 3, 8) == [EXAMPLE[0], EXAMPLE[2]]
    assert query_gap_stab(gs, 2, 1, 10, 8, 9) == []
    assert query_gap_stab(gs, 3, 4, 4, 2, 2) == [EXAMPLE[1]]


def test_canonical_decomposition_covers_weight_range():
    # three same-range segments share their canonical nodes, so one node
    # holds all three points; the weight range [1, 10] covers them exactly
    I = [
        HSegment(0, 2, 5, 10, None),
        HSegment(0, 2, 2, 4, None),
        HSegment(0, 2, 7, 1, None),
    ]
    gs = build_gap_stabber(I)
    sl = gs.slabs
    hit = False
    for v, tree in gs._trees.items():
        s, e = sl.node_slice(v)
        if e - s != 3:
            continue
        hit = True
        blocks = tree.canonical_blocks(0, 3)
        covered = sorted(p for _, bs, be in blocks for p in range(bs, be))
        assert covered == [0, 1, 2]
    assert hit


def test_canonical_block_count_and_coverage_random():
    rng = random.Random(13)
    for _ in range(30):
        I = random_instance(rng, max_segs=80)
        gs = GapStabber.from_segments(I)
        for tree in gs._trees.values():
            m = tree.m
            for _ in range(6):
                lo = rng.randint(0, m)
                hi = rng.randint(lo, m)
                blocks = tree.canonical_blocks(lo, hi)
                covered = sorted(p for _, bs, be in blocks for p in range(bs, be))
                assert covered == list(range(lo, hi))
                if m > 1:
                    assert len(blocks) <= 2 * math.ceil(math.log2(m))


def test_duplicate_weights_are_both_retained():
    I = [HSegment(0, 2, 5, 4, None), HSegment(0, 2, 3, 4, None)]
    gs = build_gap_stabber(I)
    assert gs.query_ids(1, 4, 4, 0, 9) == [1, 0]


def test_randomized_equivalence():
    rng = random.Random(10)
    for trial in range(200):
        I = random_instance(rng)
        gs = GapStabber.from_segments(I)
        for x in range(-1, 32):
            w1 = rng.randint(-2, 26)
            w2 = rng.randint(w1 - 1, 27)
            y1 = rng.randint(-2, 21)
            y2 = rng.randint(y1 - 1, 22)
            got = gs.query_ids(x, w1, w2, y1, y2)
            assert got == brute_ids(I, x, w1, w2, y1, y2)


def test_output_streamed_in_sorted_order():
    rng = random.Random(11)
    for _ in range(40):
        I = random_instance(rng, max_segs=100)
        gs = GapStabber.from_segments(I)
        x = rng.randint(0, 31)
        got = gs.query(x, 0, 30, 0, 25)
        keys = [(s.y, s.weight) for s in got]
        assert keys == sorted(keys)
        assert len(got) == len(brute_ids(I, x, 0, 30, 0, 25))


def test_each_point_appears_once_per_level():
    rng = random.Random(12)
    for _ in range(20):
        I = random_instance(rng, max_segs=80)
        gs = GapStabber.from_segments(I)
        for tree in gs._trees.values():
            m = tree.m
            for level_items in tree.levels:
                assert sorted(level_items) == sorted(tree.levels[0])
            assert len(tree.levels) <= math.ceil(math.log2(m)) + 1 if m > 1 else True


def test_empty_bands():
    gs = build_gap_stabber(EXAMPLE)
    assert gs.query(2, 5, 4, 0, 9) == []
    assert gs.query(2, 1, 10, 9, 8) == []
