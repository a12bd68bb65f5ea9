"""Brute-force reference implementations of the query semantics.

Everything here works by direct scanning and deliberately shares no code
with the index structures, so the two sides have independent failure modes.
Used as ground truth by the test suites and the ``verify`` CLI command.
"""

from __future__ import annotations

from rangecoo.segments import ConsOcc, make_pair
from rangecoo.text_index import TextLike, as_text


def occurrences(text: TextLike, pattern: TextLike) -> list[int]:
    """All match positions (1-based) of pattern in text, increasing."""
    t = as_text(text)
    p = as_text(pattern)
    if len(p) == 0:
        raise ValueError("pattern must be nonempty")
    out = []
    pos = t.find(p)
    while pos != -1:
        out.append(pos + 1)
        pos = t.find(p, pos + 1)
    return out


def cons_pairs(text: TextLike, pattern: TextLike, a: int, b: int) -> list[ConsOcc]:
    """Consecutive occurrence pairs of pattern within the window T[a..b].

    Occurrences are restricted to starts in [a, b-m+1] (matches must fit in
    the window); pairs are adjacent elements of that restricted list.
    """
    t = as_text(text)
    if not 1 <= a <= b <= len(t):
        raise ValueError(f"malformed window [{a}, {b}] for text of length {len(t)}")
    m = len(as_text(pattern))
    hi = b - m + 1
    occ = [i for i in occurrences(t, pattern) if a <= i <= hi]
    return [make_pair(i, j) for i, j in zip(occ, occ[1:])]


def topk_oracle(text: TextLike, pattern: TextLike, a: int, b: int, k: int) -> list[ConsOcc]:
    if k < 0:
        raise ValueError("k must be >= 0")
    pairs = sorted(cons_pairs(text, pattern, a, b), key=lambda c: (c.dist, c.i))
    return pairs[:k]


def gap_oracle(
    text: TextLike, pattern: TextLike, a: int, b: int, g1: int, g2: int
) -> list[ConsOcc]:
    pairs = sorted(cons_pairs(text, pattern, a, b), key=lambda c: (c.dist, c.i))
    return [c for c in pairs if g1 <= c.dist <= g2]
