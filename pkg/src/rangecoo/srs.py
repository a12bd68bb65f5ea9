"""Sorted range selection over a fixed array.

Given A and a query ([x1, x2], k), report the k smallest values of
A[x1..x2] in non-decreasing order together with their positions, ties by
smaller position.  Built on a range-minimum structure (per-block minima plus
a sparse table over the blocks, so memory stays linear) and heap splitting:
pop the interval minimum, push the two flanking subintervals.  Queries cost
O(k log k) instead of the optimal O(k); output contract is unchanged.
"""

from __future__ import annotations

import heapq

import numpy as np

BLOCK = 16


class SortedRangeSelect:
    """Immutable index over an array answering sorted k-smallest range queries."""

    def __init__(self, values):
        vals = np.asarray(values)
        if vals.dtype.kind not in "iuf":
            vals = vals.astype(np.float64)
        self.values = vals
        n = len(vals)
        self.size = n
        nb = (n + BLOCK - 1) // BLOCK
        if n:
            pad = nb * BLOCK - n
            padded = np.concatenate([vals, np.full(pad, vals.max(), vals.dtype)])
            grid = padded.reshape(nb, BLOCK)
            arg = grid.argmin(axis=1)
            block_pos = (arg + np.arange(nb, dtype=np.int64) * BLOCK).astype(np.int64)
            # guard: an all-pad block cannot occur (pad < BLOCK), but the pad
            # value could win argmin inside the last block only by equalling
            # the true minimum, in which case an earlier position exists
            last_lo = (nb - 1) * BLOCK
            if block_pos[-1] >= n:
                block_pos[-1] = last_lo + int(vals[last_lo:n].argmin())
        else:
            block_pos = np.empty(0, dtype=np.int64)
        # sparse table of argmin positions over blocks; ties keep the left
        # (smaller-position) candidate
        table = [block_pos]
        span = 1
        while span * 2 <= nb:
            prev = table[-1]
            left = prev[: len(prev) - span]
            right = prev[span:]
            take_right = vals[right] < vals[left]
            table.append(np.where(take_right, right, left))
            span *= 2
        self._table = table

    # -- internal 0-based inclusive range helpers -------------------------

    def _argmin0(self, lo: int, hi: int) -> int:
        vals = self.values
        b1 = lo // BLOCK
        b2 = hi // BLOCK
        if b2 - b1 < 2:
            return lo + int(vals[lo : hi + 1].argmin())
        best = lo + int(vals[lo : (b1 + 1) * BLOCK].argmin())
        fb1, fb2 = b1 + 1, b2 - 1
        level = (fb2 - fb1 + 1).bit_length() - 1
        row = self._table[level]
        for cand in (int(row[fb1]), int(row[fb2 - (1 << level) + 1])):
            if vals[cand] < vals[best] or (vals[cand] == vals[best] and cand < best):
                best = cand
        tail = b2 * BLOCK + int(vals[b2 * BLOCK : hi + 1].argmin())
        if vals[tail] < vals[best]:
            best = tail
        return best

    def _k_smallest0(self, lo: int, hi: int, k: int) -> list[tuple]:
        """k smallest of values[lo..hi] as (value, position), 0-based."""
        if k <= 0 or lo > hi:
            return []
        vals = self.values
        pos = self._argmin0(lo, hi)
        heap = [(vals[pos], pos, lo, hi)]
        out = []
        while heap and len(out) < k:
            v, p, a, b = heapq.heappop(heap)
            out.append((v, p))
            if a <= p - 1:
                q = self._argmin0(a, p - 1)
                heapq.heappush(heap, (vals[q], q, a, p - 1))
            if p + 1 <= b:
                q = self._argmin0(p + 1, b)
                heapq.heappush(heap, (vals[q], q, p + 1, b))
        return out

    # -- public 1-based API ------------------------------------------------

    def rmq(self, x1: int, x2: int) -> int:
        """1-based position of the minimum of A[x1..x2], ties leftmost."""
        self._check_range(x1, x2)
        return self._argmin0(x1 - 1, x2 - 1) + 1

    def report_k_smallest(self, x1: int, x2: int, k: int) -> list[tuple]:
        """k smallest values of A[x1..x2] in sorted order as (value, position).

        Returns min(k, range size) entries; an empty range (x1 > x2) yields
        []. Raises ValueError for a nonempty range outside the array.
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        if x1 > x2:
            return []
        self._check_range(x1, x2)
        raw = self._k_smallest0(x1 - 1, x2 - 1, k)
        return [(self._pyval(v), p + 1) for v, p in raw]

    def _check_range(self, x1: int, x2: int) -> None:
        if x1 < 1 or x2 > self.size:
            raise ValueError(f"range [{x1}, {x2}] outside array of size {self.size}")

    def _pyval(self, v):
        return v.item() if isinstance(v, np.generic) else v


def build_srs(values) -> SortedRangeSelect:
    return SortedRangeSelect(values)
