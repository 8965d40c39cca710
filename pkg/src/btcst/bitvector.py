"""Plain bitvectors and linear-scan balanced-parentheses primitives.

Positions are 1-based.  Position 0 is a virtual prefix of excess 0, so
``bwd_search`` may answer 0.  Searches that fail return ``None``.

The ``scan_*`` methods of :class:`ParenSeq` are deliberately naive: they
walk the excess array left to right (or right to left) and stop at the
first hit.  They are the reference that the block-tree topology is checked
against, so they must stay independent of it.
"""
from __future__ import annotations

from typing import Iterable, Optional

import numpy as np


def _as_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        bad = set(bits) - set("01()")
        if bad:
            raise ValueError(f"unexpected characters {sorted(bad)} in bit string")
        bits = [1 if ch in "1(" else 0 for ch in bits]
    arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("bitvector symbols must be 0 or 1")
    return arr


class BitVector:
    """Immutable bitvector with rank/select via a cumulative count array."""

    def __init__(self, bits: Iterable[int] | str | np.ndarray):
        self.bits = _as_bits(bits)
        self.length = int(self.bits.size)
        self._ones = np.zeros(self.length + 1, dtype=np.int64)
        np.cumsum(self.bits, out=self._ones[1:])

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} outside [1, {self.length}]")
        return int(self.bits[i - 1])

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def _check(self, i: int) -> None:
        if not 0 <= i <= self.length:
            raise IndexError(f"position {i} outside [0, {self.length}]")

    def rank(self, c: int, i: int) -> int:
        self._check(i)
        ones = int(self._ones[i])
        return ones if c else i - ones

    def select(self, c: int, j: int) -> Optional[int]:
        if j < 1:
            raise ValueError("select needs j >= 1")
        if c:
            if j > self._ones[-1]:
                return None
            return int(np.searchsorted(self._ones, j, side="left"))
        zeros = np.arange(self.length + 1) - self._ones
        if j > zeros[-1]:
            return None
        return int(np.searchsorted(zeros, j, side="left"))


class ParenSeq:
    """Balanced parentheses sequence P[1, 2t] with scan-based primitives."""

    def __init__(self, bits: Iterable[int] | str | np.ndarray, check: bool = True):
        self.bv = BitVector(bits)
        self.length = self.bv.length
        self.node_count = self.length // 2
        steps = self.bv.bits.astype(np.int64) * 2 - 1
        self.E = np.zeros(self.length + 1, dtype=np.int64)
        np.cumsum(steps, out=self.E[1:])
        b = self.bv.bits
        # pair_end[k] = 1 iff a "10" finishes at 1-based position k
        self.pair_end = np.zeros(self.length + 1, dtype=np.uint8)
        if self.length > 1:
            self.pair_end[2:] = (b[:-1] == 1) & (b[1:] == 0)
        if check:
            self._validate()

    def _validate(self) -> None:
        if self.length == 0 or self.length % 2:
            raise ValueError("parentheses sequence must have positive even length")
        if self.E[-1] != 0 or self.E[1:-1].min(initial=1) < 1:
            raise ValueError("sequence is not a single balanced tree")

    @property
    def bits(self) -> np.ndarray:
        return self.bv.bits

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return str(self.bv)

    def access(self, i: int) -> int:
        return self.bv[i]

    def rank(self, c: int, i: int) -> int:
        return self.bv.rank(c, i)

    def select(self, c: int, j: int) -> Optional[int]:
        return self.bv.select(c, j)

    def _check(self, i: int, lo: int = 0) -> None:
        if not lo <= i <= self.length:
            raise IndexError(f"position {i} outside [{lo}, {self.length}]")

    def excess(self, i: int) -> int:
        self._check(i)
        return int(self.E[i])

    def scan_fwd_search(self, i: int, d: int) -> Optional[int]:
        self._check(i)
        if d >= 0:
            raise ValueError("only d < 0 is supported")
        target = self.E[i] + d
        start, width = i + 1, 64
        while start <= self.length:
            window = self.E[start:start + width]
            hit = np.flatnonzero(window == target)
            if hit.size:
                return start + int(hit[0])
            start += width
            width *= 2
        return None

    def scan_bwd_search(self, i: int, d: int) -> Optional[int]:
        self._check(i)
        if d >= 0:
            raise ValueError("only d < 0 is supported")
        target = self.E[i] + d
        end, width = i, 64
        while end > 0:
            lo = max(0, end - width)
            hit = np.flatnonzero(self.E[lo:end] == target)
            if hit.size:
                return lo + int(hit[-1])
            end = lo
            width *= 2
        return None

    def scan_min_excess(self, i: int, j: int) -> int:
        self._check(i, 1)
        self._check(j, 1)
        if i > j:
            raise IndexError(f"empty range [{i}, {j}]")
        return int(self.E[i:j + 1].min() - self.E[i - 1])

    def scan_leaf_rank(self, i: int) -> int:
        self._check(i)
        return int(np.count_nonzero(self.pair_end[:i + 1]))

    def scan_leaf_select(self, j: int) -> Optional[int]:
        if j < 1:
            raise ValueError("leaf_select needs j >= 1")
        ends = np.flatnonzero(self.pair_end)
        if j > ends.size:
            return None
        return int(ends[j - 1]) - 1

    # tree navigation written directly over the scan primitives
    def close(self, v: int) -> int:
        return self.scan_fwd_search(v, -1)

    def parent(self, v: int) -> Optional[int]:
        j = self.scan_bwd_search(v, -2)
        return None if j is None else j + 1

    def next_sibling(self, v: int) -> Optional[int]:
        c = self.scan_fwd_search(v, -1)
        if c is None or c + 1 > self.length or self.bits[c] == 0:
            return None
        return c + 1

    def lca(self, v: int, u: int) -> int:
        if v > u:
            v, u = u, v
        if u <= self.close(v):
            return v
        m = self.scan_min_excess(v, u)
        # fwd_search(v-1, m) with m <= 0 equals fwd_search(v, m-1)
        return self.parent(self.scan_fwd_search(v, m - 1) + 1)
