"""Block Tree over a small-alphabet sequence.

Construction is shared with the parentheses topology (:mod:`btcst.btct`):
:func:`build_levels` decides, level by level, which blocks become
back-references to the leftmost earlier occurrence of their content.

A block at a level becomes a BackBlock when the leftmost occurrence of its
content starts strictly before it and every block that occurrence overlaps is
an InternalBlock.  Blocks are decided left to right, so targets are always
final when referenced.  Occurrences are only searched inside runs of adjacent
blocks that exist at the level, so a target always spans one block or two
neighbouring ones.  Levels above the first one holding a BackBlock are
dropped and the root points straight at that level.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

LEAF, INTERNAL, BACK = 0, 1, 2
KIND_NAMES = {LEAF: "LeafBlock", INTERNAL: "InternalBlock", BACK: "BackBlock"}

_PAD = 255
_HASH_BASE = 0x9E3779B97F4A7C15


@dataclass
class Level:
    blen: int
    starts: list[int]
    kinds: list[int]
    target: list[int] = field(default_factory=list)
    off: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.starts)


class _WindowHasher:
    """Polynomial fingerprints of every window of a given length, mod 2**64."""

    def __init__(self, seq: np.ndarray):
        n = seq.size
        base = np.uint64(_HASH_BASE)
        inv = np.uint64(pow(_HASH_BASE, -1, 1 << 64))
        with np.errstate(over="ignore"):
            self._pw = np.ones(n + 1, dtype=np.uint64)
            self._pw[1:] = np.cumprod(np.full(n, base, dtype=np.uint64))
            self._ipw = np.ones(n + 1, dtype=np.uint64)
            self._ipw[1:] = np.cumprod(np.full(n, inv, dtype=np.uint64))
            self._g = np.zeros(n + 1, dtype=np.uint64)
            np.cumsum((seq.astype(np.uint64) + np.uint64(1)) * self._pw[:n], out=self._g[1:])
        self.n = n

    def windows(self, length: int) -> np.ndarray:
        count = self.n - length + 1
        if count <= 0:
            return np.zeros(0, dtype=np.uint64)
        with np.errstate(over="ignore"):
            return (self._g[length:] - self._g[:count]) * self._ipw[:count]


def _decide_level(data: bytes, hasher: _WindowHasher, starts: list[int], blen: int, p: int):
    """Mark BackBlocks of one level; returns (kinds, target, off)."""
    m = len(starts)
    kinds = [INTERNAL] * m
    target = [-1] * m
    off = [0] * m
    nwin = p - blen + 1
    if nwin <= 1:
        return kinds, target, off
    st = np.asarray(starts, dtype=np.int64)
    cov = np.zeros(p + 1, dtype=np.int64)
    np.add.at(cov, np.minimum(st, p), 1)
    np.add.at(cov, np.minimum(st + blen, p), -1)
    covered = np.cumsum(cov[:p]) > 0
    cprefix = np.zeros(p + 1, dtype=np.int64)
    np.cumsum(covered, out=cprefix[1:])
    valid = (cprefix[blen:] - cprefix[:nwin]) == blen
    h = hasher.windows(blen)
    vpos = np.flatnonzero(valid)
    vh = h[vpos]
    uniq, first = np.unique(vh, return_index=True)
    for k, s in enumerate(starts):
        if s + blen > p:
            continue
        hs = h[s]
        q = int(vpos[first[np.searchsorted(uniq, hs)]])
        if q >= s:
            continue
        block = data[s:s + blen]
        if data[q:q + blen] != block:
            # fingerprint collision: walk the equal-hash windows in order
            for cand in vpos[vh == hs].tolist():
                if data[cand:cand + blen] == block:
                    q = cand
                    break
            if q >= s:
                continue
        w = bisect_right(starts, q) - 1
        o = q - starts[w]
        if kinds[w] == BACK:
            continue
        if o:
            if w + 1 >= k or kinds[w + 1] == BACK:
                continue
            assert starts[w + 1] == starts[w] + blen
        kinds[k] = BACK
        target[k] = w
        off[k] = o
    return kinds, target, off


def build_levels(seq: Sequence[int] | np.ndarray, r: int, mll: int) -> tuple[list[Level], int]:
    """Block decomposition of ``seq``; returns (retained levels, padded length).

    ``levels[0]`` holds the root's children.  Each InternalBlock at level d
    owns up to ``r`` consecutive entries of level d + 1, in order; fewer only
    at the right edge, where children would start past the end of ``seq``.
    """
    if r < 2:
        raise ValueError("arity r must be >= 2")
    if mll < 1:
        raise ValueError("max leaf length mll must be >= 1")
    seq = np.asarray(seq, dtype=np.uint8)
    p = int(seq.size)
    if p == 0:
        raise ValueError("cannot build a block tree over an empty sequence")
    if seq.max() >= _PAD:
        raise ValueError(f"symbols must be < {_PAD}")
    if p <= mll or p < r:
        return [Level(p, [0], [LEAF], [-1], [0])], p
    # leaves hold exactly mll symbols; P is padded to mll * r**height and
    # blocks lying wholly in the padding are not materialised
    height = 0
    while mll * r ** height < p:
        height += 1
    padded = mll * r ** height
    data = seq.tobytes()
    hasher = _WindowHasher(seq)
    levels: list[Level] = []
    parents = [0]
    blen = padded
    for depth in range(1, height + 1):
        blen //= r
        starts = [s + c * blen for s in parents for c in range(r) if s + c * blen < p]
        if blen <= mll:
            level = Level(blen, starts, [LEAF] * len(starts), [-1] * len(starts), [0] * len(starts))
        else:
            level = Level(blen, starts, *_decide_level(data, hasher, starts, blen, p))
        levels.append(level)
        parents = [s for s, kind in zip(level.starts, level.kinds) if kind == INTERNAL]
    first = next((d for d, lv in enumerate(levels) if BACK in lv.kinds), len(levels) - 1)
    return levels[first:], padded


def child_offsets(levels: list[Level]) -> list[list[tuple[int, int]]]:
    """For each level, the (first, end) slice of every InternalBlock's children
    in the next level; (-1, -1) for other kinds."""
    out = []
    for d, level in enumerate(levels):
        spans, nxt = [], 0
        below = levels[d + 1].starts if d + 1 < len(levels) else []
        for s, kind in zip(level.starts, level.kinds):
            if kind != INTERNAL:
                spans.append((-1, -1))
                continue
            first = nxt
            while nxt < len(below) and below[nxt] < s + level.blen:
                nxt += 1
            spans.append((first, nxt))
        out.append(spans)
    return out


class _Node:
    __slots__ = ("kind", "start", "size", "blen", "children", "target", "target_next",
                 "off", "counts", "pcounts", "data")


class BlockTree:
    """Block Tree with per-symbol counts, answering access/rank/select.

    Positions are 1-based; ``select`` returns None past the last occurrence.
    """

    def __init__(self, seq: Sequence[int] | np.ndarray | bytes | str, r: int = 2, mll: int = 16,
                 sigma: Optional[int] = None):
        if isinstance(seq, str):
            seq = seq.encode("latin-1")
        if isinstance(seq, (bytes, bytearray)):
            seq = np.frombuffer(bytes(seq), dtype=np.uint8)
        arr = np.asarray(seq, dtype=np.uint8)
        self.p = int(arr.size)
        self.r = r
        self.mll = mll
        self.sigma = int(arr.max()) + 1 if sigma is None else sigma
        self.levels, self.padded = build_levels(arr, r, mll)
        self._build_nodes(arr)

    def _build_nodes(self, arr: np.ndarray) -> None:
        p, sigma = self.p, self.sigma
        onehot = np.zeros((sigma, p + 1), dtype=np.int64)
        for c in range(sigma):
            np.cumsum(arr == c, out=onehot[c, 1:])
        firsts = child_offsets(self.levels)
        self.nodes: list[list[_Node]] = []
        for level in self.levels:
            row = []
            for s, kind in zip(level.starts, level.kinds):
                v = _Node()
                v.kind, v.start, v.blen = kind, s, level.blen
                v.size = max(0, min(level.blen, p - s))
                a, b = min(s, p), min(s + level.blen, p)
                v.counts = tuple(int(onehot[c, b] - onehot[c, a]) for c in range(sigma))
                v.children = v.target = v.target_next = v.pcounts = v.data = None
                v.off = 0
                if kind == LEAF:
                    v.data = arr[a:b].tobytes()
                row.append(v)
            self.nodes.append(row)
        for d, level in enumerate(self.levels):
            row = self.nodes[d]
            for k, v in enumerate(row):
                if v.kind == INTERNAL:
                    f, e = firsts[d][k]
                    v.children = self.nodes[d + 1][f:e]
                elif v.kind == BACK:
                    v.target = row[level.target[k]]
                    v.off = level.off[k]
                    if v.off:
                        v.target_next = row[level.target[k] + 1]
                    q = v.target.start
                    v.pcounts = tuple(int(onehot[c, q + v.off] - onehot[c, q]) for c in range(sigma))
        top = self.nodes[0]
        self.b0 = self.levels[0].blen
        self.top = top
        self._cum = [[0] for _ in range(sigma)]
        for v in top:
            for c in range(sigma):
                self._cum[c].append(self._cum[c][-1] + v.counts[c])

    # -- queries -----------------------------------------------------------
    def access(self, i: int) -> int:
        if not 1 <= i <= self.p:
            raise IndexError(f"position {i} outside [1, {self.p}]")
        x = i - 1
        k = x // self.b0
        v = self.top[k]
        x -= k * self.b0
        r = self.r
        while True:
            if v.kind == LEAF:
                return v.data[x]
            if v.kind == INTERNAL:
                cb = v.blen // r
                q = x // cb
                v = v.children[q]
                x -= q * cb
            else:
                x += v.off
                if x < v.blen:
                    v = v.target
                else:
                    x -= v.blen
                    v = v.target_next

    def _rank(self, v: _Node, c: int, x: int) -> int:
        if x <= 0:
            return 0
        if x >= v.size:
            return v.counts[c]
        if v.kind == LEAF:
            return v.data.count(bytes([c]), 0, x)
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            q = x // cb
            acc = sum(ch.counts[c] for ch in v.children[:q])
            return acc + self._rank(v.children[q], c, x - q * cb)
        z = v.off + x
        if z <= v.blen:
            return self._rank(v.target, c, z) - v.pcounts[c]
        return v.target.counts[c] - v.pcounts[c] + self._rank(v.target_next, c, z - v.blen)

    def rank(self, c: int, i: int) -> int:
        if not 0 <= i <= self.p:
            raise IndexError(f"position {i} outside [0, {self.p}]")
        if not 0 <= c < self.sigma:
            return 0
        k = min(i // self.b0, len(self.top) - 1)
        return self._cum[c][k] + self._rank(self.top[k], c, i - k * self.b0)

    def _select(self, v: _Node, c: int, j: int) -> int:
        if v.kind == LEAF:
            pos = -1
            needle = bytes([c])
            for _ in range(j):
                pos = v.data.find(needle, pos + 1)
            return pos
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            for q, ch in enumerate(v.children):
                if j <= ch.counts[c]:
                    return q * cb + self._select(ch, c, j)
                j -= ch.counts[c]
            raise AssertionError("select descended into a node without enough symbols")
        pf = v.pcounts[c]
        fb = v.target.counts[c] - pf
        if j <= fb:
            return self._select(v.target, c, pf + j) - v.off
        return v.blen - v.off + self._select(v.target_next, c, j - fb)

    def select(self, c: int, j: int) -> Optional[int]:
        if j < 1:
            raise ValueError("select needs j >= 1")
        if not 0 <= c < self.sigma or j > self._cum[c][-1]:
            return None
        k = bisect_left(self._cum[c], j) - 1
        return k * self.b0 + self._select(self.top[k], c, j - self._cum[c][k]) + 1

    # -- introspection -----------------------------------------------------
    def node_count(self) -> int:
        """Stored nodes plus the root."""
        return 1 + sum(len(level) for level in self.levels)

    def back_blocks(self):
        """Yield (level index, node) for every BackBlock."""
        for d, row in enumerate(self.nodes):
            for v in row:
                if v.kind == BACK:
                    yield d, v
