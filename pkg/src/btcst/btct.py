"""Block Tree Compressed Topology: a Block Tree over a BP sequence whose
nodes carry excess and leaf summaries for tree navigation.

Every node stores ``rank1``, ``lrank``, ``lbreaker`` and ``mexcess`` over
its block.  A BackBlock pointing at offset ``off`` of node ``u`` also
stores, for the part of its source that lies in ``u``: ``fb_rank1``,
``fb_lrank``, ``fb_lbreaker``, the flag ``m_fb`` and one minimum
(``xmexcess``).  With ``m_fb`` set, the block minimum is reached in the
first part, so ``fb_mexcess == mexcess`` and ``xmexcess`` holds
``sb_mexcess``; otherwise ``xmexcess`` holds ``fb_mexcess`` and
``sb_mexcess == mexcess - fb_excess``.

Positions follow :class:`btcst.bitvector.ParenSeq`: 1-based, with a virtual
position 0 of excess 0.  Only searches with ``d < 0`` are supported.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Optional

import numpy as np

from .bitvector import ParenSeq
from .blocktree import BACK, INTERNAL, LEAF, Level, build_levels, child_offsets
from .packed import packed_bits

_BIG = 1 << 62


def _byte_tables():
    exc, minpre, maxsuf = [], [], []
    for byte in range(256):
        steps = [1 if byte >> k & 1 else -1 for k in range(8)]
        acc, lo = 0, _BIG
        for s in steps:
            acc += s
            lo = min(lo, acc)
        exc.append(acc)
        minpre.append(lo)
        acc, hi = 0, -_BIG
        for s in reversed(steps):
            acc += s
            hi = max(hi, acc)
        maxsuf.append(hi)
    return exc, minpre, maxsuf


_EXC, _MINPRE, _MAXSUF = _byte_tables()


def _leaf_fwd(bits: int, lo: int, hi: int, e: int, d: int):
    x = lo
    while x < hi:
        if not x & 7 and x + 8 <= hi:
            byte = (bits >> x) & 0xFF
            if e + _MINPRE[byte] > d:
                e += _EXC[byte]
                x += 8
                continue
        e += 1 if (bits >> x) & 1 else -1
        if e == d:
            return x, e
        x += 1
    return -1, e


def _leaf_bwd(bits: int, lo: int, hi: int, e: int, d: int):
    x = hi - 1
    while x >= lo:
        if x & 7 == 7 and x - 7 >= lo:
            byte = (bits >> (x - 7)) & 0xFF
            if e - _MAXSUF[byte] > d:
                e -= _EXC[byte]
                x -= 8
                continue
        e -= 1 if (bits >> x) & 1 else -1
        if e == d:
            return x, e
        x -= 1
    return -1, e


def _leaf_minx(bits: int, lo: int, hi: int):
    m, acc, x = _BIG, 0, lo
    while x < hi:
        if not x & 7 and x + 8 <= hi:
            byte = (bits >> x) & 0xFF
            t = acc + _MINPRE[byte]
            if t < m:
                m = t
            acc += _EXC[byte]
            x += 8
            continue
        acc += 1 if (bits >> x) & 1 else -1
        if acc < m:
            m = acc
        x += 1
    return m, acc


def _nth_set_bit(mask: int, j: int) -> int:
    for _ in range(j - 1):
        mask &= mask - 1
    return (mask & -mask).bit_length() - 1


class BtctNode:
    __slots__ = ("kind", "start", "size", "blen", "children", "target", "target_next", "off",
                 "bits", "rank1", "lrank", "lbreaker", "mexcess",
                 "fb_rank1", "fb_lrank", "fb_lbreaker", "m_fb", "xmexcess")

    # fields computed on the fly
    @property
    def rank0(self) -> int:
        return self.size - self.rank1

    @property
    def excess(self) -> int:
        return 2 * self.rank1 - self.size

    @property
    def fb_rank0(self) -> int:
        return (self.blen - self.off) - self.fb_rank1

    @property
    def pfb_rank1(self) -> int:
        return self.target.rank1 - self.fb_rank1

    @property
    def pfb_rank0(self) -> int:
        return self.target.rank0 - self.fb_rank0

    @property
    def fb_excess(self) -> int:
        return self.fb_rank1 - self.fb_rank0

    @property
    def sb_excess(self) -> int:
        return self.excess - self.fb_excess

    @property
    def pfb_lrank(self) -> int:
        return self.target.lrank - self.fb_lrank

    @property
    def fb_mexcess(self) -> int:
        return self.mexcess if self.m_fb else self.xmexcess

    @property
    def sb_mexcess(self) -> Optional[int]:
        if not self.off:
            return None
        return self.xmexcess if self.m_fb else self.mexcess - self.fb_excess

    def __repr__(self) -> str:
        names = {LEAF: "Leaf", INTERNAL: "Internal", BACK: "Back"}
        return f"<{names[self.kind]} start={self.start} size={self.size}>"


class BTCT:
    """Navigable compressed parentheses sequence.

    >>> t = BTCT(ParenSeq("110100"), r=2, mll=2)
    >>> t.fwd_search(1, -1), t.bwd_search(4, -2), t.leaf_select(2)
    (6, 0, 4)
    """

    def __init__(self, bp: ParenSeq | str, r: int = 2, mll: int = 128):
        if not isinstance(bp, ParenSeq):
            bp = ParenSeq(bp)
        self.p = bp.length
        self.r = r
        self.mll = mll
        self.skips = True
        self.levels, self.padded = build_levels(bp.bits, r, mll)
        self._augment(bp)
        self._finish()

    @classmethod
    def from_parts(cls, p: int, r: int, mll: int, padded: int, blens: list[int],
                   arrays: dict[str, list[int]], leaf_bits: np.ndarray) -> "BTCT":
        """Rebuild from :meth:`field_arrays` output and the concatenated leaves."""
        self = cls.__new__(cls)
        self.p, self.r, self.mll, self.padded = p, r, mll, padded
        self.skips = True
        self.levels, self.nodes = [], []
        starts = list(range(0, p, blens[0]))
        pos = 0
        for d, blen in enumerate(blens):
            kinds = arrays[f"L{d}.kind"]
            if len(kinds) != len(starts):
                raise ValueError(f"level {d}: {len(kinds)} kinds for {len(starts)} blocks")
            target, off = [-1] * len(starts), [0] * len(starts)
            backs = [k for k, kind in enumerate(kinds) if kind == BACK]
            for name, dest in (("target", target), ("off", off)):
                for k, val in zip(backs, arrays[f"L{d}.{name}"]):
                    dest[k] = val
            self.levels.append(Level(blen, starts, list(kinds), target, off))
            cols = {name: arrays[f"L{d}.{name}"] for name in ("rank1", "lrank", "lbreaker", "mexcess")}
            bcols = {name: arrays[f"L{d}.{name}"] for name in ("fb_rank1", "fb_lrank", "fb_lbreaker", "m_fb", "xmexcess")}
            row, b = [], 0
            for k, (st, kind) in enumerate(zip(starts, kinds)):
                v = BtctNode()
                v.kind, v.start, v.blen = kind, st, blen
                v.size = min(st + blen, p) - st
                v.rank1, v.lrank = cols["rank1"][k], cols["lrank"][k]
                v.lbreaker, v.mexcess = cols["lbreaker"][k], 1 - cols["mexcess"][k]
                v.children = v.target = v.target_next = None
                v.off = v.fb_rank1 = v.fb_lrank = v.fb_lbreaker = v.m_fb = v.xmexcess = 0
                v.bits = 0
                if kind == BACK:
                    v.off = off[k]
                    v.fb_rank1, v.fb_lrank = bcols["fb_rank1"][b], bcols["fb_lrank"][b]
                    v.fb_lbreaker, v.m_fb = bcols["fb_lbreaker"][b], bcols["m_fb"][b]
                    v.xmexcess = 1 - bcols["xmexcess"][b]
                    b += 1
                elif kind == LEAF:
                    chunk = leaf_bits[pos:pos + v.size]
                    pos += v.size
                    v.bits = int.from_bytes(np.packbits(chunk, bitorder="little").tobytes(), "little")
                row.append(v)
            self.nodes.append(row)
            if d + 1 < len(blens):
                nb = blens[d + 1]
                starts = [st + c * nb for st, kind in zip(starts, kinds) if kind == INTERNAL
                          for c in range(blen // nb) if st + c * nb < p]
        if pos != leaf_bits.size:
            raise ValueError("leaf payload length does not match the level layout")
        self._finish()
        return self

    # -- construction --------------------------------------------------------
    def _augment(self, bp: ParenSeq) -> None:
        p = self.p
        bits = bp.bits
        E = bp.E
        ones = np.zeros(p + 1, dtype=np.int64)
        np.cumsum(bits, out=ones[1:])
        end0 = bp.pair_end[1:]               # end0[k]: a "10" finishes at 0-based bit k
        ends = np.zeros(p + 1, dtype=np.int64)
        np.cumsum(end0, out=ends[1:])

        def mex(a: int, b: int) -> int:
            return int(E[a + 1:b + 1].min() - E[a]) if b > a else 0

        self.nodes: list[list[BtctNode]] = []
        for level in self.levels:
            row = []
            for s, kind in zip(level.starts, level.kinds):
                v = BtctNode()
                v.kind, v.start, v.blen = kind, s, level.blen
                a, b = min(s, p), min(s + level.blen, p)
                v.size = b - a
                v.rank1 = int(ones[b] - ones[a])
                v.lrank = int(ends[b] - ends[a])
                v.lbreaker = int(end0[a]) if a < p else 0
                v.mexcess = mex(a, b)
                v.children = v.target = v.target_next = None
                v.off = v.fb_rank1 = v.fb_lrank = v.fb_lbreaker = v.m_fb = v.xmexcess = 0
                v.bits = 0
                if kind == LEAF and b > a:
                    packed = np.packbits(bits[a:b], bitorder="little").tobytes()
                    v.bits = int.from_bytes(packed, "little")
                row.append(v)
            self.nodes.append(row)
        for d, level in enumerate(self.levels):
            row = self.nodes[d]
            for k, v in enumerate(row):
                if v.kind != BACK:
                    continue
                w, o = level.target[k], level.off[k]
                u = row[w]
                q, ub = u.start + o, u.start + v.blen
                v.off = o
                v.fb_rank1 = int(ones[ub] - ones[q])
                v.fb_lrank = int(ends[ub] - ends[q])
                v.fb_lbreaker = int(end0[q])
                fbm = mex(q, ub)
                v.m_fb = int(v.mexcess == fbm)
                if v.m_fb:
                    v.xmexcess = mex(ub, q + v.blen) if o else 0
                else:
                    v.xmexcess = fbm

    def _finish(self) -> None:
        """Wire pointers and build the root directory."""
        firsts = child_offsets(self.levels)
        for d, level in enumerate(self.levels):
            row = self.nodes[d]
            for k, v in enumerate(row):
                if v.kind == INTERNAL:
                    f, e = firsts[d][k]
                    v.children = self.nodes[d + 1][f:e]
                elif v.kind == BACK:
                    v.target = row[level.target[k]]
                    v.target_next = row[level.target[k] + 1] if v.off else None
        top = self.nodes[0]
        self.top = top
        self.b0 = self.levels[0].blen
        self._cum_rank1 = [0]
        self._cum_lrank = [0]
        self._cum_size = [0]
        for v in top:
            self._cum_rank1.append(self._cum_rank1[-1] + v.rank1)
            self._cum_lrank.append(self._cum_lrank[-1] + v.lrank)
            self._cum_size.append(self._cum_size[-1] + v.size)
        c1 = np.asarray(self._cum_rank1, dtype=np.int64)
        cs = np.asarray(self._cum_size, dtype=np.int64)
        self._eb = 2 * c1 - cs                  # excess before each top child
        mex = np.asarray([v.mexcess for v in top], dtype=np.int64)
        sizes = np.asarray([v.size for v in top], dtype=np.int64)
        self._fmin = np.where(sizes > 0, self._eb[:-1] + mex, _BIG)
        self._bmin = np.where(sizes > 0, self._eb[:-1] + np.minimum(mex, 0), _BIG)
        self._eb_list = self._eb.tolist()

    # -- basic queries ---------------------------------------------------------
    def __len__(self) -> int:
        return self.p

    def _check(self, i: int, lo: int = 0) -> None:
        if not lo <= i <= self.p:
            raise IndexError(f"position {i} outside [{lo}, {self.p}]")

    def _top(self, i: int):
        k = i // self.b0
        if k >= len(self.top):
            k = len(self.top) - 1
        return k, i - k * self.b0

    def access(self, i: int) -> int:
        self._check(i, 1)
        k, x = self._top(i - 1)
        v = self.top[k]
        r = self.r
        while True:
            if v.kind == LEAF:
                return (v.bits >> x) & 1
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

    def _r1(self, v: BtctNode, x: int) -> int:
        if x <= 0:
            return 0
        if x >= v.size:
            return v.rank1
        if v.kind == LEAF:
            return (v.bits & ((1 << x) - 1)).bit_count()
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            q = x // cb
            acc = 0
            for ch in v.children[:q]:
                acc += ch.rank1
            return acc + self._r1(v.children[q], x - q * cb)
        u = v.target
        z = v.off + x
        if z <= v.blen:
            return self._r1(u, z) - (u.rank1 - v.fb_rank1)
        return v.fb_rank1 + self._r1(v.target_next, z - v.blen)

    def rank(self, c: int, i: int) -> int:
        self._check(i)
        k, x = self._top(i)
        ones = self._cum_rank1[k] + self._r1(self.top[k], x)
        return ones if c else i - ones

    def excess(self, i: int) -> int:
        self._check(i)
        k, x = self._top(i)
        return 2 * (self._cum_rank1[k] + self._r1(self.top[k], x)) - i

    def _sel(self, v: BtctNode, c: int, j: int) -> int:
        if v.kind == LEAF:
            mask = v.bits if c else ~v.bits & ((1 << v.size) - 1)
            return _nth_set_bit(mask, j)
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            for q, ch in enumerate(v.children):
                cnt = ch.rank1 if c else ch.size - ch.rank1
                if j <= cnt:
                    return q * cb + self._sel(ch, c, j)
                j -= cnt
            raise AssertionError("select ran past an InternalBlock")
        u = v.target
        fb = v.fb_rank1 if c else (v.blen - v.off) - v.fb_rank1
        pf = (u.rank1 if c else u.size - u.rank1) - fb
        if j <= fb:
            return self._sel(u, c, pf + j) - v.off
        return v.blen - v.off + self._sel(v.target_next, c, j - fb)

    def select(self, c: int, j: int) -> Optional[int]:
        if j < 1:
            raise ValueError("select needs j >= 1")
        cum = self._cum_rank1 if c else [s - o for s, o in zip(self._cum_size, self._cum_rank1)]
        if j > cum[-1]:
            return None
        k = bisect_left(cum, j) - 1
        return k * self.b0 + self._sel(self.top[k], c, j - cum[k]) + 1

    # -- leaf rank / select ----------------------------------------------------
    def _lr(self, v: BtctNode, x: int) -> int:
        if x <= 0:
            return 0
        if x >= v.size:
            return v.lrank
        if v.kind == LEAF:
            b = v.bits
            return ((b << 1) & ~b & ((1 << x) - 1)).bit_count() + v.lbreaker
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            q = x // cb
            acc = 0
            for ch in v.children[:q]:
                acc += ch.lrank
            return acc + self._lr(v.children[q], x - q * cb)
        u = v.target
        z = v.off + x
        adj = v.lbreaker - v.fb_lbreaker
        if z <= v.blen:
            return self._lr(u, z) - (u.lrank - v.fb_lrank) + adj
        return v.fb_lrank + self._lr(v.target_next, z - v.blen) + adj

    def leaf_rank(self, i: int) -> int:
        self._check(i)
        k, x = self._top(i)
        return self._cum_lrank[k] + self._lr(self.top[k], x)

    def _ls(self, v: BtctNode, j: int) -> int:
        if v.kind == LEAF:
            b = v.bits
            return _nth_set_bit((b << 1) & ~b & ((1 << v.size) - 1) | v.lbreaker, j)
        if v.kind == INTERNAL:
            cb = v.blen // self.r
            for q, ch in enumerate(v.children):
                if j <= ch.lrank:
                    return q * cb + self._ls(ch, j)
                j -= ch.lrank
            raise AssertionError("leaf_select ran past an InternalBlock")
        if v.lbreaker and j == 1:
            return 0
        u = v.target
        j += v.fb_lbreaker - v.lbreaker
        if j <= v.fb_lrank:
            return self._ls(u, u.lrank - v.fb_lrank + j) - v.off
        return v.blen - v.off + self._ls(v.target_next, j - v.fb_lrank)

    def leaf_select(self, j: int) -> Optional[int]:
        if j < 1:
            raise ValueError("leaf_select needs j >= 1")
        cum = self._cum_lrank
        if j > cum[-1]:
            return None
        k = bisect_left(cum, j) - 1
        # 0-based index of the closing bit is the 1-based index of the opening one
        return k * self.b0 + self._ls(self.top[k], j - cum[k])

    # -- excess searches -------------------------------------------------------
    def _fwd(self, v: BtctNode, lo: int, hi: int, e: int, d: int):
        if lo == 0 and hi == v.size and self.skips and e + v.mexcess > d:
            return -1, e + 2 * v.rank1 - v.size
        kind = v.kind
        if kind == LEAF:
            return _leaf_fwd(v.bits, lo, hi, e, d)
        if kind == INTERNAL:
            cb = v.blen // self.r
            q, last = lo // cb, (hi - 1) // cb
            children = v.children
            while q <= last:
                base = q * cb
                clo = lo - base if lo > base else 0
                chi = hi - base if hi - base < cb else cb
                pos, e = self._fwd(children[q], clo, chi, e, d)
                if pos >= 0:
                    return base + pos, e
                q += 1
            return -1, e
        off, blen = v.off, v.blen
        a, z = off + lo, off + hi
        fbx = 2 * v.fb_rank1 - (blen - off)
        if a < blen:
            end = z if z < blen else blen
            if (a == off and end == blen and self.skips
                    and e + (v.mexcess if v.m_fb else v.xmexcess) > d):
                e += fbx
            else:
                pos, e = self._fwd(v.target, a, end, e, d)
                if pos >= 0:
                    return pos - off, e
        if z > blen:
            s2 = a - blen if a > blen else 0
            sbx = 2 * v.rank1 - blen - fbx
            if (s2 == 0 and hi == blen and self.skips
                    and e + (v.xmexcess if v.m_fb else v.mexcess - fbx) > d):
                return -1, e + sbx
            pos, e = self._fwd(v.target_next, s2, z - blen, e, d)
            if pos >= 0:
                return pos + blen - off, e
        return -1, e

    def _bwd(self, v: BtctNode, lo: int, hi: int, e: int, d: int):
        if lo == 0 and hi == v.size and self.skips:
            ex = 2 * v.rank1 - v.size
            m = v.mexcess
            if e - ex + (m if m < 0 else 0) > d:
                return -1, e - ex
        kind = v.kind
        if kind == LEAF:
            return _leaf_bwd(v.bits, lo, hi, e, d)
        if kind == INTERNAL:
            cb = v.blen // self.r
            q, first = (hi - 1) // cb, lo // cb
            children = v.children
            while q >= first:
                base = q * cb
                clo = lo - base if lo > base else 0
                chi = hi - base if hi - base < cb else cb
                pos, e = self._bwd(children[q], clo, chi, e, d)
                if pos >= 0:
                    return base + pos, e
                q -= 1
            return -1, e
        off, blen = v.off, v.blen
        a, z = off + lo, off + hi
        fbx = 2 * v.fb_rank1 - (blen - off)
        if z > blen:
            s2 = a - blen if a > blen else 0
            sbx = 2 * v.rank1 - blen - fbx
            skip = False
            if s2 == 0 and hi == blen and self.skips:
                sbm = v.xmexcess if v.m_fb else v.mexcess - fbx
                skip = e - sbx + (sbm if sbm < 0 else 0) > d
            if skip:
                e -= sbx
            else:
                pos, e = self._bwd(v.target_next, s2, z - blen, e, d)
                if pos >= 0:
                    return pos + blen - off, e
        if a < blen:
            end = z if z < blen else blen
            skip = False
            if a == off and end == blen and self.skips:
                fbm = v.mexcess if v.m_fb else v.xmexcess
                skip = e - fbx + (fbm if fbm < 0 else 0) > d
            if skip:
                e -= fbx
            else:
                pos, e = self._bwd(v.target, a, end, e, d)
                if pos >= 0:
                    return pos - off, e
        return -1, e

    def _minx(self, v: BtctNode, lo: int, hi: int):
        if lo == 0 and hi == v.size and self.skips:
            return v.mexcess, 2 * v.rank1 - v.size
        kind = v.kind
        if kind == LEAF:
            return _leaf_minx(v.bits, lo, hi)
        if kind == INTERNAL:
            cb = v.blen // self.r
            q, last = lo // cb, (hi - 1) // cb
            children = v.children
            m, acc = _BIG, 0
            while q <= last:
                base = q * cb
                clo = lo - base if lo > base else 0
                chi = hi - base if hi - base < cb else cb
                cm, cx = self._minx(children[q], clo, chi)
                if acc + cm < m:
                    m = acc + cm
                acc += cx
                q += 1
            return m, acc
        off, blen = v.off, v.blen
        a, z = off + lo, off + hi
        fbx = 2 * v.fb_rank1 - (blen - off)
        m, acc = _BIG, 0
        if a < blen:
            end = z if z < blen else blen
            if a == off and end == blen and self.skips:
                m, acc = (v.mexcess if v.m_fb else v.xmexcess), fbx
            else:
                m, acc = self._minx(v.target, a, end)
        if z > blen:
            s2 = a - blen if a > blen else 0
            if s2 == 0 and hi == blen and self.skips:
                cm = v.xmexcess if v.m_fb else v.mexcess - fbx
                cx = 2 * v.rank1 - blen - fbx
            else:
                cm, cx = self._minx(v.target_next, s2, z - blen)
            if acc + cm < m:
                m = acc + cm
            acc += cx
        return m, acc

    def fwd_search(self, i: int, d: int) -> Optional[int]:
        """Smallest j > i with excess(j) = excess(i) + d, or None."""
        self._check(i)
        if d >= 0:
            raise ValueError("only d < 0 is supported")
        if i == self.p:
            return None
        k0, x = self._top(i)
        top = self.top
        pos, e = self._fwd(top[k0], x, top[k0].size, 0, d)
        if pos >= 0:
            return k0 * self.b0 + pos + 1
        if k0 + 1 >= len(top):
            return None
        base = self._eb_list[k0 + 1] - e         # excess(i)
        seg = self._fmin[k0 + 1:]
        idx = int(np.argmax(seg <= base + d))
        if seg[idx] > base + d:
            return None
        k = k0 + 1 + idx
        pos, _ = self._fwd(top[k], 0, top[k].size, self._eb_list[k] - base, d)
        return k * self.b0 + pos + 1

    def bwd_search(self, i: int, d: int) -> Optional[int]:
        """Largest j < i with excess(j) = excess(i) + d, or None."""
        self._check(i)
        if d >= 0:
            raise ValueError("only d < 0 is supported")
        if i == 0:
            return None
        k0, x = self._top(i - 1)
        top = self.top
        pos, e = self._bwd(top[k0], 0, x + 1, 0, d)
        if pos >= 0:
            return k0 * self.b0 + pos
        if k0 == 0:
            return None
        base = self._eb_list[k0] - e             # excess(i)
        hits = np.flatnonzero(self._bmin[:k0] <= base + d)
        if not hits.size:
            return None
        k = int(hits[-1])
        pos, _ = self._bwd(top[k], 0, top[k].size, self._eb_list[k + 1] - base, d)
        return k * self.b0 + pos

    def min_excess(self, i: int, j: int) -> int:
        """min over k in [i, j] of excess(k) - excess(i - 1)."""
        self._check(i, 1)
        self._check(j, 1)
        if i > j:
            raise IndexError(f"empty range [{i}, {j}]")
        b0, top = self.b0, self.top
        k0, x0 = self._top(i - 1)
        k1, _ = self._top(j - 1)
        if k0 == k1:
            return self._minx(top[k0], x0, j - k0 * b0)[0]
        m, ex = self._minx(top[k0], x0, top[k0].size)
        base = self._eb_list[k0 + 1] - ex        # excess(i - 1)
        if k1 > k0 + 1:
            m = min(m, int(self._fmin[k0 + 1:k1].min()) - base)
        m1, _ = self._minx(top[k1], 0, j - k1 * b0)
        return min(m, self._eb_list[k1] - base + m1)

    # -- navigation helpers used by the suffix tree ----------------------------
    def close(self, v: int) -> int:
        return self.fwd_search(v, -1)

    def parent(self, v: int) -> Optional[int]:
        j = self.bwd_search(v, -2)
        return None if j is None else j + 1

    # -- introspection -----------------------------------------------------------
    def node_count(self) -> int:
        return 1 + sum(len(row) for row in self.nodes)

    def iter_nodes(self):
        for d, row in enumerate(self.nodes):
            for v in row:
                yield d, v

    def count_visits(self, fn, *args) -> tuple[object, int]:
        """Run ``fn(*args)`` and count recursive node visits made meanwhile."""
        counter = [0]
        names = ("_fwd", "_bwd", "_minx", "_r1", "_lr", "_ls", "_sel")
        for name in names:
            method = getattr(self, name)

            def wrapped(*a, _m=method):
                counter[0] += 1
                return _m(*a)
            setattr(self, name, wrapped)
        try:
            result = fn(*args)
        finally:
            for name in names:
                delattr(self, name)
        return result, counter[0]

    def field_arrays(self) -> list[tuple[str, list[int]]]:
        """Stored fields as named unsigned integer vectors.

        This is the representation both the space report and the index file
        use: every vector is packed at the bit width of its largest entry.
        Signed minima are stored as ``1 - m`` (a minimum never exceeds 1).
        """
        out: list[tuple[str, list[int]]] = []
        for d, row in enumerate(self.nodes):
            out.append((f"L{d}.kind", [v.kind for v in row]))
            out.append((f"L{d}.rank1", [v.rank1 for v in row]))
            out.append((f"L{d}.lrank", [v.lrank for v in row]))
            out.append((f"L{d}.lbreaker", [v.lbreaker for v in row]))
            out.append((f"L{d}.mexcess", [1 - v.mexcess for v in row]))
            backs = [(k, v) for k, v in enumerate(row) if v.kind == BACK]
            index = {id(v): k for k, v in enumerate(row)}
            out.append((f"L{d}.target", [index[id(v.target)] for _, v in backs]))
            out.append((f"L{d}.off", [v.off for _, v in backs]))
            out.append((f"L{d}.fb_rank1", [v.fb_rank1 for _, v in backs]))
            out.append((f"L{d}.fb_lrank", [v.fb_lrank for _, v in backs]))
            out.append((f"L{d}.fb_lbreaker", [v.fb_lbreaker for _, v in backs]))
            out.append((f"L{d}.m_fb", [v.m_fb for _, v in backs]))
            out.append((f"L{d}.xmexcess", [1 - v.xmexcess for _, v in backs]))
        out.append(("root.cum_rank1", list(self._cum_rank1)))
        out.append(("root.cum_lrank", list(self._cum_lrank)))
        return out

    def leaf_words(self) -> list[tuple[int, int]]:
        """(bits, size) of every LeafBlock, in level order."""
        return [(v.bits, v.size) for _, v in self.iter_nodes() if v.kind == LEAF]

    def leaf_bits(self) -> np.ndarray:
        """All LeafBlock contents concatenated, as a 0/1 array."""
        parts = []
        for bits, size in self.leaf_words():
            raw = bits.to_bytes((size + 7) // 8, "little")
            parts.append(np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size])
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)

    def bitcounts(self) -> dict[str, int]:
        """Bits of the stored representation, grouped by field kind."""
        groups: dict[str, int] = {}
        for name, values in self.field_arrays():
            key = name.split(".", 1)[1]
            groups[key] = groups.get(key, 0) + packed_bits(values)
        groups["leaves"] = sum(size for _, size in self.leaf_words())
        return groups

    def size_in_bits(self) -> int:
        return sum(self.bitcounts().values())
