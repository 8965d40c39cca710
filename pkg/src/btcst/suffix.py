"""Suffix array, LCP, suffix-tree topology and the PLCP bitvector H.

Text positions and suffix ranks are 1-based in every public value.  Arrays
are numpy vectors whose element ``k`` holds the entry for index ``k + 1``.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitvector import ParenSeq
from .packed import packed_bits


@dataclass(frozen=True)
class Text:
    """A text over dense codes 1..sigma, terminated by code 0.

    ``alphabet[c]`` is the original byte of code ``c``; ``alphabet[0]`` is
    the terminator byte.
    """

    symbols: np.ndarray
    alphabet: bytes

    @classmethod
    def from_bytes(cls, data: bytes | str, terminator: bytes | str | int = 0) -> "Text":
        if isinstance(data, str):
            data = data.encode("latin-1")
        if isinstance(terminator, str):
            terminator = terminator.encode("latin-1")
        if isinstance(terminator, bytes):
            if len(terminator) != 1:
                raise ValueError("terminator must be a single byte")
            terminator = terminator[0]
        if data.endswith(bytes([terminator])):
            data = data[:-1]
        if terminator in data:
            raise ValueError(f"terminator byte {terminator!r} occurs inside the text")
        raw = np.frombuffer(data, dtype=np.uint8)
        present = np.unique(raw)
        lut = np.zeros(256, dtype=np.int32)
        lut[present] = np.arange(1, present.size + 1, dtype=np.int32)
        symbols = np.empty(raw.size + 1, dtype=np.int32)
        symbols[:-1] = lut[raw]
        symbols[-1] = 0
        return cls(symbols, bytes([terminator]) + present.tobytes())

    @property
    def n(self) -> int:
        return int(self.symbols.size)

    @property
    def sigma(self) -> int:
        return len(self.alphabet) - 1

    def code(self, ch: bytes | str | int) -> int | None:
        """Code of a character, or None when it is not in the alphabet."""
        if isinstance(ch, str):
            ch = ch.encode("latin-1")
        if isinstance(ch, bytes):
            if len(ch) != 1:
                raise ValueError("expected a single character")
            ch = ch[0]
        idx = self.alphabet.find(bytes([ch]))
        return None if idx < 0 else idx

    def decode(self, codes: Sequence[int]) -> str:
        return bytes(self.alphabet[c] for c in codes).decode("latin-1")

    def __str__(self) -> str:
        return self.decode(self.symbols.tolist())


def build_suffix_array(text: Text) -> np.ndarray:
    """Prefix doubling; returns A with 1-based text positions."""
    s = text.symbols
    n = s.size
    if n == 0 or s[-1] != 0 or np.count_nonzero(s == 0) != 1:
        raise ValueError("text must end with a unique terminator")
    rank = s.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        second[:n - k] = rank[k:] + 1
        sa = np.lexsort((second, rank))
        r1, r2 = rank[sa], second[sa]
        diff = np.empty(n, dtype=np.int64)
        diff[0] = 0
        diff[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(diff)
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            break
        k *= 2
    return sa.astype(np.int64) + 1


def inverse_suffix_array(sa: np.ndarray) -> np.ndarray:
    """isa with isa[j - 1] = rank of text position j."""
    isa = np.empty(sa.size, dtype=np.int64)
    isa[sa - 1] = np.arange(1, sa.size + 1, dtype=np.int64)
    return isa


def build_lcp(text: Text, sa: np.ndarray) -> np.ndarray:
    """Kasai et al. linear-time LCP."""
    s = text.symbols.tolist()
    n = len(s)
    pos = (sa - 1).tolist()
    isa = [0] * n
    for r, p in enumerate(pos):
        isa[p] = r
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = isa[p]
        if r == 0:
            h = 0
            continue
        q = pos[r - 1]
        while p + h < n and q + h < n and s[p + h] == s[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def build_bp_topology(lcp: Sequence[int]) -> ParenSeq:
    """Preorder BP of the suffix tree from its LCP array.

    Two stack sweeps over the lcp-interval boundaries: the left-to-right one
    counts the internal nodes closing after each leaf, the right-to-left one
    counts those opening before it.
    """
    lcp = [int(x) for x in lcp]
    n = len(lcp)
    closes = [0] * n
    stack = [0]
    for i in range(n):
        bound = lcp[i + 1] if i + 1 < n else 0
        while stack[-1] > bound:
            stack.pop()
            closes[i] += 1
        if stack[-1] < bound:
            stack.append(bound)
    opens = [0] * n
    stack = [0]
    for i in range(n - 1, -1, -1):
        bound = lcp[i] if i > 0 else 0
        while stack[-1] > bound:
            stack.pop()
            opens[i] += 1
        if stack[-1] < bound:
            stack.append(bound)
    bits = [1]
    for i in range(n):
        bits.extend([1] * opens[i])
        bits.append(1)
        bits.append(0)
        bits.extend([0] * closes[i])
    bits.append(0)
    return ParenSeq(np.asarray(bits, dtype=np.uint8))


class HBitvector:
    """Run-length H[1, 2n]: the i-th 1 sits at position PLCP[i] + 2i.

    Runs are (zeros, ones) pairs; a directory samples the cumulative ones and
    lengths every ``sample`` runs so select_1 is a bisect plus a short walk.
    """

    def __init__(self, zeros: Sequence[int], ones: Sequence[int], sample: int = 32):
        self.zeros = [int(z) for z in zeros]
        self.ones = [int(o) for o in ones]
        self.sample = sample
        self.n = sum(self.ones)
        self.length = sum(self.zeros) + self.n
        self._samp_ones = []
        self._samp_len = []
        ones_acc = len_acc = 0
        for k, (z, o) in enumerate(zip(self.zeros, self.ones)):
            if k % sample == 0:
                self._samp_ones.append(ones_acc)
                self._samp_len.append(len_acc)
            ones_acc += o
            len_acc += z + o

    @classmethod
    def from_plcp(cls, plcp: Sequence[int], sample: int = 32) -> "HBitvector":
        zeros, ones = [], []
        prev = 0
        for i, value in enumerate(plcp, start=1):
            pos = int(value) + 2 * i
            gap = pos - prev - 1
            if gap < 0:
                raise ValueError("PLCP violates PLCP[i+1] >= PLCP[i] - 1")
            if gap == 0 and ones:
                ones[-1] += 1
            else:
                zeros.append(gap)
                ones.append(1)
            prev = pos
        return cls(zeros, ones, sample)

    @property
    def runs(self) -> int:
        return len(self.ones)

    def select1(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"select_1({i}) outside [1, {self.n}]")
        k = (bisect_right(self._samp_ones, i - 1) - 1) * self.sample
        ones_acc = self._samp_ones[k // self.sample]
        len_acc = self._samp_len[k // self.sample]
        while ones_acc + self.ones[k] < i:
            ones_acc += self.ones[k]
            len_acc += self.zeros[k] + self.ones[k]
            k += 1
        return len_acc + self.zeros[k] + (i - ones_acc)

    def plcp(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"text position {i} outside [1, {self.n}]")
        return self.select1(i) - 2 * i

    def bits(self) -> str:
        return "".join("0" * z + "1" * o for z, o in zip(self.zeros, self.ones))

    def size_in_bits(self) -> int:
        """Run vectors only; the select directory is rebuilt on load."""
        return packed_bits(self.zeros) + packed_bits(self.ones)


def build_plcp(sa: np.ndarray, lcp: np.ndarray) -> np.ndarray:
    plcp = np.empty(sa.size, dtype=np.int64)
    plcp[sa - 1] = lcp
    return plcp


def build_H(sa: np.ndarray, lcp: np.ndarray, sample: int = 32) -> HBitvector:
    return HBitvector.from_plcp(build_plcp(sa, lcp).tolist(), sample)
