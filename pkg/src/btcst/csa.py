"""Run-length compressed suffix array.

Ψ is stored as maximal runs of +1 increments, never crossing a
first-character bucket boundary.  A is sampled at text positions
1, 1 + s_A, 1 + 2 s_A, ..., and A^{-1} at the same kind of grid with rate
s_T, so ``sa_access`` walks at most s_A - 1 Ψ steps and ``isa_access`` at
most s_T - 1.
"""
from __future__ import annotations

from bisect import bisect_right
from typing import Optional

import numpy as np

from .packed import packed_bits
from .suffix import Text, build_suffix_array, inverse_suffix_array


class CsaIndex:
    def __init__(self, n: int, alphabet: bytes, bucket_starts: list[int],
                 run_starts: list[int], run_values: list[int],
                 sa_samples: dict[int, int], isa_samples: list[int],
                 s_A: int, s_T: int):
        self.n = n
        self.alphabet = alphabet
        self.bucket_starts = bucket_starts      # rank where each code's bucket begins
        self.run_starts = run_starts
        self.run_values = run_values
        self.sa_samples = sa_samples            # rank -> text position
        self.isa_samples = isa_samples          # isa_samples[k] = A^{-1}[1 + k s_T]
        self.s_A = s_A
        self.s_T = s_T

    @classmethod
    def build(cls, text: Text, sa: Optional[np.ndarray] = None, s_A: int = 32, s_T: int = 128) -> "CsaIndex":
        if s_A < 1 or s_T < 1:
            raise ValueError("sampling rates must be >= 1")
        if sa is None:
            sa = build_suffix_array(text)
        n = text.n
        isa = inverse_suffix_array(sa)
        nxt = sa % n                             # 0-based index of A[i] mod n + 1
        psi = isa[nxt]
        first = text.symbols[sa - 1]
        counts = np.bincount(first, minlength=text.sigma + 1)
        bucket_starts = (np.concatenate(([0], np.cumsum(counts)[:-1])) + 1).tolist()
        brk = np.ones(n, dtype=bool)
        brk[1:] = (psi[1:] != psi[:-1] + 1) | (first[1:] != first[:-1])
        heads = np.flatnonzero(brk)
        run_starts = (heads + 1).tolist()
        run_values = psi[heads].tolist()
        ranks = np.flatnonzero((sa - 1) % s_A == 0)
        sa_samples = dict(zip((ranks + 1).tolist(), sa[ranks].tolist()))
        isa_samples = isa[::s_T].tolist()
        return cls(n, text.alphabet, bucket_starts, run_starts, run_values,
                   sa_samples, isa_samples, s_A, s_T)

    def _check_rank(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"rank {i} outside [1, {self.n}]")

    @property
    def runs(self) -> int:
        return len(self.run_starts)

    @property
    def sigma(self) -> int:
        return len(self.alphabet) - 1

    def psi(self, i: int) -> int:
        self._check_rank(i)
        k = bisect_right(self.run_starts, i) - 1
        return self.run_values[k] + i - self.run_starts[k]

    def char_at_rank(self, i: int) -> int:
        """Code of the first symbol of the i-th smallest suffix."""
        self._check_rank(i)
        return bisect_right(self.bucket_starts, i) - 1

    def bucket(self, c: int) -> tuple[int, int]:
        """Ranks [lo, hi] of suffixes starting with code c (empty if lo > hi)."""
        lo = self.bucket_starts[c]
        hi = self.bucket_starts[c + 1] - 1 if c + 1 < len(self.bucket_starts) else self.n
        return lo, hi

    def sa_access(self, i: int) -> int:
        self._check_rank(i)
        steps = 0
        samples = self.sa_samples
        while i not in samples:
            i = self.psi(i)
            steps += 1
        return (samples[i] - 1 - steps) % self.n + 1

    def isa_access(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise IndexError(f"text position {j} outside [1, {self.n}]")
        k = (j - 1) // self.s_T
        i = self.isa_samples[k]
        for _ in range(j - 1 - k * self.s_T):
            i = self.psi(i)
        return i

    def extract_codes(self, i: int, j: int) -> list[int]:
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"range [{i}, {j}] outside [1, {self.n}]")
        r = self.isa_access(i)
        out = [self.char_at_rank(r)]
        for _ in range(j - i):
            r = self.psi(r)
            out.append(self.char_at_rank(r))
        return out

    def extract(self, i: int, j: int) -> str:
        return bytes(self.alphabet[c] for c in self.extract_codes(i, j)).decode("latin-1")

    def psi_array(self) -> list[int]:
        return [self.psi(i) for i in range(1, self.n + 1)]

    def bitcounts(self) -> dict[str, int]:
        """Payload bits of the packed vectors written to the index file."""
        ranks = sorted(self.sa_samples)
        return {
            "psi_runs": packed_bits(self.run_starts) + packed_bits(self.run_values),
            "buckets": packed_bits(self.bucket_starts),
            "sa_samples": packed_bits(ranks)
            + packed_bits([(self.sa_samples[k] - 1) // self.s_A for k in ranks]),
            "isa_samples": packed_bits(self.isa_samples),
        }

    def size_in_bits(self) -> int:
        return sum(self.bitcounts().values())
