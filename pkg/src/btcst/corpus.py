"""Synthetic repetitive collections: k point-mutated copies of a random base."""
from __future__ import annotations

import numpy as np

from .suffix import Text


def gen_bytes(size: int, copies: int, rate: float, seed: int = 0, alphabet: bytes = b"ACGT") -> bytes:
    """The first copy is the base itself; each later copy substitutes every
    position independently with probability ``rate`` by a different symbol."""
    if not 0 <= rate < 1:
        raise ValueError("mutation rate must lie in [0, 1)")
    if size < 0 or copies < 1:
        raise ValueError("need size >= 0 and copies >= 1")
    rng = np.random.default_rng(seed)
    sym = np.frombuffer(alphabet, dtype=np.uint8)
    base = rng.integers(0, sym.size, size)
    out = [base]
    for _ in range(copies - 1):
        copy = base.copy()
        hit = np.flatnonzero(rng.random(size) < rate)
        if sym.size > 1:
            copy[hit] = (copy[hit] + rng.integers(1, sym.size, hit.size)) % sym.size
        out.append(copy)
    return sym[np.concatenate(out)].tobytes()


def gen_corpus(size: int, copies: int, rate: float, seed: int = 0, alphabet: bytes = b"ACGT") -> Text:
    return Text.from_bytes(gen_bytes(size, copies, rate, seed, alphabet))
