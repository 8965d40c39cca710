"""Maximal substrings of a query that occur in the indexed text.

S[i..j] is reported when it occurs in T while neither S[i-1..j] nor
S[i..j+1] does.  Matching statistics are computed left to right by descending
with child/letter and moving on with suffix links; the reported occurrence is
the text position of the lexicographically smallest suffix that starts with
the match.
"""
from __future__ import annotations

from .cst import BtCst


def matching_statistics(cst: BtCst, codes: list) -> tuple[list[int], list[int]]:
    """ms[i] and the locus node of S[i..i+ms[i]-1], for 0-based i."""
    m = len(codes)
    ms, loci = [0] * m, [1] * m
    v, length = 1, 0
    sd = 0
    for i in range(m):
        while i + length < m:
            c = codes[i + length]
            if c is None:
                break
            if length < sd:
                if cst.letter_code(v, length + 1) != c:
                    break
                length += 1
            else:
                u = cst.child_binary(v, c)
                if u is None:
                    break
                v, length = u, length + 1
                sd = cst.string_depth(v)
        ms[i], loci[i] = length, v
        if length <= 1:
            v, length, sd = 1, 0, 0
        else:
            length -= 1
            v = cst.string_ancestor(cst.suffix_link(v), length)
            sd = cst.string_depth(v)
    return ms, loci


def maximal_substrings(cst: BtCst, query: str | bytes) -> list[tuple[int, int, int]]:
    """(start, end, text position) triples, 1-based and inclusive, left to right."""
    if isinstance(query, str):
        query = query.encode("latin-1")
    table = {ch: k for k, ch in enumerate(cst.alphabet) if k}
    codes = [table.get(ch) for ch in query]
    ms, loci = matching_statistics(cst, codes)
    out = []
    for i, length in enumerate(ms):
        if length and (i == 0 or ms[i - 1] <= length):
            rank = cst.leaf_interval(loci[i])[0]
            out.append((i + 1, i + length, cst.csa.sa_access(rank)))
    return out
