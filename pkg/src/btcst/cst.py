"""The compressed suffix tree: BP topology in a BT-CT, a run-length CSA and
the PLCP bitvector H.

Node handles are the 1-based positions of their opening parentheses.  Leaf
indexes are suffix ranks, so the leaves of ``v`` are the ranks
``leaf_interval(v)``.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Optional

import numpy as np

from .btct import BTCT
from .csa import CsaIndex
from .suffix import (HBitvector, Text, build_H, build_bp_topology, build_lcp,
                     build_suffix_array)


class BtCst:
    def __init__(self, topology: BTCT, csa: CsaIndex, h: HBitvector, params: Optional[dict] = None):
        self.topology = topology
        self.csa = csa
        self.h = h
        self.n = csa.n
        self.alphabet = csa.alphabet
        self.params = params or {}

    @classmethod
    def build(cls, text: Text | str | bytes, r: int = 2, mll: int = 128,
              sa_rate: int = 32, isa_rate: int = 128, terminator: bytes | str | int = 0) -> "BtCst":
        if not isinstance(text, Text):
            text = Text.from_bytes(text, terminator)
        sa = build_suffix_array(text)
        lcp = build_lcp(text, sa)
        topo = BTCT(build_bp_topology(lcp), r=r, mll=mll)
        csa = CsaIndex.build(text, sa, sa_rate, isa_rate)
        params = {"r": r, "mll": mll, "sa_rate": sa_rate, "isa_rate": isa_rate}
        return cls(topo, csa, build_H(sa, lcp), params)

    @property
    def sigma(self) -> int:
        return len(self.alphabet) - 1

    # -- handles -------------------------------------------------------------
    def _node(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 1 <= v <= self.topology.p:
            raise IndexError(f"{v!r} is not a node handle")
        if not self.topology.access(v):
            raise ValueError(f"position {v} holds a closing parenthesis")
        return int(v)

    def _code(self, c) -> Optional[int]:
        if isinstance(c, (int, np.integer)):
            return int(c) if 0 <= c <= self.sigma else None
        if isinstance(c, str):
            c = c.encode("latin-1")
        if len(c) != 1:
            raise ValueError("child needs a single character")
        idx = self.alphabet.find(c)
        return None if idx < 0 else idx

    def node_count(self) -> int:
        return self.topology.p // 2

    def nodes(self):
        """Every node handle in preorder."""
        t = self.topology
        for j in range(1, t.p // 2 + 1):
            yield t.select(1, j)

    def leaf_interval(self, v: int) -> tuple[int, int]:
        v = self._node(v)
        t = self.topology
        return t.leaf_rank(v) + 1, t.leaf_rank(t.close(v))

    def leaf(self, k: int) -> int:
        """Handle of the leaf of the k-th smallest suffix."""
        pos = self.topology.leaf_select(k)
        if pos is None:
            raise IndexError(f"leaf {k} outside [1, {self.n}]")
        return pos

    # -- topology ------------------------------------------------------------
    def root(self) -> int:
        return 1

    def is_leaf(self, v: int) -> bool:
        v = self._node(v)
        return self.topology.access(v + 1) == 0

    def first_child(self, v: int) -> int:
        if self.is_leaf(v):
            raise ValueError(f"leaf {v} has no children")
        return v + 1

    def next_sibling(self, v: int) -> Optional[int]:
        v = self._node(v)
        if v == 1:
            raise ValueError("the root has no siblings")
        t = self.topology
        c = t.close(v)
        if c + 1 > t.p or not t.access(c + 1):
            return None
        return c + 1

    def previous_sibling(self, v: int) -> Optional[int]:
        v = self._node(v)
        if v == 1:
            raise ValueError("the root has no siblings")
        t = self.topology
        if t.access(v - 1):
            return None
        return t.bwd_search(v - 2, -1) + 1

    def parent(self, v: int) -> int:
        v = self._node(v)
        if v == 1:
            raise ValueError("the root has no parent")
        return self.topology.parent(v)

    def is_ancestor(self, v: int, u: int) -> bool:
        v, u = self._node(v), self._node(u)
        return v <= u <= self.topology.close(v)

    def tree_depth(self, v: int) -> int:
        return self.topology.excess(self._node(v)) - 1

    def level_ancestor(self, v: int, d: int) -> int:
        depth = self.tree_depth(v)
        if not 0 <= d <= depth:
            raise ValueError(f"depth {d} outside [0, {depth}]")
        if d == depth:
            return v
        return self.topology.bwd_search(v, d - depth - 1) + 1

    def lca(self, v: int, u: int) -> int:
        v, u = self._node(v), self._node(u)
        if v > u:
            v, u = u, v
        t = self.topology
        if u <= t.close(v):
            return v
        m = t.min_excess(v, u)
        return t.parent(t.fwd_search(v, m - 1) + 1)

    # -- string operations ---------------------------------------------------------
    def string_depth(self, v: int) -> int:
        v = self._node(v)
        t = self.topology
        if not t.access(v + 1):
            return self.n - self.csa.sa_access(t.leaf_rank(v) + 1) + 1
        second = t.close(v + 1) + 1
        return self.h.plcp(self.csa.sa_access(t.leaf_rank(second) + 1))

    def _letter_at_rank(self, k: int, i: int) -> int:
        """Code of T[A[k] + i - 1]."""
        csa = self.csa
        if i - 1 <= csa.s_A + csa.s_T:
            for _ in range(i - 1):
                k = csa.psi(k)
        else:
            k = csa.isa_access(csa.sa_access(k) + i - 1)
        return csa.char_at_rank(k)

    def letter_code(self, v: int, i: int) -> int:
        sd = self.string_depth(v)
        if not 1 <= i <= sd:
            raise IndexError(f"letter index {i} outside [1, {sd}]")
        return self._letter_at_rank(self.topology.leaf_rank(v) + 1, i)

    def letter(self, v: int, i: int) -> str:
        return chr(self.alphabet[self.letter_code(v, i)])

    def suffix_link(self, v: int) -> int:
        v = self._node(v)
        if v == 1:
            return 1
        l, r = self.leaf_interval(v)
        if l == 1:                      # the terminator leaf: str(v) = "$"
            return 1
        t, csa = self.topology, self.csa
        a = t.leaf_select(csa.psi(l))
        if r == l:
            return a
        return self.lca(a, t.leaf_select(csa.psi(r)))

    def string_ancestor(self, v: int, d: int) -> int:
        if d > self.string_depth(v):
            raise ValueError(f"string depth {d} exceeds that of node {v}")
        lo, hi = 0, self.tree_depth(v)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.string_depth(self.level_ancestor(v, mid)) >= d:
                hi = mid
            else:
                lo = mid + 1
        return self.level_ancestor(v, lo)

    # -- child -----------------------------------------------------------------
    def _children(self, v: int) -> list[int]:
        out = []
        u = v + 1
        t = self.topology
        while u <= t.p and t.access(u):
            out.append(u)
            u = t.close(u) + 1
        return out

    def child_linear(self, v: int, c) -> Optional[int]:
        code = self._code(c)
        if code is None or self.is_leaf(v):
            return None
        sd = self.string_depth(v)
        t = self.topology
        u = v + 1
        while u <= t.p and t.access(u):
            a = self._letter_at_rank(t.leaf_rank(u) + 1, sd + 1)
            if a == code:
                return u
            if a > code:
                return None
            u = t.close(u) + 1
        return None

    def child_binary(self, v: int, c) -> Optional[int]:
        code = self._code(c)
        if code is None or self.is_leaf(v):
            return None
        sd = self.string_depth(v)
        t = self.topology
        kids = self._children(v)

        class _Letters:
            def __len__(_):
                return len(kids)

            def __getitem__(_, j):
                return self._letter_at_rank(t.leaf_rank(kids[j]) + 1, sd + 1)

        j = bisect_left(_Letters(), code)
        if j < len(kids) and _Letters()[j] == code:
            return kids[j]
        return None

    # -- space -------------------------------------------------------------------
    def bitcounts(self) -> dict[str, int]:
        return {
            "topology": self.topology.size_in_bits(),
            "csa": self.csa.size_in_bits(),
            "H": self.h.size_in_bits(),
        }

    def size_in_bits(self) -> int:
        return sum(self.bitcounts().values())
