"""Random-query benchmark with a results digest.

Nodes are drawn by taking the lca of a uniformly random leaf pair and then a
uniformly random node on that lca's root path.  Arguments that need more
randomness (a second node, a depth, a letter index, a symbol) come from the
same seeded stream, so two trees with equal answers produce equal digests.
"""
from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field

import numpy as np

OPS = ("root", "is_leaf", "first_child", "next_sibling", "previous_sibling", "parent",
       "is_ancestor", "tree_depth", "level_ancestor", "lca", "string_depth", "letter",
       "suffix_link", "string_ancestor", "child_linear", "child_binary")


def sample_node(tree, rng: random.Random) -> int:
    a, b = rng.randint(1, tree.n), rng.randint(1, tree.n)
    v = tree.lca(tree.leaf(a), tree.leaf(b))
    return tree.level_ancestor(v, rng.randint(0, tree.tree_depth(v)))


def make_queries(tree, op: str, count: int, seed: int) -> list[tuple]:
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}; choose from {', '.join(OPS)}")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        v = sample_node(tree, rng)
        if op in ("is_ancestor", "lca"):
            out.append((v, sample_node(tree, rng)))
        elif op == "level_ancestor":
            out.append((v, rng.randint(0, tree.tree_depth(v))))
        elif op == "string_ancestor":
            out.append((v, rng.randint(0, tree.string_depth(v))))
        elif op == "letter":
            out.append((v, rng.randint(1, max(1, tree.string_depth(v)))))
        elif op.startswith("child"):
            out.append((v, rng.randint(0, tree.sigma)))
        elif op == "root":
            out.append(())
        else:
            out.append((v,))
    return out


@dataclass
class BenchResult:
    op: str
    count: int
    digest: str
    times_us: list[float] = field(default_factory=list)
    visits: float = 0.0

    @property
    def mean_us(self) -> float:
        return float(np.mean(self.times_us)) if self.times_us else 0.0

    def pct_us(self, q: float) -> float:
        return float(np.percentile(self.times_us, q)) if self.times_us else 0.0

    def lines(self, kv: bool = False) -> list[str]:
        vals = [("op", self.op), ("count", self.count), ("mean_us", f"{self.mean_us:.2f}"),
                ("p50_us", f"{self.pct_us(50):.2f}"), ("p99_us", f"{self.pct_us(99):.2f}"),
                ("node_visits", f"{self.visits:.1f}"), ("digest", self.digest)]
        if kv:
            return [f"{k}={v}" for k, v in vals]
        return ["  ".join(f"{k} {v}" for k, v in vals)]


def _call(tree, op: str, args: tuple):
    name = "letter_code" if op == "letter" else op
    try:
        return getattr(tree, name)(*args)
    except (ValueError, IndexError):
        return "error"


def run_queries(tree, op: str, count: int, seed: int = 0) -> BenchResult:
    queries = make_queries(tree, op, count, seed)
    h = hashlib.sha256()
    times = []
    for args in queries:
        t0 = time.perf_counter_ns()
        ans = _call(tree, op, args)
        times.append((time.perf_counter_ns() - t0) / 1000.0)
        h.update(repr(ans).encode())
        h.update(b"\n")
    visits = 0.0
    topo = getattr(tree, "topology", None)
    if topo is not None and queries:
        probe = queries[:256]
        visits = sum(topo.count_visits(_call, tree, op, args)[1] for args in probe) / len(probe)
    return BenchResult(op, count, h.hexdigest(), times, visits)
