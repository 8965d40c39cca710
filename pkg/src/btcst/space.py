"""Space accounting for a built index."""
from __future__ import annotations

from dataclasses import dataclass

from .cst import BtCst


@dataclass
class SpaceReport:
    n: int
    nodes: int
    components: dict[str, int]

    @property
    def total_bits(self) -> int:
        return sum(self.components.values())

    @property
    def bps(self) -> float:
        return self.total_bits / self.n

    @property
    def topology_bpn(self) -> float:
        return self.components["topology"] / self.nodes

    def percent(self, name: str) -> float:
        return 100.0 * self.components[name] / self.total_bits

    def lines(self, kv: bool = False) -> list[str]:
        if kv:
            out = [f"n={self.n}", f"nodes={self.nodes}", f"total_bits={self.total_bits}",
                   f"bps={self.bps:.4f}", f"topology_bpn={self.topology_bpn:.4f}"]
            out += [f"{k}_bits={v}" for k, v in self.components.items()]
            return out
        out = [f"text symbols      {self.n}",
               f"tree nodes        {self.nodes}",
               f"total             {self.total_bits} bits  ({self.bps:.3f} bps)"]
        for k, v in self.components.items():
            out.append(f"  {k:<15} {v:>12} bits  {self.percent(k):5.1f}%")
        out.append(f"topology          {self.topology_bpn:.3f} bits per node")
        return out


def space_report(cst: BtCst) -> SpaceReport:
    return SpaceReport(cst.n, cst.node_count(), cst.bitcounts())
