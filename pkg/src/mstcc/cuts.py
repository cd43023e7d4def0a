"""Valid inequalities ``sum(x[k] for k in support) <= rhs``.

Every inequality family used by the solver has unit coefficients, so a cut
is fully described by its support and right-hand side.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence


class CutKind(str, Enum):
    SEC = "sec"
    ODD_CYCLE = "odd_cycle"
    CLIQUE = "clique"
    EDGE_PAIR = "edge_pair"


@dataclass(frozen=True)
class Cut:
    kind: CutKind
    support: tuple[int, ...]
    rhs: float
    violation: float = 0.0
    # vertex set for SECs, node set for conflict-graph cuts
    members: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))

    @property
    def key(self) -> tuple:
        return (self.support, self.rhs)

    def lhs(self, x: Sequence[float]) -> float:
        return float(sum(x[k] for k in self.support))

    def violation_at(self, x: Sequence[float]) -> float:
        return self.lhs(x) - self.rhs


def sec_cut(inst, vertex_set, x=None) -> Cut:
    s = set(vertex_set)
    support = [k for k, (u, v, _) in enumerate(inst.edges) if u in s and v in s]
    cut = Cut(CutKind.SEC, tuple(support), float(len(s) - 1), members=tuple(sorted(s)))
    if x is not None:
        cut = Cut(cut.kind, cut.support, cut.rhs, cut.violation_at(x), cut.members)
    return cut
