from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

from ..graph import IdpInstance, IdpSolution


class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    BUDGET = "BUDGET"


class BudgetExhausted(Exception):
    """Raised inside a search when its node or time limit is hit."""


class EndpointMismatch(ValueError):
    """A solution path does not run from s_i to t_i."""


@dataclass(frozen=True)
class SolveBudget:
    node_limit: int = 20_000_000
    time_limit: float = 60.0

    def __post_init__(self) -> None:
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class SolveStats:
    nodes: int = 0
    depth: int = 0
    elapsed: float = 0.0


@dataclass
class SolveOutcome:
    status: Status
    solution: IdpSolution | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    route: str = "exact"

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES


Solver = Callable[[IdpInstance, SolveBudget], SolveOutcome]


class Ticker:
    """Node counter enforcing a budget; the clock is read every 256 nodes."""

    def __init__(self, budget: SolveBudget) -> None:
        self.budget = budget
        self.nodes = 0
        self.depth = 0
        self.start = time.perf_counter()
        self.deadline = self.start + budget.time_limit

    def tick(self, depth: int = 0) -> None:
        self.nodes += 1
        if depth > self.depth:
            self.depth = depth
        if self.nodes > self.budget.node_limit:
            raise BudgetExhausted("node limit")
        if not self.nodes & 255 and time.perf_counter() > self.deadline:
            raise BudgetExhausted("time limit")

    def remaining(self) -> SolveBudget:
        left_nodes = max(1, self.budget.node_limit - self.nodes)
        left_time = max(1e-3, self.deadline - time.perf_counter())
        return SolveBudget(left_nodes, left_time)

    def absorb(self, stats: SolveStats, depth_offset: int = 0) -> None:
        self.nodes += stats.nodes
        self.depth = max(self.depth, stats.depth + depth_offset)
        if self.nodes > self.budget.node_limit:
            raise BudgetExhausted("node limit")

    def stats(self) -> SolveStats:
        return SolveStats(self.nodes, self.depth, time.perf_counter() - self.start)


def check_solution(inst: IdpInstance, sol: IdpSolution, flexible: bool = False) -> bool:
    """Decide whether ``sol`` is a set of mutually induced s_i-t_i paths.

    Paths need not be chordless themselves.  In flexible mode an edge between
    endpoints of two different paths is tolerated.  Raises ``EndpointMismatch``
    when the path count or a path's endpoints disagree with the pairs.
    """
    if sol.k != inst.k:
        raise EndpointMismatch(f"{sol.k} paths for {inst.k} terminal pairs")
    g = inst.graph
    for pair, p in zip(inst.pairs, sol.paths):
        if not p or p[0] != pair.s or p[-1] != pair.t:
            raise EndpointMismatch(f"path {list(p)} does not join {pair.s} and {pair.t}")
    vsets = []
    for p in sol.paths:
        if any(not 0 <= v < g.n for v in p) or len(set(p)) != len(p):
            return False
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
        vsets.append(set(p))
    for i in range(len(vsets)):
        for j in range(i + 1, len(vsets)):
            if vsets[i] & vsets[j]:
                return False
            ends_i = {sol.paths[i][0], sol.paths[i][-1]}
            ends_j = {sol.paths[j][0], sol.paths[j][-1]}
            for u in vsets[i]:
                for v in vsets[j]:
                    if g.has_edge(u, v) and not (flexible and u in ends_i and v in ends_j):
                        return False
    return True


def shortcut(g, p: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Shortcut a path to a chordless one with the same endpoints."""
    p = list(p)
    out = [p[0]]
    i = 0
    while p[i] != p[-1]:
        # jump to the furthest later vertex adjacent to the current one
        j = max(k for k in range(i + 1, len(p)) if g.has_edge(p[i], p[k]))
        out.append(p[j])
        i = j
    return tuple(out)
