"""Exact backtracking oracles: k-IDP and hole-through-two-vertices.

Both searches only grow chordless paths.  This loses no answers: shortcutting
the paths of any solution keeps them mutually induced.
"""

from __future__ import annotations

import sys

from ..graph import Graph, IdpInstance, IdpSolution, iter_bits
from .base import (
    BudgetExhausted,
    SolveBudget,
    SolveOutcome,
    Status,
    Ticker,
    check_solution,
)

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


def _reaches(adj: tuple[int, ...], start: int, allowed: int, targets: int) -> int:
    """Subset of ``targets`` adjacent to the component of ``start`` in
    ``allowed + start``."""
    seen = 1 << start
    frontier = seen
    hit = 0
    while frontier:
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj[v]
        hit |= nb & targets
        if hit == targets:
            return hit
        frontier = nb & allowed & ~seen
        seen |= frontier
    return hit


def _distance(adj: tuple[int, ...], start: int, allowed: int, target: int) -> int | None:
    """Edges on a shortest start-target walk through ``allowed``; None if cut off."""
    seen = 1 << start
    frontier = seen
    dist = 0
    tbit = 1 << target
    while frontier:
        dist += 1
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj[v]
        if nb & tbit:
            return dist
        frontier = nb & allowed & ~seen
        seen |= frontier
    return None


def idp_search(
    g: Graph,
    pairs: list[tuple[int, int]],
    ticker: Ticker,
    max_vertices: int | None = None,
) -> list[tuple[int, ...]] | None:
    """Grow all k chordless paths together; return the paths or None.

    At every node the unfinished path with the fewest extensions is advanced
    (fail first); a path whose end touches its target must step onto it.
    ``max_vertices`` caps the vertex count of every path.
    """
    adj = g.adj
    k = len(pairs)
    full = g.vertex_mask
    closed = [a | (1 << v) for v, a in enumerate(adj)]
    targets = [t for _, t in pairs]
    used0 = 0
    for s, t in pairs:
        used0 |= (1 << s) | (1 << t)
    block0 = [0] * k
    for i in range(k):
        for j, (s, t) in enumerate(pairs):
            if j != i:
                block0[i] |= closed[s] | closed[t]
        s, t = pairs[i]
        if block0[i] & ((1 << s) | (1 << t)):
            return None

    def advance(paths, done, used, block, own, i, w):
        """Return new state after appending ``w`` to path ``i``."""
        paths = list(paths)
        paths[i] = paths[i] + (w,)
        block = list(block)
        cw = closed[w]
        for j in range(k):
            if j != i:
                block[j] |= cw
        if w == targets[i]:
            done = done | (1 << i)
            return paths, done, used, block, own
        own = list(own)
        own[i] |= closed[paths[i][-2]]
        return paths, done, used | (1 << w), block, own

    def candidates(paths, used, block, own, i):
        end = paths[i][-1]
        t = targets[i]
        if adj[end] >> t & 1:
            return 1 << t
        if max_vertices is not None and len(paths[i]) + 2 > max_vertices:
            return 0
        return adj[end] & ~used & ~block[i] & ~own[i]

    def viable(paths, done, used, block, own) -> bool:
        for i in range(k):
            if done >> i & 1:
                continue
            allowed = full & ~used & ~block[i] & ~own[i]
            if max_vertices is None:
                if not _reaches(adj, paths[i][-1], allowed, 1 << targets[i]):
                    return False
            else:
                d = _distance(adj, paths[i][-1], allowed, targets[i])
                if d is None or len(paths[i]) + d > max_vertices:
                    return False
        return True

    def rec(paths, done, used, block, own, depth):
        ticker.tick(depth)
        while True:
            if done == (1 << k) - 1:
                return paths
            best = -1
            best_c = 0
            best_n = 1 << 30
            for i in range(k):
                if done >> i & 1:
                    continue
                c = candidates(paths, used, block, own, i)
                if not c:
                    return None
                cnt = c.bit_count()
                if cnt < best_n:
                    best, best_c, best_n = i, c, cnt
            if best_n == 1:
                w = best_c.bit_length() - 1
                paths, done, used, block, own = advance(paths, done, used, block, own, best, w)
                depth += 1
                continue
            if not viable(paths, done, used, block, own):
                return None
            for w in iter_bits(best_c):
                res = rec(*advance(paths, done, used, block, own, best, w), depth + 1)
                if res is not None:
                    return res
            return None

    return rec([(s,) for s, _ in pairs], 0, used0, block0, [0] * k, 0)


def solve_exact(inst: IdpInstance, budget: SolveBudget | None = None) -> SolveOutcome:
    """Complete search for k mutually induced paths."""
    ticker = Ticker(budget or SolveBudget())
    pairs = [(p.s, p.t) for p in inst.pairs]
    try:
        paths = idp_search(inst.graph, pairs, ticker)
    except BudgetExhausted:
        return SolveOutcome(Status.BUDGET, None, ticker.stats())
    if paths is None:
        return SolveOutcome(Status.NO, None, ticker.stats())
    sol = IdpSolution(tuple(paths))
    if not check_solution(inst, sol):
        raise AssertionError("exact search produced an invalid witness")
    return SolveOutcome(Status.YES, sol, ticker.stats())


def find_hole_through(
    g: Graph, x: int, y: int, budget: SolveBudget | None = None
) -> list[int] | None:
    """Return an induced cycle on at least four vertices through ``x`` and ``y``.

    The cycle is listed starting at ``x``.  Returns None when no such hole
    exists; raises ``BudgetExhausted`` when the budget runs out first.
    """
    if x == y:
        raise ValueError("x and y must differ")
    ticker = Ticker(budget or SolveBudget())
    adj = g.adj
    full = g.vertex_mask
    closed = [a | (1 << v) for v, a in enumerate(adj)]
    ybit = 1 << y
    nbrs = list(iter_bits(adj[x]))

    def rec(path, forbidden, target, depth):
        # forbidden: closed neighbourhoods of x and of every path vertex but the end
        ticker.tick(depth)
        while True:
            end = path[-1]
            if adj[end] >> target & 1:
                path = path + [target]
                return path if y in path else None
            cand = adj[end] & ~forbidden
            if not cand:
                return None
            if cand & (cand - 1) == 0:
                w = cand.bit_length() - 1
                forbidden |= closed[end]
                path = path + [w]
                depth += 1
                continue
            break
        allowed = full & ~forbidden
        need = 1 << target
        if y not in path:
            if forbidden & ybit:
                return None
            need |= ybit
        if _reaches(adj, end, allowed & ~(1 << target), need) != need:
            return None
        for w in iter_bits(cand):
            res = rec(path + [w], forbidden | closed[end], target, depth + 1)
            if res is not None:
                return res
        return None

    for ai, a in enumerate(nbrs):
        for b in nbrs[ai + 1:]:
            if adj[a] >> b & 1:
                continue
            if adj[x] >> y & 1 and y not in (a, b):
                continue
            forbidden = closed[x] & ~(1 << b)
            found = rec([a], forbidden, b, 1)
            if found is not None:
                return [x] + found
    return None


def is_hole_through(g: Graph, cycle: list[int], x: int, y: int) -> bool:
    """Check that ``cycle`` induces a chordless cycle of length >= 4 through x, y."""
    vs = set(cycle)
    if len(vs) != len(cycle) or len(cycle) < 4 or x not in vs or y not in vs:
        return False
    mask = sum(1 << v for v in vs)
    for i, v in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        if not g.has_edge(v, nxt):
            return False
        if (g.adj[v] & mask).bit_count() != 2:
            return False
    return True
