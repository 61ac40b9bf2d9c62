"""The polynomial-time pipelines for (F + H)-free and chair-free inputs.

Each solver has the handle signature ``(IdpInstance, SolveBudget) ->
SolveOutcome`` so that pipelines compose: peeling calls an inner solver on
the residual instance and the chair-free algorithm calls a claw-free solver
on every component.
"""

from __future__ import annotations

from typing import Iterator

from ..graph import Graph, IdpInstance, IdpSolution, TerminalPair, iter_bits
from ..patterns import (
    CHAIR,
    CLAW,
    Pattern,
    PatternError,
    Verdict,
    classify_fixed_k,
    find_induced,
    is_linear_forest,
    path,
    realize,
    split_linear_forest,
    union,
)
from .base import (
    BudgetExhausted,
    SolveBudget,
    SolveOutcome,
    Solver,
    Status,
    Ticker,
    check_solution,
)
from .exact import idp_search, solve_exact

SHORT_PATH_MAX_VERTICES = 7


class PreconditionError(ValueError):
    pass


def _chordless_paths(
    g: Graph, start: int, extra: int, avoid: int, ticker: Ticker
) -> Iterator[tuple[int, ...]]:
    """Chordless paths ``start, u_1, .., u_extra`` with every ``u_j`` outside
    ``avoid``, in lexicographic order of vertex ids."""
    adj = g.adj

    def rec(p: tuple[int, ...], forbidden: int):
        ticker.tick(len(p))
        if len(p) == extra + 1:
            yield p
            return
        end = p[-1]
        for w in iter_bits(adj[end] & ~forbidden & ~avoid):
            yield from rec(p + (w,), forbidden | adj[end] | (1 << end))

    yield from rec((start,), 1 << start)


def _finish(inst: IdpInstance, paths, ticker: Ticker, route: str) -> SolveOutcome:
    sol = IdpSolution(tuple(paths))
    if not check_solution(inst, sol):
        raise AssertionError(f"{route}: reconstructed witness is invalid")
    return SolveOutcome(Status.YES, sol, ticker.stats(), route)


def _call_inner(inner: Solver, sub: IdpInstance, ticker: Ticker) -> SolveOutcome:
    out = inner(sub, ticker.remaining())
    ticker.absorb(out.stats)
    if out.status is Status.BUDGET:
        raise BudgetExhausted("inner solver")
    return out


def solve_peel(
    inst: IdpInstance,
    f: Pattern,
    inner: Solver = solve_exact,
    budget: SolveBudget | None = None,
) -> SolveOutcome:
    """Solve k-IDP on (F + H)-free graphs given a solver for H-free graphs.

    With ``r = 2|V(F)| - 1``: first look for a solution whose paths all have
    at most ``r + 1`` vertices; otherwise, for each pair ``i`` and each choice
    of the first ``r + 1`` vertices after ``s_i``, delete the closed
    neighbourhood of ``s_i, u_1, .., u_r`` except ``u_{r+1}``, restart pair
    ``i`` at ``u_{r+1}`` and hand the residual instance to ``inner``.
    """
    fg = realize(f)
    if not is_linear_forest(fg):
        raise PatternError(f"{f} is not a linear forest")
    route = f"peel({f})"
    r = 2 * fg.n - 1
    ticker = Ticker(budget or SolveBudget())
    g = inst.graph
    pairs = [(p.s, p.t) for p in inst.pairs]
    terminals = inst.terminal_mask
    try:
        paths = idp_search(g, pairs, ticker, max_vertices=r + 1)
        if paths is not None:
            return _finish(inst, paths, ticker, route + ":phase1")
        for i, (s_i, t_i) in enumerate(pairs):
            others = terminals & ~((1 << s_i) | (1 << t_i))
            for prefix in _chordless_paths(g, s_i, r + 1, others, ticker):
                if t_i in prefix[1:-1]:
                    continue
                head = prefix[:-1]
                last = prefix[-1]
                doomed = g.nbhd_of_set(sum(1 << v for v in head))
                if last == t_i:
                    doomed |= g.closed_nbhd(t_i)
                else:
                    doomed &= ~(1 << last)
                if doomed & others or (last != t_i and doomed >> t_i & 1):
                    continue
                sub_g, remap = g.induced_subgraph(g.vertex_mask & ~doomed)
                sub_pairs = []
                for j, (s, t) in enumerate(pairs):
                    if j == i:
                        if last != t_i:
                            sub_pairs.append((remap[last], remap[t]))
                    else:
                        sub_pairs.append((remap[s], remap[t]))
                if not sub_pairs:
                    return _finish(inst, [prefix], ticker, route + ":phase2")
                sub = IdpInstance(sub_g, tuple(TerminalPair(a, b) for a, b in sub_pairs))
                out = _call_inner(inner, sub, ticker)
                if out.status is not Status.YES:
                    continue
                back = {new: old for old, new in remap.items()}
                inner_paths = [tuple(back[v] for v in p) for p in out.solution.paths]
                merged = []
                for j in range(len(pairs)):
                    if j == i:
                        if last == t_i:
                            merged.append(prefix)
                        else:
                            merged.append(head + inner_paths.pop(0))
                    else:
                        merged.append(inner_paths.pop(0))
                return _finish(inst, merged, ticker, f"{route}:phase2+{out.route}")
    except BudgetExhausted:
        return SolveOutcome(Status.BUDGET, None, ticker.stats(), route)
    return SolveOutcome(Status.NO, None, ticker.stats(), route)


def _short_options(
    g: Graph, pairs, short: list[int], ticker: Ticker
) -> Iterator[list[tuple[int, ...]]]:
    """Mutually induced choices of short s_i-t_i paths for the pairs in
    ``short``, none touching a terminal of another pair."""
    closed = [a | (1 << v) for v, a in enumerate(g.adj)]
    per_pair_avoid = []
    for i in short:
        avoid = 0
        for j, (s, t) in enumerate(pairs):
            if j != i:
                avoid |= closed[s] | closed[t]
        per_pair_avoid.append(avoid)

    def paths_for(idx: int, avoid: int) -> Iterator[tuple[int, ...]]:
        s, t = pairs[short[idx]]
        adj = g.adj

        def rec(p, used):
            ticker.tick(len(p))
            end = p[-1]
            if adj[end] >> t & 1:
                yield p + (t,)
            if len(p) + 2 > SHORT_PATH_MAX_VERTICES:
                return
            for w in iter_bits(adj[end] & ~used & ~avoid & ~(1 << t)):
                yield from rec(p + (w,), used | (1 << w))

        if not avoid & ((1 << s) | (1 << t)):
            yield from rec((s,), 1 << s)

    def combine(idx: int, chosen: list[tuple[int, ...]], blocked: int):
        if idx == len(short):
            yield list(chosen)
            return
        for p in paths_for(idx, per_pair_avoid[idx] | blocked):
            pm = 0
            for v in p:
                pm |= closed[v]
            yield from combine(idx + 1, chosen + [p], blocked | pm)

    yield from combine(0, [], 0)


def solve_chair_free(
    inst: IdpInstance,
    clawfree_solver: Solver = solve_exact,
    budget: SolveBudget | None = None,
    verify: bool = True,
) -> SolveOutcome:
    """k-IDP on chair-free graphs by guessing which solution paths are short.

    For every subset of pairs designated short (fewer than eight vertices),
    every compatible choice of short paths is tried: their closed
    neighbourhoods are deleted, then every common neighbour of each remaining
    pair.  Components holding terminals must be claw-free (else the branch
    is dropped) and are handed to ``clawfree_solver``.
    """
    route = "chair-free"
    g = inst.graph
    if verify and find_induced(g, CHAIR) is not None:
        raise PreconditionError("input graph contains an induced chair")
    ticker = Ticker(budget or SolveBudget())
    pairs = [(p.s, p.t) for p in inst.pairs]
    k = len(pairs)
    exhausted = False
    try:
        for subset in range(1 << k):
            short = [i for i in range(k) if subset >> i & 1]
            long_ = [i for i in range(k) if not subset >> i & 1]
            for option in _short_options(g, pairs, short, ticker):
                ticker.tick()
                try:
                    res = _chair_free_branch(g, pairs, short, long_, option, clawfree_solver, ticker)
                except BudgetExhausted:
                    if ticker.nodes > ticker.budget.node_limit:
                        raise
                    exhausted = True
                    continue
                if res is not None:
                    return _finish(inst, res, ticker, route)
    except BudgetExhausted:
        return SolveOutcome(Status.BUDGET, None, ticker.stats(), route)
    if exhausted:
        return SolveOutcome(Status.BUDGET, None, ticker.stats(), route)
    return SolveOutcome(Status.NO, None, ticker.stats(), route)


def _chair_free_branch(g, pairs, short, long_, option, clawfree_solver, ticker):
    paths: dict[int, tuple[int, ...]] = dict(zip(short, option))
    if not long_:
        return [paths[i] for i in range(len(pairs))]
    used = 0
    for p in option:
        for v in p:
            used |= 1 << v
    alive = g.vertex_mask & ~g.nbhd_of_set(used)
    for i in long_:
        s, t = pairs[i]
        alive &= ~(g.adj[s] & g.adj[t])
    for i in long_:
        s, t = pairs[i]
        if not (alive >> s & 1 and alive >> t & 1):
            return None
    comps = g.component_masks(alive)
    groups: dict[int, list[int]] = {}
    for i in long_:
        s, t = pairs[i]
        cs = next(c for c in comps if c >> s & 1)
        if not cs >> t & 1:
            return None
        groups.setdefault(cs, []).append(i)
    for comp, members in groups.items():
        sub_g, remap = g.induced_subgraph(comp)
        if find_induced(sub_g, CLAW) is not None:
            return None
        sub = IdpInstance(
            sub_g, tuple(TerminalPair(remap[pairs[i][0]], remap[pairs[i][1]]) for i in members)
        )
        out = _call_inner(clawfree_solver, sub, ticker)
        if out.status is not Status.YES:
            return None
        back = {new: old for old, new in remap.items()}
        for i, p in zip(members, out.solution.paths):
            paths[i] = tuple(back[v] for v in p)
    return [paths[i] for i in range(len(pairs))]


def solve_dispatch(
    inst: IdpInstance, h: Pattern | Graph, budget: SolveBudget | None = None
) -> SolveOutcome:
    """Route to the polynomial pipeline when H allows it and the input is
    H-free; otherwise fall back to the exact search."""
    budget = budget or SolveBudget()
    hg = h if isinstance(h, Graph) else realize(h)
    cls = classify_fixed_k(hg)
    if cls.verdict is not Verdict.POLYNOMIAL:
        out = solve_exact(inst, budget)
        out.route = f"exact[{cls.reason}]"
        return out
    if find_induced(inst.graph, hg) is not None:
        out = solve_exact(inst, budget)
        out.route = "exact[input-not-H-free]"
        return out
    forest_order, _ = split_linear_forest(hg)
    # an (F + claw)-free or F-free graph is also (F + chair)-free
    if forest_order == 0:
        return solve_chair_free(inst, solve_exact, budget)
    # the peeled prefix induces F, so every residual graph is chair-free
    return solve_peel(inst, _linear_forest_pattern(hg), _chair_free_inner, budget)


def _chair_free_inner(sub: IdpInstance, budget: SolveBudget) -> SolveOutcome:
    return solve_chair_free(sub, solve_exact, budget)


def _linear_forest_pattern(hg: Graph) -> Pattern:
    parts = []
    for comp in hg.component_masks():
        sub, _ = hg.induced_subgraph(comp)
        if sub.max_degree() <= 2:
            parts.append(path(sub.n))
    return parts[0] if len(parts) == 1 else union(*parts)
