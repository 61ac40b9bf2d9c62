"""Naive reference implementations the package is checked against."""

from __future__ import annotations

import itertools

from idpkit.graph import Graph, IdpInstance, IdpSolution
from idpkit.solvers.base import check_solution


def induced_edges(g: Graph, vs) -> set[frozenset[int]]:
    return {frozenset((u, v)) for u, v in itertools.combinations(vs, 2) if g.has_edge(u, v)}


def embeds(host: Graph, pat: Graph) -> bool:
    """Some injective map pat -> host preserves adjacency and non-adjacency.

    Plain enumeration of injective maps, extended one pattern vertex at a
    time in id order and cut as soon as a pair disagrees.
    """
    if pat.n > host.n:
        return False

    def extend(img: list[int]) -> bool:
        a = len(img)
        if a == pat.n:
            return True
        for v in range(host.n):
            if v in img:
                continue
            if all(pat.has_edge(a, b) == host.has_edge(v, img[b]) for b in range(a)):
                if extend(img + [v]):
                    return True
        return False

    return extend([])


def check_embedding(host: Graph, pat: Graph, emb: dict[int, int]) -> bool:
    if sorted(emb) != list(range(pat.n)) or len(set(emb.values())) != pat.n:
        return False
    return all(
        pat.has_edge(a, b) == host.has_edge(emb[a], emb[b])
        for a, b in itertools.combinations(range(pat.n), 2)
    )


def chordless_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    out = []

    def rec(p, forb):
        e = p[-1]
        if g.has_edge(e, t):
            out.append(p + [t])
            return
        for w in g.neighbors(e):
            if not forb >> w & 1 and w != t:
                rec(p + [w], forb | g.closed_nbhd(e))

    rec([s], 1 << s)
    return out


def idp_answer(inst: IdpInstance) -> bool:
    options = [chordless_paths(inst.graph, p.s, p.t) for p in inst.pairs]
    for combo in itertools.product(*options):
        if check_solution(inst, IdpSolution(tuple(map(tuple, combo)))):
            return True
    return False


def has_hole(g: Graph, x: int, y: int) -> bool:
    rest = [v for v in range(g.n) if v not in (x, y)]
    for r in range(2, len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            vs = (x, y) + extra
            mask = sum(1 << v for v in vs)
            if all((g.adj[v] & mask).bit_count() == 2 for v in vs):
                sub, _ = g.induced_subgraph(mask)
                if sub.is_connected():
                    return True
    return False


def longest_induced_path(g: Graph) -> int:
    best = min(g.n, 1)
    for r in range(2, g.n + 1):
        for vs in itertools.combinations(range(g.n), r):
            sub, _ = g.induced_subgraph(vs)
            degs = sorted(sub.degrees())
            if sub.is_connected() and sub.edge_count == r - 1 and degs[-1] <= 2:
                best = r
                break
    return best


def truth_table_sat(cnf) -> bool:
    return any(cnf.satisfied_by(a) for a in itertools.product((False, True), repeat=cnf.n))


def brute_independent_set(g: Graph, k: int) -> bool:
    return any(
        not any(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))
        for vs in itertools.combinations(range(g.n), k)
    )


def fixed_k_by_embedding(h: Graph) -> str:
    """Fixed-k verdict from containment alone.

    Polynomial iff h is an induced subgraph of P_M + chair; hard iff h
    contains a cycle, K_{1,4} or some H_i; open otherwise.
    """
    from idpkit.patterns import CHAIR, cycle, hgraph, path, realize, star, union

    comps = len(h.component_masks())
    host = realize(union(path(h.n + comps - 1), CHAIR))
    if embeds(host, h):
        return "PolynomialTime"
    hard = [cycle(s) for s in range(3, h.n + 1)] + [star(4)]
    hard += [hgraph(i) for i in range(1, h.n - 4)]
    if any(embeds(h, realize(p)) for p in hard):
        return "NpComplete"
    return "Open"


def variable_k_by_embedding(h: Graph) -> str:
    """Variable-k verdict: hard unless h is a linear forest (no induced
    cycle and no induced claw), polynomial iff h embeds in sP3 + P6."""
    from idpkit.patterns import CLAW, cycle, path, realize, union

    if embeds(h, realize(CLAW)) or any(embeds(h, realize(cycle(s))) for s in range(3, h.n + 1)):
        return "NpComplete"
    host = realize(union(*([path(3)] * h.n), path(6)))
    return "PolynomialTime" if embeds(host, h) else "Quasipolynomial"
