"""Seeded random graphs and instances for the oracle-agreement suites."""

from __future__ import annotations

import itertools
import random

from .graph import Graph, IdpInstance, TerminalPair, build_graph
from .patterns import Pattern, is_h_free


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_pairs(rng: random.Random, n: int, k: int) -> tuple[TerminalPair, ...]:
    if 2 * k > n:
        raise ValueError(f"{k} pairs need at least {2 * k} vertices, got {n}")
    vs = rng.sample(range(n), 2 * k)
    return tuple(TerminalPair(vs[2 * i], vs[2 * i + 1]) for i in range(k))


def random_instance(rng: random.Random, n: int, k: int, p: float) -> IdpInstance:
    g = random_graph(rng, n, p)
    return IdpInstance(g, random_pairs(rng, n, k))


def random_h_free_instance(
    rng: random.Random,
    n_range: tuple[int, int],
    k: int,
    densities: tuple[float, ...],
    pattern: Pattern | Graph,
    max_tries: int = 100_000,
) -> IdpInstance:
    """Rejection-sample an instance whose graph is ``pattern``-free."""
    for _ in range(max_tries):
        n = rng.randint(*n_range)
        g = random_graph(rng, n, rng.choice(densities))
        if is_h_free(g, pattern):
            return IdpInstance(g, random_pairs(rng, n, k))
    raise RuntimeError(f"no {pattern}-free graph found in {max_tries} tries")


def random_hole_source(
    rng: random.Random, n_range: tuple[int, int], p: float, max_tries: int = 100_000
) -> tuple[Graph, int, int]:
    """A random graph with two non-adjacent degree-2 vertices x, y."""
    for _ in range(max_tries):
        n = rng.randint(*n_range)
        g = random_graph(rng, n, p)
        deg2 = [v for v in range(n) if g.degree(v) == 2]
        cands = [(x, y) for x, y in itertools.combinations(deg2, 2) if not g.has_edge(x, y)]
        if cands:
            x, y = rng.choice(cands)
            return g, x, y
    raise RuntimeError("no graph with two non-adjacent degree-2 vertices found")


def planted_instance(rng: random.Random, n: int, k: int, p: float) -> IdpInstance:
    """A G(n, p) graph with k mutually induced paths forced in.

    Random disjoint vertex sequences become paths, every edge between two
    different sequences is removed, and the sequence ends are the terminals.
    Path lengths are random, so both short and long solutions occur.
    """
    if 2 * k > n:
        raise ValueError(f"{k} pairs need at least {2 * k} vertices, got {n}")
    order = rng.sample(range(n), n)
    spare = n - 2 * k
    cuts = sorted(rng.randint(0, spare) for _ in range(k - 1))
    sizes = [b - a + 2 for a, b in zip([0] + cuts, cuts + [rng.randint(cuts[-1] if cuts else 0, spare)])]
    seqs, pos = [], 0
    for s in sizes:
        seqs.append(order[pos:pos + s])
        pos += s
    owner = {v: i for i, seq in enumerate(seqs) for v in seq}
    edges = set()
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p and not (u in owner and v in owner and owner[u] != owner[v]):
            edges.add((u, v))
    for seq in seqs:
        for u, v in zip(seq, seq[1:]):
            edges.add((min(u, v), max(u, v)))
    g = build_graph(n, sorted(edges))
    return IdpInstance(g, tuple(TerminalPair(seq[0], seq[-1]) for seq in seqs))


def mixed_instance(rng: random.Random, n: int, k: int, p: float) -> IdpInstance:
    """Plain or planted with equal probability."""
    if rng.random() < 0.5:
        return random_instance(rng, n, k, p)
    return planted_instance(rng, n, k, p)
