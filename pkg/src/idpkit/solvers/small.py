"""Desk-scale exact oracles for the source problems of the reductions."""

from __future__ import annotations

from ..cnf import CnfFormula
from ..graph import Graph, iter_bits


def sat_solve(cnf: CnfFormula) -> tuple[bool, ...] | None:
    """DPLL with unit propagation; returns a satisfying assignment or None."""
    clauses = [frozenset((lit.var, lit.positive) for lit in c) for c in cnf.clauses]

    def simplify(cls, var, val):
        out = []
        for c in cls:
            if (var, val) in c:
                continue
            rest = c - {(var, not val)}
            if not rest:
                return None
            out.append(rest)
        return out

    def dpll(cls, assign):
        while True:
            unit = next((c for c in cls if len(c) == 1), None)
            if unit is None:
                break
            (var, val), = unit
            assign = {**assign, var: val}
            cls = simplify(cls, var, val)
            if cls is None:
                return None
        if not cls:
            return assign
        var = min(v for c in cls for v, _ in c)
        for val in (True, False):
            reduced = simplify(cls, var, val)
            if reduced is not None:
                res = dpll(reduced, {**assign, var: val})
                if res is not None:
                    return res
        return None

    res = dpll(clauses, {})
    if res is None:
        return None
    assignment = tuple(res.get(v, True) for v in range(cnf.n))
    assert cnf.satisfied_by(assignment)
    return assignment


def has_independent_set(g: Graph, k: int) -> list[int] | None:
    """Branch on a maximum-degree candidate; returns a size-k independent set."""
    if k < 0:
        raise ValueError("k must be non-negative")
    adj = g.adj

    def rec(cand: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        if len(chosen) + cand.bit_count() < k:
            return None
        # a vertex of degree <= 1 inside cand is always safe to take
        best, best_deg = -1, -1
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if d <= 1:
                return rec(cand & ~adj[v] & ~(1 << v), chosen + [v])
            if d > best_deg:
                best, best_deg = v, d
        res = rec(cand & ~adj[best] & ~(1 << best), chosen + [best])
        if res is not None:
            return res
        return rec(cand & ~(1 << best), chosen)

    res = rec(g.vertex_mask, [])
    return sorted(res) if res is not None else None
