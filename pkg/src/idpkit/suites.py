"""Oracle-agreement and certification suites over seeded or enumerated corpora.

Every suite returns a ``SuiteReport``; any disagreement is kept together with
the offending instance so the caller can dump it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any

from .cnf import enumerate_canonical
from .generators import mixed_instance, random_graph, random_hole_source
from .graph import IdpInstance, IdpSolution
from .io import to_dict
from .patterns import CHAIR, Pattern, cycle, hgraph, is_h_free, longest_induced_path_at_most, path
from .reductions.cycle import cycle_to_idp, solution_from_hole
from .reductions.indset import is_to_idp, solution_from_independent_set
from .reductions.sat import DEFAULT_DASH, build_hole_graph, sat_to_idp, witness_from_assignment
from .solvers.base import SolveBudget, Status, check_solution
from .solvers.exact import find_hole_through, is_hole_through, solve_exact
from .solvers.poly import solve_chair_free, solve_peel
from .solvers.small import has_independent_set, sat_solve

DENSITIES = (0.1, 0.2, 0.3, 0.4, 0.5)
CHAIR_FREE_DENSITIES = (0.1, 0.2, 0.3, 0.7, 0.8, 0.9)


@dataclass
class SuiteReport:
    name: str
    total: int = 0
    agree: int = 0
    yes: int = 0
    budget: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.agree == self.total and self.budget == 0 and not self.failures

    def count(self, key: str, by: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + by

    def fail(self, reason: str, **payload: Any) -> None:
        self.failures.append({"reason": reason, **payload})

    def summary(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in sorted(self.counters.items()))
        return (
            f"{self.name}: {self.agree}/{self.total} agree, yes={self.yes}, "
            f"budget={self.budget}, failures={len(self.failures)}{extra}"
        )


def _compare(rep: SuiteReport, inst: IdpInstance, got, want, label: str) -> None:
    rep.total += 1
    if got.status is Status.BUDGET or want.status is Status.BUDGET:
        rep.budget += 1
        rep.fail("budget", label=label, instance=to_dict(inst))
        return
    if got.is_yes == want.is_yes:
        rep.agree += 1
        rep.yes += want.is_yes
    else:
        rep.fail("disagreement", label=label, instance=to_dict(inst), got=got.status.value,
                 want=want.status.value)


def peel_suite(
    seed: int,
    count: int = 200,
    n_max: int = 11,
    k: int = 2,
    f: Pattern = path(3),
    budget: SolveBudget | None = None,
) -> SuiteReport:
    """solve_peel(f, inner=exact) against solve_exact on random instances."""
    budget = budget or SolveBudget()
    rng = random.Random(seed)
    rep = SuiteReport(f"peel[{f}]")
    start = time.perf_counter()
    for idx in range(count):
        n = rng.randint(2 * k, n_max)
        inst = mixed_instance(rng, n, k, rng.choice(DENSITIES))
        got = solve_peel(inst, f, solve_exact, budget)
        _compare(rep, inst, got, solve_exact(inst, budget), f"#{idx}")
        if got.is_yes:
            rep.count("phase2" if ":phase2" in got.route else "phase1")
    rep.elapsed = time.perf_counter() - start
    return rep


def chair_free_suite(
    seed: int, count: int = 200, n_max: int = 12, k: int = 2, budget: SolveBudget | None = None
) -> SuiteReport:
    """solve_chair_free against solve_exact on random chair-free instances."""
    budget = budget or SolveBudget()
    rng = random.Random(seed)
    rep = SuiteReport("chair-free")
    start = time.perf_counter()
    idx = 0
    while idx < count:
        n = rng.randint(2 * k, n_max)
        inst = mixed_instance(rng, n, k, rng.choice(CHAIR_FREE_DENSITIES))
        if not is_h_free(inst.graph, CHAIR):
            rep.count("rejected")
            continue
        got = solve_chair_free(inst, solve_exact, budget)
        _compare(rep, inst, got, solve_exact(inst, budget), f"#{idx}")
        idx += 1
    rep.elapsed = time.perf_counter() - start
    return rep


def hole_suite(
    seed: int,
    count: int = 300,
    n_max: int = 10,
    subdivisions: tuple[int, ...] = (0, 1, 2),
    budget: SolveBudget | None = None,
) -> SuiteReport:
    """Hole through x, y exists iff the compiled 2-IDP instance is Yes."""
    budget = budget or SolveBudget()
    rng = random.Random(seed)
    rep = SuiteReport("hole")
    start = time.perf_counter()
    for idx in range(count):
        g, x, y = random_hole_source(rng, (5, n_max), rng.choice((0.2, 0.3, 0.4)))
        hole = find_hole_through(g, x, y, budget)
        if hole is not None and not is_hole_through(g, hole, x, y):
            rep.fail("bad-hole", label=f"#{idx}", hole=hole)
        for sub in subdivisions:
            art = cycle_to_idp(g, x, y, sub, oracle_budget=None,
                               expected=hole is not None, expected_source="oracle")
            out = solve_exact(art.instance, budget)
            rep.total += 1
            if out.status is Status.BUDGET:
                rep.budget += 1
                continue
            if out.is_yes == (hole is not None):
                rep.agree += 1
                rep.yes += out.is_yes
            else:
                rep.fail("disagreement", label=f"#{idx}/sub{sub}", instance=to_dict(art.instance))
            created = art.vertices_with_role(r"[xy]gad:.*")
            if any(art.instance.graph.degree(v) > 3 for v in created):
                rep.fail("degree-bound", label=f"#{idx}/sub{sub}")
            if hole is not None and not check_solution(art.instance, solution_from_hole(art, g, hole)):
                rep.fail("hole-transfer", label=f"#{idx}/sub{sub}")
    rep.elapsed = time.perf_counter() - start
    return rep


def sat_suite(
    max_vars: int = 4,
    max_clauses: int = 2,
    ells: tuple[int, ...] = (1, 2),
    subdivisions: int = 0,
    dash: str = DEFAULT_DASH,
    budget: SolveBudget | None = None,
) -> SuiteReport:
    """Satisfiability equals the compiled instance's answer; satisfiable
    formulas yield a verified hole through x and y."""
    budget = budget or SolveBudget(50_000_000, 60.0)
    rep = SuiteReport(f"sat[n<={max_vars},m<={max_clauses},ell={','.join(map(str, ells))}]")
    start = time.perf_counter()
    formulas = list(enumerate_canonical(max_vars, max_clauses))
    rep.count("formulas", len(formulas))
    for ell in ells:
        for cnf in formulas:
            label = f"ell={ell} {cnf}"
            assignment = sat_solve(cnf)
            art = sat_to_idp(cnf, ell, subdivisions, dash, fill_expected=False)
            out = solve_exact(art.instance, budget)
            rep.total += 1
            if out.status is Status.BUDGET:
                rep.budget += 1
                rep.fail("budget", label=label)
                continue
            if out.is_yes == (assignment is not None):
                rep.agree += 1
                rep.yes += out.is_yes
            else:
                rep.fail("disagreement", label=label)
            if assignment is not None:
                hg = build_hole_graph(cnf, ell, dash)
                hole = witness_from_assignment(cnf, ell, assignment, dash, hg)
                if not is_hole_through(hg.graph, hole, hg.x, hg.y):
                    rep.fail("witness-not-hole", label=label)
    rep.elapsed = time.perf_counter() - start
    return rep


def freeness_suite(
    max_vars: int = 4,
    max_clauses: int = 2,
    ells: tuple[int, ...] = (1, 2),
    subdivisions: int = 0,
    dash: str = DEFAULT_DASH,
) -> SuiteReport:
    """Every compiled SAT instance is C6-free and H_i-free for i <= ell."""
    rep = SuiteReport(f"freeness[dash={dash},sub={subdivisions}]")
    start = time.perf_counter()
    for ell in ells:
        for cnf in enumerate_canonical(max_vars, max_clauses):
            art = sat_to_idp(cnf, ell, subdivisions, dash, fill_expected=False)
            g = art.instance.graph
            rep.total += 1
            bad = [str(p) for p in [cycle(6)] + [hgraph(i) for i in range(1, ell + 1)] if not is_h_free(g, p)]
            if bad:
                rep.fail("contains", label=f"ell={ell} {cnf}", patterns=bad)
            else:
                rep.agree += 1
    rep.elapsed = time.perf_counter() - start
    return rep


def stated_edge_counts(n: int, edges: int, k: int) -> dict[str, int]:
    """Edge-class sizes as stated for the construction: kn(n-1), 4k(k-1)|E|, 4k(k-1)n."""
    return {
        "consistency": k * n * (n - 1),
        "independence": 4 * k * (k - 1) * edges,
        "set": 4 * k * (k - 1) * n,
    }


def is_suite(
    seed: int,
    count: int = 150,
    n_max: int = 7,
    k_max: int = 3,
    check_counts: bool = True,
    budget: SolveBudget | None = None,
) -> SuiteReport:
    """IS(g, k) iff the compiled instance is Yes, plus structural checks."""
    budget = budget or SolveBudget()
    rng = random.Random(seed)
    rep = SuiteReport("is")
    start = time.perf_counter()
    for idx in range(count):
        n = rng.randint(1, n_max)
        k = rng.randint(1, k_max)
        g = random_graph(rng, n, rng.choice((0.2, 0.3, 0.4, 0.5, 0.6)))
        art = is_to_idp(g, k, fill_expected=False)
        indep = has_independent_set(g, k)
        out = solve_exact(art.instance, budget)
        label = f"#{idx} n={n} k={k} edges={g.edges()}"
        rep.total += 1
        if out.status is Status.BUDGET:
            rep.budget += 1
        elif out.is_yes == (indep is not None):
            rep.agree += 1
            rep.yes += out.is_yes
        else:
            rep.fail("disagreement", label=label)
        if indep is not None:
            sol = IdpSolution(solution_from_independent_set(art, indep))
            if not check_solution(art.instance, sol):
                rep.fail("witness", label=label)
        if check_counts:
            stated = stated_edge_counts(n, g.edge_count, k)
            for cls, want in stated.items():
                got = art.meta["edge_classes"].get(cls, 0)
                if got != want:
                    rep.count(f"count-mismatch-{cls}")
                    if rep.counters[f"count-mismatch-{cls}"] == 1:
                        rep.fail("edge-count", label=label, edge_class=cls, got=got, stated=want)
        if not longest_induced_path_at_most(art.instance.graph, 4 * k + 4):
            rep.fail("induced-path-bound", label=label)
    rep.elapsed = time.perf_counter() - start
    return rep
