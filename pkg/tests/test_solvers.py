import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from idpkit.cnf import from_ints
from idpkit.generators import mixed_instance, random_graph, random_hole_source
from idpkit.graph import IdpInstance, IdpSolution, TerminalPair, build_graph, make_instance
from idpkit.patterns import CHAIR, CLAW, cycle, find_induced, is_h_free, parse_pattern, path, realize
from idpkit.reductions import build_hole_graph, cycle_to_idp, witness_from_assignment
from idpkit.solvers import (
    EndpointMismatch,
    PreconditionError,
    SolveBudget,
    SolveOutcome,
    Status,
    check_solution,
    find_hole_through,
    has_independent_set,
    is_hole_through,
    shortcut,
    solve_chair_free,
    solve_dispatch,
    solve_exact,
    solve_peel,
)

import oracles

C6 = realize(cycle(6))
K4 = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
P4 = realize(path(4))


@st.composite
def instances(draw, max_n=8, max_k=3):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n // 2)))
    seed = draw(st.integers(0, 2**32))
    p = draw(st.sampled_from((0.15, 0.3, 0.45, 0.6)))
    return mixed_instance(random.Random(seed), n, k, p)


# -- checker ---------------------------------------------------------------------

def test_check_solution_examples():
    inst = make_instance(C6, [(0, 1), (3, 4)])
    assert check_solution(inst, IdpSolution(((0, 1), (3, 4))))
    inst = make_instance(P4, [(0, 1), (2, 3)])
    sol = IdpSolution(((0, 1), (2, 3)))
    assert not check_solution(inst, sol)
    assert check_solution(inst, sol, flexible=True)


def test_check_solution_rejects_repeats_and_bad_endpoints():
    inst = make_instance(C6, [(0, 2)])
    assert not check_solution(inst, IdpSolution(((0, 1, 0, 1, 2),)))
    with pytest.raises(EndpointMismatch):
        check_solution(inst, IdpSolution(((0, 1),)))
    with pytest.raises(EndpointMismatch):
        check_solution(inst, IdpSolution(((0, 1, 2), (3, 4))))


def test_shortcut_removes_chords():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert shortcut(g, [0, 1, 2, 3]) == (0, 2, 3)


# -- exact search ------------------------------------------------------------------

def test_solve_exact_examples():
    out = solve_exact(make_instance(build_graph(2, [(0, 1)]), [(0, 1)]))
    assert out.is_yes and out.solution.paths == ((0, 1),)
    assert solve_exact(make_instance(K4, [(0, 1), (2, 3)])).status is Status.NO
    art = cycle_to_idp(C6, 0, 3)
    assert solve_exact(art.instance).is_yes


@settings(max_examples=250, deadline=None)
@given(instances())
def test_solve_exact_matches_brute_force(inst):
    out = solve_exact(inst)
    assert out.is_yes == oracles.idp_answer(inst)
    if out.is_yes:
        assert check_solution(inst, out.solution)


def test_budget_exhaustion_reports_budget():
    rng = random.Random(0)
    inst = mixed_instance(rng, 40, 3, 0.2)
    tiny = SolveBudget(node_limit=1)
    assert solve_exact(inst, tiny).status is Status.BUDGET
    assert solve_peel(inst, path(2), solve_exact, tiny).status is Status.BUDGET
    with pytest.raises(ValueError):
        SolveBudget(node_limit=0)


# -- holes ---------------------------------------------------------------------------

def test_find_hole_examples():
    hole = find_hole_through(C6, 0, 3)
    assert sorted(hole) == list(range(6)) and is_hole_through(C6, hole, 0, 3)
    assert find_hole_through(K4, 0, 1) is None
    hg = build_hole_graph(from_ints(3, [(1, 2, 3)]), 1, "inner")
    hole = find_hole_through(hg.graph, hg.x, hg.y)
    assert hole is not None and is_hole_through(hg.graph, hole, hg.x, hg.y)
    witness = witness_from_assignment(from_ints(3, [(1, 2, 3)]), 1, (True, True, True))
    assert is_hole_through(hg.graph, witness, hg.x, hg.y)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_find_hole_matches_brute_force(seed):
    g, x, y = random_hole_source(random.Random(seed), (5, 9), 0.35)
    hole = find_hole_through(g, x, y)
    assert (hole is not None) == oracles.has_hole(g, x, y)
    if hole is not None:
        assert is_hole_through(g, hole, x, y)


# -- peeling -------------------------------------------------------------------------

@pytest.mark.parametrize("f", [path(1), path(2), path(3), parse_pattern("P2+P1")])
def test_peel_matches_exact(f):
    rng = random.Random(11)
    for _ in range(60):
        inst = mixed_instance(rng, rng.randint(4, 10), 2, rng.choice((0.1, 0.2, 0.3, 0.4, 0.5)))
        got = solve_peel(inst, f)
        assert got.is_yes == solve_exact(inst).is_yes
        if got.is_yes:
            assert check_solution(inst, got.solution)


def test_peel_isolated_source_is_no():
    g = build_graph(5, [(1, 2), (2, 3), (3, 4)])
    out = solve_peel(make_instance(g, [(0, 4)]), path(3))
    assert out.status is Status.NO and out.stats.nodes < 50


def test_peel_p1_phase_one_only_short_paths():
    g = realize(path(6))
    out = solve_peel(make_instance(g, [(0, 1)]), path(1))
    assert out.route.endswith("phase1")
    out = solve_peel(make_instance(g, [(0, 5)]), path(1))
    assert out.is_yes and "phase2" in out.route


def test_peel_rejects_non_linear_forest():
    with pytest.raises(ValueError):
        solve_peel(make_instance(C6, [(0, 3)]), CLAW)


# -- chair-free --------------------------------------------------------------------

def chair_free_instances(seed, count, n_range=(4, 11)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = mixed_instance(rng, rng.randint(*n_range), 2, rng.choice((0.1, 0.2, 0.3, 0.7, 0.8, 0.9)))
        if is_h_free(inst.graph, CHAIR):
            out.append(inst)
    return out


def test_chair_free_matches_exact():
    for inst in chair_free_instances(5, 80):
        got = solve_chair_free(inst)
        assert got.is_yes == solve_exact(inst).is_yes
        if got.is_yes:
            assert check_solution(inst, got.solution)


def test_chair_free_rejects_chair():
    inst = make_instance(realize(CHAIR), [(1, 4)])
    with pytest.raises(PreconditionError):
        solve_chair_free(inst)


def test_chair_free_short_paths_need_no_inner_call():
    def refuse(sub, budget):
        return SolveOutcome(Status.NO)

    inst = make_instance(C6, [(0, 1), (3, 4)])
    out = solve_chair_free(inst, refuse)
    assert out.is_yes and out.solution.paths == ((0, 1), (3, 4))


def test_chair_free_never_hands_a_claw_to_inner():
    seen = []

    def inner(sub, budget):
        seen.append(find_induced(sub.graph, CLAW))
        return solve_exact(sub, budget)

    with_claw = 0
    for inst in chair_free_instances(8, 120, (6, 11)):
        with_claw += find_induced(inst.graph, CLAW) is not None
        assert solve_chair_free(inst, inner).is_yes == solve_exact(inst).is_yes
    assert with_claw >= 5 and seen and all(c is None for c in seen)


def test_dominating_vertex_for_long_induced_paths():
    """Connected chair-free graphs with a claw and an induced P8 have a
    vertex adjacent to every vertex of that path."""
    rng = random.Random(1)
    seen = 0
    while seen < 40:
        n = 8 + rng.randint(1, 3)
        edges = [(i, i + 1) for i in range(7)]
        for v in range(8, n):
            p = rng.choice((0.5, 0.7, 0.9))
            edges += [(u, v) for u in range(v) if rng.random() < p]
        g = build_graph(n, edges)
        if not g.is_connected() or find_induced(g, CLAW) is None or not is_h_free(g, CHAIR):
            continue
        seen += 1
        for vs in itertools.combinations(range(n), 8):
            sub, _ = g.induced_subgraph(vs)
            if sub.is_connected() and sub.edge_count == 7 and sub.max_degree() <= 2:
                mask = sum(1 << v for v in vs)
                assert any(g.adj[w] & mask == mask for w in range(n))


# -- dispatch ----------------------------------------------------------------------

def test_dispatch_routes():
    inst = chair_free_instances(2, 1)[0]
    assert solve_dispatch(inst, CHAIR).route == "chair-free"
    p3_chair = parse_pattern("P3+chair")
    rng = random.Random(4)
    while True:
        inst = mixed_instance(rng, 9, 2, 0.3)
        if is_h_free(inst.graph, p3_chair):
            break
    out = solve_dispatch(inst, p3_chair)
    assert out.route.startswith("peel(P3)")
    assert out.is_yes == solve_exact(inst).is_yes
    assert solve_dispatch(inst, cycle(6)).route == "exact[contains-cycle]"
    chair_inst = make_instance(realize(CHAIR), [(1, 4)])
    assert solve_dispatch(chair_inst, CHAIR).route == "exact[input-not-H-free]"


def test_dispatch_agrees_with_exact():
    rng = random.Random(9)
    for text in ("P4", "claw", "P2+claw", "chair", "K1,4", "S1,1,3"):
        h = parse_pattern(text)
        for _ in range(15):
            inst = mixed_instance(rng, rng.randint(4, 9), 2, rng.choice((0.2, 0.4, 0.7)))
            assert solve_dispatch(inst, h).is_yes == solve_exact(inst).is_yes


# -- independent set -----------------------------------------------------------------

def test_independent_set_examples():
    assert has_independent_set(realize(cycle(3)), 2) is None
    assert has_independent_set(build_graph(2, []), 2) == [0, 1]
    with pytest.raises(ValueError):
        has_independent_set(C6, -1)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 5))
def test_independent_set_matches_brute_force(seed, k):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(0, 9), rng.choice((0.2, 0.4, 0.6)))
    got = has_independent_set(g, k)
    assert (got is not None) == oracles.brute_independent_set(g, k)
    if got is not None:
        assert len(got) == k and not any(g.has_edge(u, v) for u, v in itertools.combinations(got, 2))
