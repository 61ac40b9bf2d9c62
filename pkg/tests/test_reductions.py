import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from idpkit.cnf import from_ints
from idpkit.generators import random_graph, random_hole_source
from idpkit.graph import IdpSolution, build_graph
from idpkit.patterns import cycle, hgraph, is_h_free, longest_induced_path_at_most, realize
from idpkit.reductions import (
    AssignmentError,
    CycleReductionError,
    ProvenanceError,
    ReductionArtifact,
    build_hole_graph,
    cycle_to_idp,
    is_to_idp,
    role,
    sat_to_idp,
    solution_from_hole,
    solution_from_independent_set,
    witness_from_assignment,
)
from idpkit.reductions.artifact import ROLE_RE
from idpkit.reductions.sat import dash_edges, rail_length, witness_solution
from idpkit.solvers import check_solution, find_hole_through, is_hole_through, solve_exact

import oracles

C6 = realize(cycle(6))
SINGLE = from_ints(3, [(1, 2, 3)])
CONTRA = from_ints(1, [(1, 1, 1), (-1, -1, -1)])


# -- cycle gadgets -----------------------------------------------------------------

@pytest.mark.parametrize("sub", [0, 1, 2])
def test_cycle_to_idp_c6(sub):
    art = cycle_to_idp(C6, 0, 3, sub)
    assert art.instance.graph.n == 6 - 2 + 16 + 20 * sub
    assert art.expected_answer is True and art.meta["expected_source"] == "oracle"
    out = solve_exact(art.instance)
    assert out.is_yes
    hole = find_hole_through(C6, 0, 3)
    assert check_solution(art.instance, solution_from_hole(art, C6, hole))
    created = art.vertices_with_role(r"[xy]gad:.*")
    assert all(art.instance.graph.degree(v) <= 3 for v in created)


def test_cycle_to_idp_disconnected_is_no():
    two_c4 = build_graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    art = cycle_to_idp(two_c4, 0, 4)
    assert art.expected_answer is False
    assert not solve_exact(art.instance).is_yes


@pytest.mark.parametrize(
    "g, x, y",
    [
        (C6, 0, 1),  # adjacent
        (realize(hgraph(1)), 0, 3),  # degree 3 at x
        (C6, 2, 2),
        (C6, 0, 9),
    ],
)
def test_cycle_to_idp_rejects(g, x, y):
    with pytest.raises(CycleReductionError):
        cycle_to_idp(g, x, y)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([0, 1, 2]))
def test_hole_iff_two_paths(seed, sub):
    g, x, y = random_hole_source(random.Random(seed), (5, 8), 0.35)
    art = cycle_to_idp(g, x, y, sub)
    assert art.expected_answer == oracles.has_hole(g, x, y)
    assert solve_exact(art.instance).is_yes == art.expected_answer


def test_subdivisions_keep_gadget_roles_distinct():
    art = cycle_to_idp(C6, 0, 3, 2)
    assert len(set(art.provenance)) == art.instance.graph.n
    assert all(ROLE_RE.match(r) for r in art.provenance)


# -- artifacts ---------------------------------------------------------------------

def test_artifact_roundtrip_and_validation():
    art = cycle_to_idp(C6, 0, 3, 1)
    back = ReductionArtifact.from_dict(json.loads(json.dumps(art.to_dict())))
    assert back.instance == art.instance and back.provenance == art.provenance
    with pytest.raises(ProvenanceError):
        ReductionArtifact(art.instance, art.provenance[:-1], {})
    with pytest.raises(ProvenanceError):
        ReductionArtifact(art.instance, ("bad role",) * art.instance.graph.n, {})
    with pytest.raises(ProvenanceError):
        ReductionArtifact(art.instance, art.provenance, {"expected_answer": True, "expected_source": "guess"})
    assert role("lit", "a2+", 3) == "lit:a2+[3]"


# -- SAT -----------------------------------------------------------------------------

def test_dash_and_rail_lengths():
    assert [dash_edges(ell, "edges") for ell in (1, 2, 3)] == [1, 2, 3]
    assert [dash_edges(ell, "inner") for ell in (1, 2, 3)] == [2, 3, 4]
    assert rail_length(SINGLE) == 2
    assert rail_length(from_ints(1, [(1, 1, 1)])) == 3
    with pytest.raises(ValueError):
        dash_edges(0)


def test_single_clause_is_yes_with_witness():
    art = sat_to_idp(SINGLE, 1)
    assert art.expected_answer is True and art.meta["expected_source"] == "witness"
    assert check_solution(art.instance, witness_solution(art))
    assert solve_exact(art.instance).is_yes
    hg = build_hole_graph(SINGLE, 1)
    hole = witness_from_assignment(SINGLE, 1, (True, True, True), hg=hg)
    assert is_hole_through(hg.graph, hole, hg.x, hg.y)
    mask = sum(1 << v for v in hole)
    assert all((hg.graph.adj[v] & mask).bit_count() == 2 for v in hole)


def test_contradiction_is_no():
    art = sat_to_idp(CONTRA, 1)
    assert art.expected_answer is False and art.meta["expected_source"] == "oracle"
    assert not solve_exact(art.instance).is_yes
    hg = build_hole_graph(CONTRA, 1)
    assert find_hole_through(hg.graph, hg.x, hg.y) is None


def test_witness_third_branch():
    cnf = from_ints(3, [(-1, -2, 3)])
    hg = build_hole_graph(cnf, 1)
    hole = set(witness_from_assignment(cnf, 1, (True, True, True), hg=hg))
    assert hg[role("cls", "c3+", 1)] in hole and hg[role("cls", "c3-", 1)] in hole
    assert hg[role("cls", "c12+", 1)] not in hole


def test_witness_rejects_bad_assignments():
    with pytest.raises(AssignmentError):
        witness_from_assignment(SINGLE, 1, (False, False, False))
    with pytest.raises(AssignmentError):
        witness_from_assignment(SINGLE, 1, (True,))


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_single_clause_freeness(ell):
    g = sat_to_idp(SINGLE, ell, fill_expected=False).instance.graph
    assert is_h_free(g, cycle(6))
    for i in range(1, ell + 1):
        assert is_h_free(g, hgraph(i))


def test_edge_dash_convention_breaks_c6_freeness():
    # dashes of exactly ell edges collapse to plain edges at ell = 1
    g = sat_to_idp(SINGLE, 1, dash="edges", fill_expected=False).instance.graph
    assert not is_h_free(g, cycle(6))


def test_every_assignment_gives_hole_on_small_formulas():
    cnf = from_ints(3, [(1, -2, 3), (-1, 2, -3)])
    hg = build_hole_graph(cnf, 2)
    for bits in range(8):
        a = tuple(bool(bits >> i & 1) for i in range(3))
        if cnf.satisfied_by(a):
            hole = witness_from_assignment(cnf, 2, a, hg=hg)
            assert is_hole_through(hg.graph, hole, hg.x, hg.y)


# -- independent set ---------------------------------------------------------------

def test_is_to_idp_edge_classes_small():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    art = is_to_idp(g, 2)
    classes = art.meta["edge_classes"]
    assert classes["consistency"] == 24
    assert classes["independence"] == 24
    # the four (copy, copy) combinations list each set edge twice
    assert classes["set"] == 16 and art.meta["edge_additions"]["set"] == 32


def test_is_to_idp_examples():
    assert is_to_idp(realize(cycle(3)), 2).expected_answer is False
    assert not solve_exact(is_to_idp(realize(cycle(3)), 2).instance).is_yes
    art = is_to_idp(build_graph(3, []), 2)
    assert art.expected_answer is True
    assert check_solution(art.instance, IdpSolution(solution_from_independent_set(art, [0, 2])))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_is_round_trip(seed, k):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 6), rng.choice((0.2, 0.4, 0.6)))
    art = is_to_idp(g, k)
    assert art.expected_answer == oracles.brute_independent_set(g, k)
    assert solve_exact(art.instance).is_yes == art.expected_answer
    assert longest_induced_path_at_most(art.instance.graph, 4 * k + 4)
