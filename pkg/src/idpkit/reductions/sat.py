"""3-SAT  ->  hole through x and y  ->  2-IDP, avoiding C6 and short H-graphs.

The hole graph is assembled from one gadget per literal occurrence, per
clause and per variable.  Edges drawn dashed in the gadget drawings become
paths whose length grows with ``ell``; every gadget table below lists the
drawing's grid position (row, column) of each endpoint so the transcription
can be audited line by line.

Vertex roles (1-based gadget indices):

* ``lit:a[j]``, ``lit:a'[j]``, ``lit:a1+[j]`` .. ``lit:b4-[j]`` for literal j;
* ``cls:c0+[i]`` .. ``cls:c3-[i]`` for clause i;
* ``var:d+[i]`` .. ``var:d-[i]`` and ``var:p+[i,j]`` .. ``var:p--[i,j]``;
* ``term:x`` and ``term:y``; dashed-path interiors are ``<gadget>:<u>~<v>[.., t]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cnf import CnfFormula
from ..graph import Graph, GraphBuilder, IdpSolution
from ..io import dumps_text
from ..solvers.base import check_solution
from ..solvers.small import sat_solve
from .artifact import ReductionArtifact, digest, role
from .cycle import cycle_to_idp, solution_from_hole

# --- literal gadget ---------------------------------------------------------
# Grid of the literal drawing (row, col):
#   row 0: a1+ (0,1)  a1++ (0,2)  a2+ (0,3)  a3+ (0,4)  a4++ (0,5)  a4+ (0,6)
#   row 1: a (1,0)                                                  a' (1,7)
#   row 2: a1- (2,1)  a1-- (2,2)  a2- (2,3)  a3- (2,4)  a4-- (2,5)  a4- (2,6)
#   row 3: b1+ (3,1)  b1++ (3,2)  b2+ (3,3)  b3+ (3,4)  b4++ (3,5)  b4+ (3,6)
#   row 4: b (4,0)                                                  b' (4,7)
#   row 5: b1- (5,1)  b1-- (5,2)  b2- (5,3)  b3- (5,4)  b4-- (5,5)  b4- (5,6)
LITERAL_NAMES = (
    "a", "a'", "b", "b'",
    "a1+", "a1++", "a2+", "a3+", "a4++", "a4+",
    "a1-", "a1--", "a2-", "a3-", "a4--", "a4-",
    "b1+", "b1++", "b2+", "b3+", "b4++", "b4+",
    "b1-", "b1--", "b2-", "b3-", "b4--", "b4-",
)

LITERAL_SOLID = (
    ("a", "a1+"),      # (1,0)-(0,1)
    ("a", "a1-"),      # (1,0)-(2,1)
    ("b", "b1+"),      # (4,0)-(3,1)
    ("b", "b1-"),      # (4,0)-(5,1)
    ("a1+", "a1++"),   # (0,1)-(0,2)
    ("a1-", "a1--"),   # (2,1)-(2,2)
    ("b1+", "b1++"),   # (3,1)-(3,2)
    ("b1-", "b1--"),   # (5,1)-(5,2)
    ("a2+", "a3+"),    # (0,3)-(0,4)
    ("a2-", "a3-"),    # (2,3)-(2,4)
    ("b2+", "b3+"),    # (3,3)-(3,4)
    ("b2-", "b3-"),    # (5,3)-(5,4)
    ("a4++", "a4+"),   # (0,5)-(0,6)
    ("a4--", "a4-"),   # (2,5)-(2,6)
    ("b4++", "b4+"),   # (3,5)-(3,6)
    ("b4--", "b4-"),   # (5,5)-(5,6)
    ("a4+", "a'"),     # (0,6)-(1,7)
    ("a4-", "a'"),     # (2,6)-(1,7)
    ("b4+", "b'"),     # (3,6)-(4,7)
    ("b4-", "b'"),     # (5,6)-(4,7)
)


def _joins() -> tuple[tuple[str, str], ...]:
    """Complete joins between the two-vertex blocks at levels 1 and 4.

    Columns 1-2 (and 5-6) of the drawing join rows 0~2, 0~5, 2~3 and 3~5,
    each block being the pair (col 1, col 2) resp. (col 5, col 6) of a row.
    """
    out = []
    for lvl, (p, pp, m, mm) in (("1", ("+", "++", "-", "--")), ("4", ("++", "+", "--", "-"))):
        blocks = {
            "A+": (f"a{lvl}{p}", f"a{lvl}{pp}"),
            "A-": (f"a{lvl}{m}", f"a{lvl}{mm}"),
            "B+": (f"b{lvl}{p}", f"b{lvl}{pp}"),
            "B-": (f"b{lvl}{m}", f"b{lvl}{mm}"),
        }
        for x, y in (("A+", "A-"), ("A+", "B-"), ("A-", "B+"), ("B+", "B-")):
            for u in blocks[x]:
                for v in blocks[y]:
                    out.append((u, v))
    return tuple(out)


LITERAL_JOINS = _joins()

LITERAL_DASHED = (
    ("a1++", "a2+"),   # (0,2)..(0,3)
    ("a3+", "a4++"),   # (0,4)..(0,5)
    ("a1--", "a2-"),   # (2,2)..(2,3)
    ("a3-", "a4--"),   # (2,4)..(2,5)
    ("b1++", "b2+"),   # (3,2)..(3,3)
    ("b3+", "b4++"),   # (3,4)..(3,5)
    ("b1--", "b2-"),   # (5,2)..(5,3)
    ("b3-", "b4--"),   # (5,4)..(5,5)
)

# --- clause gadget ----------------------------------------------------------
# Grid of the clause drawing (row, col):
#   row 0: c1+ (0,2)  c1- (0,3)
#   row 1: c12+ (1,1)  c12- (1,4)
#   row 2: c0+ (2,0)  c2+ (2,2)  c2- (2,3)  c0- (2,5)
#   row 3: c3+ (3,2)  c3- (3,3)
CLAUSE_NAMES = ("c0+", "c12+", "c1+", "c2+", "c3+", "c0-", "c12-", "c1-", "c2-", "c3-")

CLAUSE_DASHED = (
    ("c0+", "c12+"),   # (2,0)..(1,1)
    ("c12+", "c1+"),   # (1,1)..(0,2)
    ("c12+", "c2+"),   # (1,1)..(2,2)
    ("c0+", "c3+"),    # (2,0)..(3,2)
    ("c0-", "c12-"),   # (2,5)..(1,4)
    ("c12-", "c1-"),   # (1,4)..(0,3)
    ("c12-", "c2-"),   # (1,4)..(2,3)
    ("c0-", "c3-"),    # (2,5)..(3,3)
)

# clause/literal interface drawing: c^{j+} (2,3) and c^{j-} (2,4) both see
# a2- (0,3), a3- (0,4), b2- (1,3), b3- (1,4) of the j-th literal
CLAUSE_TO_LITERAL = ("a2-", "a3-", "b2-", "b3-")

# --- variable gadget --------------------------------------------------------
# Upper rail P+: d+ - d++ ~ p+_1 - p++_1 ~ ... ~ p+_F - p++_F ~ d-+ - d-
# lower rail P-: d+ - d+- ~ p-_1 - p--_1 ~ ... ~ p-_F - p--_F ~ d-- - d-
VARIABLE_NAMES = ("d+", "d++", "d+-", "d-+", "d--", "d-")
VARIABLE_SOLID = (("d+", "d++"), ("d+", "d+-"), ("d-+", "d-"), ("d--", "d-"))

# occurrence wiring: both ends of a removed full rail edge see these four
OCCURRENCE_TO_LITERAL = ("a2+", "a3+", "b2+", "b3+")

DASH_CONVENTIONS = ("edges", "inner")
DEFAULT_DASH = "inner"


class WitnessError(ValueError):
    pass


class AssignmentError(WitnessError):
    """The assignment does not satisfy the formula."""


class DuplicateSelection(RuntimeError):
    """A witness step selected a vertex that an earlier step already chose."""


class NotAHole(RuntimeError):
    """The selected vertex set does not induce a cycle through x and y."""


def dash_edges(ell: int, dash: str = DEFAULT_DASH) -> int:
    """Number of edges on a dashed path for parameter ``ell``.

    ``edges``: ``ell`` edges (``ell - 1`` inner vertices);
    ``inner``: ``ell`` inner vertices (``ell + 1`` edges).
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if dash == "edges":
        return ell
    if dash == "inner":
        return ell + 1
    raise ValueError(f"unknown dash convention {dash!r}; expected one of {DASH_CONVENTIONS}")


def rail_length(cnf: CnfFormula) -> int:
    """Full edges per variable rail: 2m, or more if some literal occurs more often."""
    counts = [0] * (2 * cnf.n)
    for lit in cnf.literals():
        counts[2 * lit.var + lit.positive] += 1
    return max([2 * cnf.m] + counts)


@dataclass
class HoleGraph:
    """The hole graph of a formula with named vertices and dashed interiors."""

    graph: Graph
    x: int
    y: int
    ids: dict[str, int]
    dashes: dict[tuple[str, str], list[int]] = field(default_factory=dict)
    links: list[tuple[str, str]] = field(default_factory=list)
    occurrences: dict[tuple[int, bool], list[int]] = field(default_factory=dict)

    def __getitem__(self, r: str) -> int:
        return self.ids[r]

    def dash(self, u: str, v: str) -> list[int]:
        return self.dashes[(u, v)]


def build_hole_graph(cnf: CnfFormula, ell: int, dash: str = DEFAULT_DASH) -> HoleGraph:
    """Assemble the graph in which holes through x, y encode satisfying assignments."""
    length = dash_edges(ell, dash)
    m, n = cnf.m, cnf.n
    lits = cnf.literals()
    F = rail_length(cnf)
    b = GraphBuilder()
    ids: dict[str, int] = {}
    dashes: dict[tuple[str, str], list[int]] = {}
    links: list[tuple[str, str]] = []

    def vertex(r: str) -> int:
        ids[r] = b.add_vertex(r)
        return ids[r]

    def solid(u: str, v: str) -> None:
        b.add_edge(ids[u], ids[v])

    def dashed(gadget: str, u: str, v: str, idx: tuple[int, ...]) -> None:
        inner = b.add_path(ids[u], ids[v], length)
        un, vn = u.split(":")[1].split("[")[0], v.split(":")[1].split("[")[0]
        for t, w in enumerate(inner):
            b.set_label(w, role(gadget, f"{un}~{vn}", *idx, t))
        dashes[(u, v)] = inner
        if gadget == "link":
            links.append((u, v))

    def L(name: str, j: int) -> str:
        return role("lit", name, j)

    def C(name: str, i: int) -> str:
        return role("cls", name, i)

    def V(name: str, i: int, *j: int) -> str:
        return role("var", name, i, *j)

    for j in range(1, 3 * m + 1):
        for name in LITERAL_NAMES:
            vertex(L(name, j))
        for u, v in LITERAL_SOLID + LITERAL_JOINS:
            solid(L(u, j), L(v, j))
        for u, v in LITERAL_DASHED:
            dashed("lit", L(u, j), L(v, j), (j,))
    for i in range(1, m + 1):
        for name in CLAUSE_NAMES:
            vertex(C(name, i))
        for u, v in CLAUSE_DASHED:
            dashed("cls", C(u, i), C(v, i), (i,))
    for i in range(1, n + 1):
        for name in VARIABLE_NAMES:
            vertex(V(name, i))
        for sign, s2 in (("+", "++"), ("-", "--")):
            for j in range(1, F + 1):
                vertex(V(f"p{sign}", i, j))
                vertex(V(f"p{s2}", i, j))
        for u, v in VARIABLE_SOLID:
            solid(V(u, i), V(v, i))
        for sign, s2, start, end in (("+", "++", "d++", "d-+"), ("-", "--", "d+-", "d--")):
            prev = V(start, i)
            for j in range(1, F + 1):
                dashed("var", prev, V(f"p{sign}", i, j), (i,))
                solid(V(f"p{sign}", i, j), V(f"p{s2}", i, j))
                prev = V(f"p{s2}", i, j)
            dashed("var", prev, V(end, i), (i,))

    # consecutive literal gadgets
    for j in range(1, 3 * m):
        dashed("link", L("a'", j), L("a", j + 1), (j,))
        dashed("link", L("b'", j), L("b", j + 1), (j,))
    # consecutive clause gadgets
    for i in range(1, m):
        dashed("link", C("c0-", i), C("c0+", i + 1), (i,))
    # consecutive variable gadgets
    for i in range(1, n):
        dashed("link", V("d-", i), V("d+", i + 1), (i,))
    # occurrence j of a literal on variable i takes over the
    # j-th full edge of P+ (negated occurrences) or of P- (plain occurrences)
    occurrences: dict[tuple[int, bool], list[int]] = {}
    for pos, lit in enumerate(lits, start=1):
        occurrences.setdefault((lit.var, lit.positive), []).append(pos)
    for (var, positive), where in sorted(occurrences.items()):
        i = var + 1
        p, pp = ("p-", "p--") if positive else ("p+", "p++")
        for j, pos in enumerate(where, start=1):
            u, w = ids[V(p, i, j)], ids[V(pp, i, j)]
            b.remove_edge(u, w)
            for name in OCCURRENCE_TO_LITERAL:
                b.add_edge(u, ids[L(name, pos)])
                b.add_edge(w, ids[L(name, pos)])
    # clause branches see the lower rails of their literals
    for i in range(1, m + 1):
        for j in (1, 2, 3):
            pos = 3 * (i - 1) + j
            for sign in ("+", "-"):
                for name in CLAUSE_TO_LITERAL:
                    b.add_edge(ids[C(f"c{j}{sign}", i)], ids[L(name, pos)])
    # literal chain into the first variable and the first clause
    dashed("link", L("a'", 3 * m), V("d+", 1), (0,))
    dashed("link", L("b'", 3 * m), C("c0+", 1), (0,))
    # the terminals
    vertex("term:x")
    vertex("term:y")
    dashed("link", "term:x", L("a", 1), (0,))
    dashed("link", "term:x", L("b", 1), (0,))
    dashed("link", "term:y", C("c0-", m), (0,))
    dashed("link", "term:y", V("d-", n), (0,))

    g = b.build()
    return HoleGraph(g, ids["term:x"], ids["term:y"], ids, dashes, links, occurrences)


def witness_from_assignment(
    cnf: CnfFormula, ell: int, assignment, dash: str = DEFAULT_DASH, hg: HoleGraph | None = None
) -> list[int]:
    """Select the vertices of a hole through x and y from a satisfying assignment.

    Returns the hole as a cyclic vertex sequence starting at x.  Both rails of
    a literal gadget follow the same side; an occurrence contributes only
    its a2+ (resp. a clause only its literal's a2-), since taking a3+ as
    well would close a triangle.
    """
    assignment = tuple(bool(v) for v in assignment)
    if len(assignment) != cnf.n:
        raise AssignmentError(f"assignment has {len(assignment)} values for {cnf.n} variables")
    if not cnf.satisfied_by(assignment):
        raise AssignmentError("assignment does not satisfy the formula")
    if hg is None:
        hg = build_hole_graph(cnf, ell, dash)
    m, n = cnf.m, cnf.n
    lits = cnf.literals()
    F = rail_length(cnf)
    chosen: set[int] = set()

    def pick(*vs: int) -> None:
        for v in vs:
            if v in chosen:
                raise DuplicateSelection(f"vertex {hg.graph.label(v)} selected twice")
            chosen.add(v)

    def pick_dash(u: str, v: str) -> None:
        pick(*hg.dash(u, v))

    # the terminals and their links
    pick(hg.x, hg.y)
    for u, v in hg.links:
        pick_dash(u, v)
    # the literal gadget ports
    for j in range(1, 3 * m + 1):
        pick(*(hg[role("lit", nm, j)] for nm in ("a", "a'", "b", "b'")))
    # one side of every literal gadget, on both rails
    for j, lit in enumerate(lits, start=1):
        sat = assignment[lit.var] == lit.positive
        for r in ("a", "b"):
            if sat:
                seq = (f"{r}1+", f"{r}1++", f"{r}2+", f"{r}3+", f"{r}4++", f"{r}4+")
            else:
                seq = (f"{r}1-", f"{r}1--", f"{r}2-", f"{r}3-", f"{r}4--", f"{r}4-")
            pick(*(hg[role("lit", nm, j)] for nm in seq))
            pick_dash(role("lit", seq[1], j), role("lit", seq[2], j))
            pick_dash(role("lit", seq[3], j), role("lit", seq[4], j))
    # the rail of every variable matching its value
    for i in range(1, n + 1):
        value = assignment[i - 1]
        sign, s2, start, end = ("+", "++", "d++", "d-+") if value else ("-", "--", "d+-", "d--")
        V = lambda nm, *j: role("var", nm, i, *j)  # noqa: E731
        pick(hg[V("d+")], hg[V(start)], hg[V(end)], hg[V("d-")])
        prev = V(start)
        for j in range(1, F + 1):
            pick(hg[V(f"p{sign}", j)], hg[V(f"p{s2}", j)])
            pick_dash(prev, V(f"p{sign}", j))
            prev = V(f"p{s2}", j)
        pick_dash(prev, V(end))
        # rail P+ carries the negated occurrences, P- the plain ones
        for pos in hg.occurrences.get((i - 1, not value), []):
            pick(hg[role("lit", "a2+", pos)])
    # one satisfied literal per clause
    for i in range(1, m + 1):
        C = lambda nm: role("cls", nm, i)  # noqa: E731
        pick(hg[C("c0+")], hg[C("c0-")])
        j = next(
            j for j in (1, 2, 3) if assignment[lits[3 * (i - 1) + j - 1].var] == lits[3 * (i - 1) + j - 1].positive
        )
        pick(hg[role("lit", "a2-", 3 * (i - 1) + j)])
        if j in (1, 2):
            pick(hg[C("c12+")], hg[C(f"c{j}+")], hg[C(f"c{j}-")], hg[C("c12-")])
            pick_dash(C("c0+"), C("c12+"))
            pick_dash(C("c12+"), C(f"c{j}+"))
            pick_dash(C("c0-"), C("c12-"))
            pick_dash(C("c12-"), C(f"c{j}-"))
        else:
            pick(hg[C("c3+")], hg[C("c3-")])
            pick_dash(C("c0+"), C("c3+"))
            pick_dash(C("c0-"), C("c3-"))

    return _as_cycle(hg, chosen)


def _as_cycle(hg: HoleGraph, chosen: set[int]) -> list[int]:
    g = hg.graph
    mask = sum(1 << v for v in chosen)
    for v in chosen:
        if (g.adj[v] & mask).bit_count() != 2:
            raise NotAHole(f"vertex {g.label(v)} has {(g.adj[v] & mask).bit_count()} neighbours in the set")
    cycle = [hg.x]
    prev, cur = -1, hg.x
    while True:
        nxt = [w for w in g.neighbors(cur) if mask >> w & 1 and w != prev]
        w = nxt[0] if prev != -1 else min(nxt)
        if w == hg.x:
            break
        cycle.append(w)
        prev, cur = cur, w
    if len(cycle) != len(chosen) or hg.y not in chosen:
        raise NotAHole("the selected vertices do not form a single cycle through x and y")
    return cycle


def sat_to_idp(
    cnf: CnfFormula,
    ell: int,
    subdivisions: int = 0,
    dash: str = DEFAULT_DASH,
    fill_expected: bool = True,
) -> ReductionArtifact:
    """Compile a 3-CNF into a 2-IDP instance on a (C6, H_1..H_ell)-free graph.

    The expected answer comes from ``sat_solve``: a satisfying assignment is
    turned into a hole, checked, and carried over to a verified pair of
    mutually induced paths (source ``witness``); unsatisfiable formulas get
    ``False`` (source ``oracle``).
    """
    hg = build_hole_graph(cnf, ell, dash)
    meta_expected: dict = {}
    hole = None
    if fill_expected:
        assignment = sat_solve(cnf)
        if assignment is None:
            meta_expected = {"expected": False, "expected_source": "oracle"}
        else:
            hole = witness_from_assignment(cnf, ell, assignment, dash, hg)
            meta_expected = {"expected": True, "expected_source": "witness"}
    art = cycle_to_idp(
        hg.graph,
        hg.x,
        hg.y,
        subdivisions,
        roles=hg.graph.labels,
        oracle_budget=None,
        expected=meta_expected.get("expected"),
        expected_source=meta_expected.get("expected_source"),
    )
    if hole is not None:
        sol = solution_from_hole(art, hg.graph, hole)
        if not check_solution(art.instance, sol):
            raise NotAHole("hole does not carry over to mutually induced paths")
        art.meta["witness"] = [list(p) for p in sol.paths]
    art.meta.update(
        {
            "reduction": "sat",
            "source_digest": digest(str(cnf)),
            "formula": str(cnf),
            "params": {"ell": ell, "subdivisions": subdivisions, "dash": dash, "rail_length": rail_length(cnf)},
            "hole_graph": {"n": hg.graph.n, "m": hg.graph.edge_count, "x": hg.x, "y": hg.y,
                           "digest": digest(dumps_text(hg.graph))},
        }
    )
    return art


def witness_solution(art: ReductionArtifact) -> IdpSolution | None:
    w = art.meta.get("witness")
    return None if w is None else IdpSolution(tuple(tuple(p) for p in w))
