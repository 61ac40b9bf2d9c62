"""Hole through two degree-2 vertices  ->  2-IDP.

Each distinguished vertex is replaced by an eight-vertex gadget that forces
the two terminal paths to leave through its two former neighbours, one each.
"""

from __future__ import annotations

import re
from typing import Sequence

from ..graph import Graph, GraphBuilder, GraphError, IdpInstance, IdpSolution, TerminalPair
from ..io import dumps_text
from ..solvers.base import BudgetExhausted, SolveBudget
from ..solvers.exact import find_hole_through
from .artifact import ReductionArtifact, digest, role

# gadget edges; "X1"/"X2" and "Y1"/"Y2" stand for the removed vertex's neighbours
X_EDGES = (
    ("s1", "p1"), ("p1", "q1"), ("q1", "X1"), ("q1", "r1"), ("r1", "s2"),
    ("s2", "r2"), ("r2", "q2"), ("q2", "X2"), ("p2", "s1"), ("p2", "q2"),
)
Y_EDGES = (
    ("a1", "t1"), ("a1", "b1"), ("b1", "Y1"), ("b1", "c1"), ("c1", "t2"),
    ("a2", "t1"), ("a2", "b2"), ("b2", "Y2"), ("b2", "c2"), ("c2", "t2"),
)
X_NAMES = ("p1", "q1", "r1", "p2", "q2", "r2", "s1", "s2")
Y_NAMES = ("a1", "b1", "c1", "a2", "b2", "c2", "t1", "t2")


class CycleReductionError(GraphError):
    pass


def cycle_to_idp(
    g: Graph,
    x: int,
    y: int,
    subdivisions: int = 0,
    *,
    roles: Sequence[str] | None = None,
    oracle_budget: SolveBudget | None = SolveBudget(2_000_000, 30.0),
    expected: bool | None = None,
    expected_source: str | None = None,
) -> ReductionArtifact:
    """Compile (g, x, y) into a 2-IDP instance with pairs (s1,t1), (s2,t2).

    Every gadget edge is subdivided ``subdivisions`` times.  ``roles``
    optionally names the vertices of ``g``.  Unless ``expected`` is supplied,
    the answer is filled in by the hole oracle when it finishes within
    ``oracle_budget``.
    """
    for v in (x, y):
        if not 0 <= v < g.n:
            raise CycleReductionError(f"vertex {v} outside 0..{g.n - 1}")
    if x == y:
        raise CycleReductionError("x and y must differ")
    for v in (x, y):
        if g.degree(v) != 2:
            raise CycleReductionError(f"vertex {v} has degree {g.degree(v)}, expected 2")
    if g.has_edge(x, y):
        raise CycleReductionError("x and y are adjacent")
    if subdivisions < 0:
        raise CycleReductionError("subdivisions must be non-negative")

    b = GraphBuilder()
    new_id: dict[int, int] = {}
    for v in range(g.n):
        if v not in (x, y):
            name = roles[v] if roles is not None else role("src", "v", v)
            new_id[v] = b.add_vertex(name)
    for u, v in g.edges():
        if u in new_id and v in new_id:
            b.add_edge(new_id[u], new_id[v])
    xg = {name: b.add_vertex(role("xgad", name)) for name in X_NAMES}
    yg = {name: b.add_vertex(role("ygad", name)) for name in Y_NAMES}
    x1, x2 = g.neighbors(x)
    y1, y2 = g.neighbors(y)
    xg["X1"], xg["X2"] = new_id[x1], new_id[x2]
    yg["Y1"], yg["Y2"] = new_id[y1], new_id[y2]
    for gadget, table, ids in (("xgad", X_EDGES, xg), ("ygad", Y_EDGES, yg)):
        for u, v in table:
            inner = b.add_path(ids[u], ids[v], subdivisions + 1)
            for t, w in enumerate(inner):
                b.set_label(w, role(gadget, f"{u}~{v}", t))
    graph = b.build()
    inst = IdpInstance(graph, (TerminalPair(xg["s1"], yg["t1"]), TerminalPair(xg["s2"], yg["t2"])))

    meta = {
        "reduction": "cycle",
        "source_digest": digest(dumps_text(g) + f"x {x} y {y}\n"),
        "params": {"x": x, "y": y, "subdivisions": subdivisions},
        "expected_answer": None,
        "expected_source": None,
    }
    if expected is not None:
        meta["expected_answer"] = expected
        meta["expected_source"] = expected_source
    elif oracle_budget is not None:
        try:
            meta["expected_answer"] = find_hole_through(g, x, y, oracle_budget) is not None
            meta["expected_source"] = "oracle"
        except BudgetExhausted:
            pass
    return ReductionArtifact(inst, graph.labels, meta)


def _walk(art: ReductionArtifact, gadget: str, table, names: Sequence[str], ports: dict[str, int]) -> list[int]:
    """Vertex ids along consecutive gadget names, subdivision vertices included."""
    def vid(name: str) -> int:
        return ports[name] if name in ports else art.find(role(gadget, name))

    out = [vid(names[0])]
    for u, v in zip(names, names[1:]):
        if (u, v) in table:
            inner = art.vertices_with_role(rf"{gadget}:{re.escape(u)}~{re.escape(v)}\[\d+\]")
        else:
            inner = art.vertices_with_role(rf"{gadget}:{re.escape(v)}~{re.escape(u)}\[\d+\]")[::-1]
        out.extend(inner)
        out.append(vid(v))
    return out


def solution_from_hole(art: ReductionArtifact, g: Graph, hole: Sequence[int]) -> IdpSolution:
    """Carry a hole of ``g`` through x and y over to two paths of the compiled instance.

    ``hole`` lists the cycle starting at x.
    """
    x, y = art.meta["params"]["x"], art.meta["params"]["y"]
    if hole[0] != x or y not in hole:
        raise CycleReductionError("hole must start at x and contain y")

    def new(v: int) -> int:
        return v - (v > x) - (v > y)

    iy = list(hole).index(y)
    a_side = [new(v) for v in hole[1:iy]]
    b_side = [new(v) for v in reversed(hole[iy + 1:])]
    x1, x2 = g.neighbors(x)
    y1, y2 = g.neighbors(y)
    ports_x = {"X1": new(x1), "X2": new(x2)}
    ports_y = {"Y1": new(y1), "Y2": new(y2)}
    xt = set(X_EDGES)
    yt = set(Y_EDGES)
    paths = []
    for side, (s, via1, via2), (t, end1, end2) in (
        (a_side, ("s1", ("p1", "q1", "X1"), ("p2", "q2", "X2")), ("t1", ("b1", "a1"), ("b2", "a2"))),
        (b_side, ("s2", ("r1", "q1", "X1"), ("r2", "q2", "X2")), ("t2", ("b1", "c1"), ("b2", "c2"))),
    ):
        head = via1 if side[0] == ports_x["X1"] else via2
        tail = end1 if side[-1] == ports_y["Y1"] else end2
        port_y = "Y1" if tail is end1 else "Y2"
        front = _walk(art, "xgad", xt, (s,) + head, ports_x)
        back = _walk(art, "ygad", yt, (port_y,) + tail + (t,), ports_y)
        paths.append(tuple(front[:-1] + side + back[1:]))
    return IdpSolution(tuple(paths))
