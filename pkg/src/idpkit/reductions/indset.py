"""Independent set of size k  ->  2-IDP on a graph with short induced paths.

Two copies of a chain of k vertex-choice diamonds are built.  Diamond i of
the first copy has hubs t^{i-1} and t^i (t^0 = s^1) joined through the clique
v^i_1..v^i_n; the second copy uses sigma/tau/phi.  The last hubs t^k and
tau^k are joined by a path through one extra vertex.  Consistency,
independence and set edges then tie the copies and the diamonds together.
"""

from __future__ import annotations

from collections import Counter

from ..graph import Graph, GraphBuilder, IdpInstance, TerminalPair
from ..io import dumps_text
from ..solvers.small import has_independent_set
from .artifact import ReductionArtifact, digest, role


class IndSetReductionError(ValueError):
    pass


def is_to_idp(g: Graph, k: int, fill_expected: bool = True) -> ReductionArtifact:
    """Compile (g, k) into a 2-IDP instance with pairs (s^1, t^k), (sigma^1, tau^k)."""
    if k < 1:
        raise IndSetReductionError("k must be at least 1")
    n = g.n
    b = GraphBuilder()
    counts: Counter[str] = Counter()
    additions: Counter[str] = Counter()

    def add(u: int, v: int, cls: str) -> None:
        additions[cls] += 1
        if not b.has_edge(u, v):
            b.add_edge(u, v)
            counts[cls] += 1

    hub = {}
    clique = {}
    for copy, hname, vname in (("dia", "t", "v"), ("dib", "tau", "phi")):
        hub[copy] = [b.add_vertex(role(copy, "s" if copy == "dia" else "sigma", 1))]
        for i in range(1, k + 1):
            hub[copy].append(b.add_vertex(role(copy, hname, i)))
        clique[copy] = [[b.add_vertex(role(copy, vname, i, j)) for j in range(1, n + 1)] for i in range(1, k + 1)]
        for i in range(k):
            vs = clique[copy][i]
            for a in range(n):
                add(hub[copy][i], vs[a], "diamond")
                add(vs[a], hub[copy][i + 1], "diamond")
                for c in range(a + 1, n):
                    add(vs[a], vs[c], "clique")
    w = b.add_vertex(role("bridge", "w"))
    add(hub["dia"][k], w, "bridge")
    add(w, hub["dib"][k], "bridge")

    V, PHI = clique["dia"], clique["dib"]
    for i in range(k):
        for j in range(n):
            for l in range(n):
                if j != l:
                    add(V[i][j], PHI[i][l], "consistency")
    for p, q in g.edges():
        for i in range(k):
            for j in range(k):
                if i != j:
                    for u in (V[i][p], PHI[i][p]):
                        for v in (V[j][q], PHI[j][q]):
                            add(u, v, "independence")
    for l in range(n):
        for i in range(k):
            for j in range(k):
                if i != j:
                    for u in (V[i][l], PHI[i][l]):
                        for v in (V[j][l], PHI[j][l]):
                            add(u, v, "set")

    graph = b.build()
    inst = IdpInstance(
        graph,
        (TerminalPair(hub["dia"][0], hub["dia"][k]), TerminalPair(hub["dib"][0], hub["dib"][k])),
    )
    meta = {
        "reduction": "is",
        "source_digest": digest(dumps_text(g) + f"k {k}\n"),
        "params": {"k": k, "n": n, "source_edges": g.edge_count},
        "edge_classes": dict(sorted(counts.items())),
        "edge_additions": dict(sorted(additions.items())),
        "expected_answer": None,
        "expected_source": None,
    }
    if fill_expected:
        meta["expected_answer"] = has_independent_set(g, k) is not None
        meta["expected_source"] = "oracle"
    return ReductionArtifact(inst, graph.labels, meta)


def solution_from_independent_set(art: ReductionArtifact, chosen) -> tuple[tuple[int, ...], ...]:
    """The two diamond-hopping paths picking ``chosen[i]`` in diamond i+1."""
    k = art.meta["params"]["k"]
    if len(chosen) != k:
        raise IndSetReductionError(f"{len(chosen)} vertices chosen for k = {k}")
    paths = []
    for copy, s, t, v in (("dia", "s", "t", "v"), ("dib", "sigma", "tau", "phi")):
        p = [art.find(role(copy, s, 1))]
        for i, c in enumerate(chosen, start=1):
            p.append(art.find(role(copy, v, i, c + 1)))
            p.append(art.find(role(copy, t, i)))
        paths.append(tuple(p))
    return tuple(paths)
