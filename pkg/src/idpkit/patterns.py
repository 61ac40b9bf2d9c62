"""Forbidden-pattern graphs, induced-subgraph search and the H-classifiers.

Pattern strings are whitespace-free and case-insensitive: ``P7``, ``C6``,
``K1,4``, ``S1,1,2``, ``H3``, ``chair``, ``claw`` and ``+``-joined unions such
as ``P3+chair``.  A leading multiplier (``2K1,3``) repeats a component.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, GraphBuilder, iter_bits


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    kind: str
    params: tuple[int, ...] = ()
    parts: tuple["Pattern", ...] = ()

    def __post_init__(self) -> None:
        k, p = self.kind, self.params
        if k == "path":
            ok = len(p) == 1 and p[0] >= 1
        elif k == "cycle":
            ok = len(p) == 1 and p[0] >= 3
        elif k == "star":
            ok = len(p) == 1 and p[0] >= 1
        elif k == "sclaw":
            ok = len(p) == 3 and 1 <= p[0] <= p[1] <= p[2]
        elif k == "hgraph":
            ok = len(p) == 1 and p[0] >= 1
        elif k == "union":
            ok = len(self.parts) >= 1 and not p
        else:
            raise PatternError(f"unknown pattern kind {k!r}")
        if not ok:
            raise PatternError(f"invalid parameters {p} for {k}")

    @property
    def order(self) -> int:
        k, p = self.kind, self.params
        if k in ("path", "cycle"):
            return p[0]
        if k == "star":
            return p[0] + 1
        if k == "sclaw":
            return 1 + sum(p)
        if k == "hgraph":
            return p[0] + 5
        return sum(part.order for part in self.parts)

    def components(self) -> tuple["Pattern", ...]:
        if self.kind != "union":
            return (self,)
        return tuple(c for part in self.parts for c in part.components())

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "path":
            return f"P{p[0]}"
        if k == "cycle":
            return f"C{p[0]}"
        if k == "star":
            return "claw" if p[0] == 3 else f"K1,{p[0]}"
        if k == "sclaw":
            return "chair" if p == (1, 1, 2) else "S" + ",".join(map(str, p))
        if k == "hgraph":
            return f"H{p[0]}"
        return "+".join(str(c) for c in self.parts)


def path(r: int) -> Pattern:
    return Pattern("path", (r,))


def cycle(r: int) -> Pattern:
    return Pattern("cycle", (r,))


def star(r: int) -> Pattern:
    return Pattern("star", (r,))


def subdivided_claw(h: int, i: int, j: int) -> Pattern:
    return Pattern("sclaw", (h, i, j))


def hgraph(ell: int) -> Pattern:
    return Pattern("hgraph", (ell,))


def union(*parts: Pattern) -> Pattern:
    return Pattern("union", (), tuple(parts))


CHAIR = subdivided_claw(1, 1, 2)
CLAW = star(3)

_TOKEN = re.compile(r"^(\d*)(chair|claw|fork|k1,|[pcsh])([\d,]*)$")


def parse_pattern(text: str) -> Pattern:
    """Parse a compact pattern string such as ``P3+chair`` or ``K1,4``."""
    if not text or any(ch.isspace() for ch in text):
        raise PatternError(f"bad pattern string {text!r}")
    parts = []
    for tok in text.lower().split("+"):
        m = _TOKEN.match(tok)
        if not m:
            raise PatternError(f"bad pattern token {tok!r}")
        mult_s, kind, rest = m.groups()
        mult = int(mult_s) if mult_s else 1
        try:
            nums = tuple(int(x) for x in rest.split(",")) if rest else ()
        except ValueError:
            raise PatternError(f"bad parameters in {tok!r}") from None
        if kind in ("chair", "fork", "claw"):
            if nums:
                raise PatternError(f"{kind} takes no parameters")
            pat = CHAIR if kind != "claw" else CLAW
        elif kind == "k1,":
            if len(nums) != 1:
                raise PatternError(f"bad star token {tok!r}")
            pat = star(nums[0])
        else:
            expected = 3 if kind == "s" else 1
            if len(nums) != expected:
                raise PatternError(f"{tok!r} needs {expected} parameter(s)")
            kinds = {"p": "path", "c": "cycle", "s": "sclaw", "h": "hgraph"}
            pat = Pattern(kinds[kind], nums)
        if mult < 1:
            raise PatternError(f"multiplier must be positive in {tok!r}")
        parts.extend([pat] * mult)
    return parts[0] if len(parts) == 1 else union(*parts)


def realize(p: Pattern) -> Graph:
    """Concrete graph of a pattern with the canonical numbering.

    path/cycle: ``0..r-1`` in order; star: centre 0; subdivided claw: centre 0
    then the legs in ``h, i, j`` order walking outwards; H-graph: the crossing
    path ``0..ell`` then the pendants of 0 and the pendants of ``ell``; unions
    place components in listed order with offsets.
    """
    b = GraphBuilder()
    _emit(b, p)
    return b.build()


def _emit(b: GraphBuilder, p: Pattern) -> None:
    base = b.n
    k, prm = p.kind, p.params
    if k == "union":
        for part in p.parts:
            _emit(b, part)
        return
    for _ in range(p.order):
        b.add_vertex()
    if k in ("path", "cycle"):
        r = prm[0]
        for v in range(r - 1):
            b.add_edge(base + v, base + v + 1)
        if k == "cycle":
            b.add_edge(base + r - 1, base)
    elif k == "star":
        for v in range(1, prm[0] + 1):
            b.add_edge(base, base + v)
    elif k == "sclaw":
        nxt = base + 1
        for leg in prm:
            prev = base
            for _ in range(leg):
                b.add_edge(prev, nxt)
                prev = nxt
                nxt += 1
    else:
        ell = prm[0]
        for v in range(ell):
            b.add_edge(base + v, base + v + 1)
        b.add_edge(base, base + ell + 1)
        b.add_edge(base, base + ell + 2)
        b.add_edge(base + ell, base + ell + 3)
        b.add_edge(base + ell, base + ell + 4)


@lru_cache(maxsize=256)
def _realize_cached(p: Pattern) -> Graph:
    return realize(p)


# -- induced embedding search -------------------------------------------------

def _search_order(pat: Graph) -> list[int]:
    """Pattern vertices ordered so each vertex after a component root has an
    earlier neighbour; roots are the highest-degree vertex of each component."""
    order: list[int] = []
    degs = pat.degrees()
    for comp in pat.component_masks():
        verts = list(iter_bits(comp))
        root = max(verts, key=lambda v: (degs[v], -v))
        seen = 1 << root
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(iter_bits(pat.adj[v] & ~seen), key=lambda u: (-degs[u], u)):
                seen |= 1 << u
                queue.append(u)
    return order


def find_induced(host: Graph, pattern: Pattern | Graph) -> dict[int, int] | None:
    """Return an induced embedding ``pattern vertex -> host vertex`` or None.

    Exhaustive backtracking; candidates are filtered by degree and by the
    neighbourhoods of already-mapped vertices and tried in ascending id order.
    """
    pat = pattern if isinstance(pattern, Graph) else _realize_cached(pattern)
    if pat.n == 0:
        return {}
    if pat.n > host.n:
        return None
    order = _search_order(pat)
    pos = {v: i for i, v in enumerate(order)}
    host_deg = host.degrees()
    pat_deg = pat.degrees()
    nbr_before = []
    non_before = []
    deg_ok = []
    for i, v in enumerate(order):
        earlier = [u for u in order[:i]]
        nbr_before.append([pos[u] for u in earlier if pat.adj[v] >> u & 1])
        non_before.append([pos[u] for u in earlier if not pat.adj[v] >> u & 1])
        need = pat_deg[v]
        deg_ok.append(sum(1 << w for w in range(host.n) if host_deg[w] >= need))
    adj = host.adj
    image = [0] * pat.n
    p = pat.n

    def extend(i: int, used: int) -> bool:
        if i == p:
            return True
        cand = deg_ok[i] & ~used
        for j in nbr_before[i]:
            cand &= adj[image[j]]
            if not cand:
                return False
        for j in non_before[i]:
            cand &= ~adj[image[j]]
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            image[i] = w
            if extend(i + 1, used | low):
                return True
            cand ^= low
        return False

    if not extend(0, 0):
        return None
    return {order[i]: image[i] for i in range(p)}


def is_h_free(host: Graph, pattern: Pattern | Graph) -> bool:
    return find_induced(host, pattern) is None


def longest_induced_path_at_most(host: Graph, bound: int) -> bool:
    """True iff ``host`` has no induced path on more than ``bound`` vertices."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    target = bound + 1
    adj = host.adj

    def grow(length: int, end: int, forbidden: int) -> bool:
        # forbidden: closed neighbourhoods of every path vertex but the end
        if length == target:
            return True
        cand = adj[end] & ~forbidden
        closed_end = adj[end] | (1 << end)
        while cand:
            low = cand & -cand
            if grow(length + 1, low.bit_length() - 1, forbidden | closed_end):
                return True
            cand ^= low
        return False

    for v in range(host.n):
        if grow(1, v, 1 << v):
            return False
    return True


# -- classifiers ----------------------------------------------------------------

class Verdict(enum.Enum):
    POLYNOMIAL = "PolynomialTime"
    NP_COMPLETE = "NpComplete"
    QUASIPOLYNOMIAL = "Quasipolynomial"
    OPEN = "Open"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: str


@dataclass(frozen=True)
class _Component:
    order: int
    is_tree: bool
    max_degree: int
    branch_vertices: tuple[int, ...]
    legs: tuple[int, ...]  # sorted leg lengths when exactly one branch vertex


def _components(h: Graph) -> list[_Component]:
    degs = h.degrees()
    out = []
    for comp in h.component_masks():
        verts = list(iter_bits(comp))
        edges = sum(degs[v] for v in verts) // 2
        branch = tuple(v for v in verts if degs[v] >= 3)
        legs: tuple[int, ...] = ()
        is_tree = edges == len(verts) - 1
        if is_tree and len(branch) == 1 and degs[branch[0]] == 3:
            lens = []
            for first in iter_bits(h.adj[branch[0]]):
                prev, cur, n = branch[0], first, 1
                while degs[cur] == 2:
                    nxt = next(iter_bits(h.adj[cur] & ~(1 << prev)))
                    prev, cur, n = cur, nxt, n + 1
                lens.append(n)
            legs = tuple(sorted(lens))
        out.append(_Component(len(verts), is_tree, max((degs[v] for v in verts), default=0), branch, legs))
    return out


def is_linear_forest(h: Graph) -> bool:
    return all(c.is_tree and c.max_degree <= 2 for c in _components(h))


def is_in_S(h: Graph) -> bool:
    """Every component is a path or a subdivided claw."""
    return all(c.is_tree and c.max_degree <= 3 and len(c.branch_vertices) <= 1 for c in _components(h))


def classify_fixed_k(h: Graph) -> Classification:
    comps = _components(h)
    if not all(c.is_tree for c in comps):
        return Classification(Verdict.NP_COMPLETE, "contains-cycle")
    if any(c.max_degree >= 4 for c in comps):
        return Classification(Verdict.NP_COMPLETE, "degree-at-least-4")
    if any(len(c.branch_vertices) >= 2 for c in comps):
        return Classification(Verdict.NP_COMPLETE, "component-with-two-branch-vertices")
    branched = [c for c in comps if c.branch_vertices]
    if not branched:
        return Classification(Verdict.POLYNOMIAL, "linear-forest")
    if len(branched) == 1 and branched[0].legs in ((1, 1, 1), (1, 1, 2)):
        return Classification(Verdict.POLYNOMIAL, "linear-forest-plus-chair")
    return Classification(Verdict.OPEN, "in-S-not-below-linear-forest-plus-chair")


def classify_variable_k(h: Graph) -> Classification:
    comps = _components(h)
    if not all(c.is_tree and c.max_degree <= 2 for c in comps):
        return Classification(Verdict.NP_COMPLETE, "not-linear-forest")
    big = [c.order for c in comps if c.order >= 4]
    if len(big) <= 1 and all(o <= 6 for o in big):
        return Classification(Verdict.POLYNOMIAL, "induced-in-sP3+P6")
    return Classification(Verdict.QUASIPOLYNOMIAL, "linear-forest-not-in-sP3+P6")


def split_linear_forest(h: Graph) -> tuple[int, Graph | None]:
    """Split a graph classified polynomial for fixed k into its linear-forest
    part (returned as the total vertex count) and its branched component.

    Returns ``(forest_order, branched_component_or_None)``.
    """
    forest_order = 0
    branched = None
    for comp in h.component_masks():
        sub, _ = h.induced_subgraph(comp)
        if sub.max_degree() >= 3:
            if branched is not None:
                raise PatternError("more than one branched component")
            branched = sub
        else:
            forest_order += sub.n
    return forest_order, branched
