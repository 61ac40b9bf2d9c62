"""Undirected simple graphs, terminal pairs and solutions.

Adjacency is stored as one Python ``int`` bitmask per vertex: bit ``u`` of
``adj[v]`` is set iff ``uv`` is an edge.  Graph values are immutable; the
builders below return fresh values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Base class for malformed graph constructions."""


class VertexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NotAnEdge(GraphError):
    pass


class InstanceError(ValueError):
    """Terminal pairs violate the instance invariants."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str | None, ...] = field(default=(), compare=True)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        if self.labels and len(self.labels) != self.n:
            raise GraphError("label vector length differs from vertex count")

    # -- queries ---------------------------------------------------------
    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def closed_nbhd(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def label(self, v: int) -> str | None:
        return self.labels[v] if self.labels else None

    def label_map(self) -> dict[int, str]:
        return {v: s for v, s in enumerate(self.labels) if s is not None}

    def nbhd_of_set(self, mask: int) -> int:
        """Union of the closed neighbourhoods of the vertices in ``mask``."""
        out = mask
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within``."""
        remaining = self.vertex_mask if within is None else within
        comps = []
        while remaining:
            start = remaining & -remaining
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            remaining &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.component_masks()) == 1

    def is_forest(self) -> bool:
        return self.edge_count == self.n - len(self.component_masks())

    def induced_subgraph(self, vertices: Iterable[int] | int) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by ``vertices`` (a mask or iterable), densely re-indexed.

        Returns the subgraph and the old-to-new id map.  Relative order of the
        surviving vertices is preserved.
        """
        mask = vertices if isinstance(vertices, int) else bits_of(vertices)
        keep = list(iter_bits(mask & self.vertex_mask))
        remap = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            row = 0
            for u in iter_bits(self.adj[old] & mask):
                row |= 1 << remap[u]
            adj.append(row)
        labels = tuple(self.labels[old] for old in keep) if self.labels else ()
        return Graph(len(keep), tuple(adj), labels), remap

    def check_structure(self) -> None:
        """Assert symmetry and irreflexivity; raise ``GraphError`` otherwise."""
        for v, row in enumerate(self.adj):
            if row >> self.n:
                raise VertexOutOfRange(f"vertex {v} has a neighbour >= n")
            if row >> v & 1:
                raise SelfLoop(f"self-loop at {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    def with_labels(self, labels: Mapping[int, str] | Sequence[str | None]) -> "Graph":
        if isinstance(labels, Mapping):
            vec = tuple(labels.get(v) for v in range(self.n))
        else:
            vec = tuple(labels)
        if all(s is None for s in vec):
            vec = ()
        return Graph(self.n, self.adj, vec)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class GraphBuilder:
    """Mutable single-owner builder; duplicate edges are rejected."""

    def __init__(self, n: int = 0) -> None:
        self._adj: list[int] = [0] * n
        self._labels: list[str | None] = [None] * n

    @property
    def n(self) -> int:
        return len(self._adj)

    def add_vertex(self, label: str | None = None) -> int:
        self._adj.append(0)
        self._labels.append(label)
        return len(self._adj) - 1

    def set_label(self, v: int, label: str) -> None:
        self._labels[v] = label

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def add_edge(self, u: int, v: int) -> None:
        n = len(self._adj)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if self._adj[u] >> v & 1:
            raise DuplicateEdge(f"edge ({u}, {v}) added twice")
        self._adj[u] |= 1 << v
        self._adj[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        if not (0 <= u < len(self._adj) and 0 <= v < len(self._adj)) or not self._adj[u] >> v & 1:
            raise NotAnEdge(f"({u}, {v}) is not an edge")
        self._adj[u] &= ~(1 << v)
        self._adj[v] &= ~(1 << u)

    def add_path(self, u: int, v: int, length: int, label: str | None = None) -> list[int]:
        """Join ``u`` and ``v`` by a path with ``length`` edges.

        Returns the ``length - 1`` fresh internal vertices in order from ``u``.
        """
        if length < 1:
            raise GraphError("path length must be positive")
        inner = []
        prev = u
        for idx in range(length - 1):
            w = self.add_vertex(None if label is None else f"{label}[{idx}]")
            self.add_edge(prev, w)
            inner.append(w)
            prev = w
        self.add_edge(prev, v)
        return inner

    def build(self) -> Graph:
        labels = tuple(self._labels) if any(s is not None for s in self._labels) else ()
        return Graph(len(self._adj), tuple(self._adj), labels)


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Mapping[int, str] | None = None,
) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    b = GraphBuilder(n)
    for u, v in edges:
        b.add_edge(u, v)
    for v, s in (labels or {}).items():
        if not 0 <= v < n:
            raise VertexOutOfRange(f"label on vertex {v} outside 0..{n - 1}")
        b.set_label(v, s)
    return b.build()


def delete_closed_neighborhood(
    g: Graph, keep: Iterable[int], removed: Iterable[int]
) -> tuple[Graph, dict[int, int]]:
    """Delete ``removed`` and all their neighbours, except vertices in ``keep``.

    Returns the re-indexed graph and the old-to-new id map of survivors.
    """
    keep_mask = bits_of(keep)
    removed_mask = bits_of(removed)
    if keep_mask & removed_mask:
        raise GraphError("keep and removed overlap")
    doomed = g.nbhd_of_set(removed_mask) & ~keep_mask
    return g.induced_subgraph(g.vertex_mask & ~doomed)


def subdivide_edge(g: Graph, u: int, v: int, times: int) -> Graph:
    """Replace edge ``uv`` by a path with ``times`` new internal vertices."""
    if times < 0:
        raise GraphError("times must be non-negative")
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    if times == 0:
        return g
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    first = g.n
    chain = [u] + list(range(first, first + times)) + [v]
    adj.extend([0] * times)
    for a, b in zip(chain, chain[1:]):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    labels = g.labels + (None,) * times if g.labels else ()
    return Graph(g.n + times, tuple(adj), labels)


@dataclass(frozen=True)
class TerminalPair:
    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s == self.t:
            raise InstanceError(f"terminal pair with s == t == {self.s}")


@dataclass(frozen=True)
class IdpInstance:
    graph: Graph
    pairs: tuple[TerminalPair, ...]

    def __post_init__(self) -> None:
        pairs = tuple(p if isinstance(p, TerminalPair) else TerminalPair(*p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InstanceError("an instance needs at least one terminal pair")
        seen: set[int] = set()
        for p in pairs:
            for v in (p.s, p.t):
                if not 0 <= v < self.graph.n:
                    raise InstanceError(f"terminal {v} is not a vertex")
                if v in seen:
                    raise InstanceError(f"terminal {v} used twice")
                seen.add(v)

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def terminal_mask(self) -> int:
        return bits_of(v for p in self.pairs for v in (p.s, p.t))


def make_instance(g: Graph, pairs: Iterable[tuple[int, int]]) -> IdpInstance:
    return IdpInstance(g, tuple(TerminalPair(s, t) for s, t in pairs))


@dataclass(frozen=True)
class IdpSolution:
    paths: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))

    @property
    def k(self) -> int:
        return len(self.paths)
