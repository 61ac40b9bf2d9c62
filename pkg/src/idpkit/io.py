"""Text and JSON encodings for graphs and instances.

Text format::

    c optional comment
    idp <n> <m> <k>
    e <u> <v>          (m lines)
    t <s_i> <t_i>      (k lines)

Edges are written sorted with ``u < v``; pairs keep their input order.  A
graph without terminals is written with ``k = 0``.  The JSON form carries the
same fields plus the label map.
"""

from __future__ import annotations

import json
from typing import Any

from .graph import Graph, GraphError, IdpInstance, TerminalPair, build_graph


class FormatError(ValueError):
    """Base class for parse failures."""


class MalformedHeader(FormatError):
    pass


class CountMismatch(FormatError):
    pass


class IdOutOfRange(FormatError):
    pass


class MalformedLine(FormatError):
    pass


def dumps_text(value: Graph | IdpInstance) -> str:
    if isinstance(value, IdpInstance):
        g, pairs = value.graph, value.pairs
    else:
        g, pairs = value, ()
    edges = g.edges()
    lines = [f"idp {g.n} {len(edges)} {len(pairs)}"]
    lines += [f"e {u} {v}" for u, v in edges]
    lines += [f"t {p.s} {p.t}" for p in pairs]
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise MalformedLine(f"line {lineno}: {tok!r} is not an integer") from None
    if val < 0 or tok.strip() != str(val):
        raise MalformedLine(f"line {lineno}: {tok!r} is not a non-negative decimal id")
    return val


def loads_text(text: str) -> tuple[Graph, list[tuple[int, int]]]:
    """Parse the text format into a graph and its (possibly empty) pair list."""
    header = None
    edges: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if header is None:
            if toks[0] != "idp" or len(toks) != 4:
                raise MalformedHeader(f"line {lineno}: expected 'idp <n> <m> <k>', got {line!r}")
            try:
                header = tuple(_int(t, lineno) for t in toks[1:])
            except MalformedLine as exc:
                raise MalformedHeader(str(exc)) from None
            continue
        n = header[0]
        if toks[0] not in ("e", "t") or len(toks) != 3:
            raise MalformedLine(f"line {lineno}: unrecognised record {line!r}")
        u, v = _int(toks[1], lineno), _int(toks[2], lineno)
        if u >= n or v >= n:
            raise IdOutOfRange(f"line {lineno}: vertex id out of range 0..{n - 1}")
        (edges if toks[0] == "e" else pairs).append((u, v))
    if header is None:
        raise MalformedHeader("missing 'idp' header")
    n, m, k = header
    if len(edges) != m:
        raise CountMismatch(f"header announces {m} edges, found {len(edges)}")
    if len(pairs) != k:
        raise CountMismatch(f"header announces {k} terminal pairs, found {len(pairs)}")
    try:
        g = build_graph(n, edges)
    except GraphError as exc:
        raise MalformedLine(str(exc)) from None
    return g, pairs


def parse_instance(text: str) -> IdpInstance:
    g, pairs = loads_text(text)
    return IdpInstance(g, tuple(TerminalPair(s, t) for s, t in pairs))


def parse_graph(text: str) -> Graph:
    return loads_text(text)[0]


def to_dict(value: Graph | IdpInstance) -> dict[str, Any]:
    if isinstance(value, IdpInstance):
        g, pairs = value.graph, [[p.s, p.t] for p in value.pairs]
    else:
        g, pairs = value, []
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "pairs": pairs,
        "labels": {str(v): s for v, s in sorted(g.label_map().items())},
    }


def from_dict(data: dict[str, Any]) -> Graph | IdpInstance:
    for key in ("n", "edges", "pairs"):
        if key not in data:
            raise MalformedHeader(f"missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 0:
        raise MalformedHeader("'n' must be a non-negative integer")
    labels = {}
    for key, val in data.get("labels", {}).items():
        v = int(key)
        if not 0 <= v < n:
            raise IdOutOfRange(f"label on vertex {v} outside 0..{n - 1}")
        labels[v] = val
    for u, v in list(data["edges"]) + list(data["pairs"]):
        if not (0 <= u < n and 0 <= v < n):
            raise IdOutOfRange(f"vertex id in ({u}, {v}) outside 0..{n - 1}")
    try:
        g = build_graph(n, [tuple(e) for e in data["edges"]], labels)
    except GraphError as exc:
        raise MalformedLine(str(exc)) from None
    if not data["pairs"]:
        return g
    return IdpInstance(g, tuple(TerminalPair(s, t) for s, t in data["pairs"]))


def dumps_json(value: Graph | IdpInstance) -> str:
    return json.dumps(to_dict(value), sort_keys=True, indent=1) + "\n"


def loads_json(text: str) -> Graph | IdpInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedHeader(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedHeader("top-level JSON value must be an object")
    return from_dict(data)
