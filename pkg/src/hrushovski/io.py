"""Edge-list and orientation text formats.

Graph files hold ``v <name>`` and ``e <u> <v>`` lines; orientation files hold
``a <from> <to>`` lines.  ``#`` starts a comment.  Edge endpoints are
declared implicitly.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GraphError, ParseError
from .graph import Graph, Orientation, edge_key

__all__ = ["parse_graph", "parse_orientation", "read_graph", "read_orientation", "format_graph", "format_orientation"]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_graph(text: str, source: str = "<string>") -> Graph:
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for no, parts in _lines(text):
        kind = parts[0]
        if kind == "v":
            if len(parts) != 2:
                raise ParseError(source, no, "expected 'v <name>'")
            vertices.append(parts[1])
        elif kind == "e":
            if len(parts) != 3:
                raise ParseError(source, no, "expected 'e <name> <name>'")
            u, v = parts[1], parts[2]
            if u == v:
                raise ParseError(source, no, f"loop at {u}")
            key = edge_key(u, v)
            if key in seen:
                raise ParseError(source, no, f"duplicate edge {u} {v}")
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(source, no, f"unknown line type {kind!r}")
    try:
        return Graph.from_edges(edges, vertices)
    except GraphError as exc:
        raise ParseError(source, 0, str(exc)) from exc


def parse_orientation(text: str, base: Graph, source: str = "<string>") -> Orientation:
    arcs = []
    seen = set()
    for no, parts in _lines(text):
        if parts[0] != "a" or len(parts) != 3:
            raise ParseError(source, no, "expected 'a <from> <to>'")
        x, y = parts[1], parts[2]
        if not ({x, y} <= base.vertices and base.has_edge(x, y)):
            raise ParseError(source, no, f"({x}, {y}) is not an edge of the graph")
        key = edge_key(x, y)
        if key in seen:
            raise ParseError(source, no, f"edge {key[0]} {key[1]} oriented twice")
        seen.add(key)
        arcs.append((x, y))
    return Orientation(base, arcs)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), 0, exc.strerror or str(exc)) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(str(path), 0, f"not valid UTF-8 ({exc.reason})") from exc


def read_graph(path) -> Graph:
    return parse_graph(_read(path), str(path))


def read_orientation(path, base: Graph) -> Orientation:
    return parse_orientation(_read(path), base, str(path))


def format_graph(G: Graph) -> str:
    lines = [f"v {v}" for v in G.order]
    lines += [f"e {u} {v}" for u, v in G.edge_list]
    return "\n".join(lines) + "\n"


def format_orientation(o: Orientation) -> str:
    return "".join(f"a {x} {y}\n" for x, y in sorted(o.arcs))
