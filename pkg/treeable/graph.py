# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from .tree_types import BallType, RootedTreeType, parse_tree_type_any_depth
from .util import (
    ParseError,
    Params,
    ValidationError,
    iter_records,
    parse_fields,
    parse_header,
    parse_int,
)


# -------------------------------------------------------------------------------------
class ColoredGraph:
    """
    Finite simple graph on vertices ``0..n-1`` with a color in ``1..params.c``
    per vertex and maximum degree ``params.d``. Vertices may also carry an
    intended tree type, a set of mark names and their color before a
    recoloring step.
    """

    __slots__ = ("params", "graph")

    def __init__(self, params: Params, graph: Optional[nx.Graph] = None) -> None:
        self.params = params
        self.graph = nx.Graph() if graph is None else graph

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def vertices(self) -> range:
        return range(len(self))

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.graph.edges())

    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    def add_vertex(
        self,
        color: int,
        intended_type: Optional[RootedTreeType] = None,
        marks: Iterable[str] = (),
        orig_color: Optional[int] = None,
    ) -> int:
        if not isinstance(color, int) or not 1 <= color <= self.params.c:
            raise ValidationError("color %r outside 1..%d" % (color, self.params.c))
        v = len(self)
        self.graph.add_node(
            v, color=color, type=intended_type, marks=frozenset(marks), orig=orig_color
        )
        return v

    def _check_vertex(self, v: int) -> None:
        if v not in self.graph:
            raise ValidationError("no such vertex: %r" % (v,))

    def add_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValidationError("self loop on vertex %d" % u)
        if self.graph.has_edge(u, v):
            raise ValidationError("duplicate edge %d-%d" % (u, v))
        for w in (u, v):
            if self.graph.degree(w) >= self.params.d:
                raise ValidationError(
                    "vertex %d already has the maximum degree %d" % (w, self.params.d)
                )
        self.graph.add_edge(u, v)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.graph.has_edge(u, v):
            raise ValidationError("no edge %r-%r" % (u, v))
        self.graph.remove_edge(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return sorted(self.graph.adj[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.graph.degree(v)

    def max_degree(self) -> int:
        return max((deg for _, deg in self.graph.degree()), default=0)

    def color(self, v: int) -> int:
        return self.graph.nodes[v]["color"]

    def intended_type(self, v: int) -> Optional[RootedTreeType]:
        return self.graph.nodes[v]["type"]

    def marks(self, v: int) -> FrozenSet[str]:
        return self.graph.nodes[v]["marks"]

    def orig_color(self, v: int) -> Optional[int]:
        return self.graph.nodes[v]["orig"]

    def copy(self) -> "ColoredGraph":
        return ColoredGraph(self.params, self.graph.copy())

    def with_params(self, params: Params) -> "ColoredGraph":
        """
        Same graph under different bounds. The graph must respect them.
        """
        if self.max_degree() > params.d:
            raise ValidationError(
                "graph has degree %d, above the bound %d"
                % (self.max_degree(), params.d)
            )
        for v in self.vertices():
            if self.color(v) > params.c:
                raise ValidationError(
                    "vertex %d has color %d, above %d" % (v, self.color(v), params.c)
                )
        return ColoredGraph(params, self.graph.copy())

    @classmethod
    def from_ball(cls, ball: BallType) -> "ColoredGraph":
        colors, edges = ball.representative()
        degrees = [0] * len(colors)
        for u, v in edges:
            degrees[u] += 1
            degrees[v] += 1
        d = max(ball.params.d, max(degrees))
        c = max(ball.params.c, max(colors))
        g = cls(Params(d, c))
        for col in colors:
            g.add_vertex(col)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        if (self.params.d, self.params.c) != (other.params.d, other.params.c):
            return False
        if len(self) != len(other) or self.edges() != other.edges():
            return False
        for key in ("color", "type", "marks", "orig"):
            for v in self.vertices():
                if self.graph.nodes[v][key] != other.graph.nodes[v][key]:
                    return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        return "<ColoredGraph n=%d m=%d d=%d c=%d>" % (
            len(self),
            self.num_edges(),
            self.params.d,
            self.params.c,
        )


# -------------------------------------------------------------------------------------
VERTEX_FIELDS = ("type", "marks", "orig")


def parse_graph_records(records: Iterator[Tuple[int, str]]) -> ColoredGraph:
    """
    Build a graph from ``(lineno, line)`` records: a ``graph d= c=`` header
    followed by ``v`` and ``e`` lines.
    """
    graph = None
    for lineno, line in records:
        if graph is None:
            header = parse_header(lineno, line, "graph", ["d", "c"])
            try:
                graph = ColoredGraph(Params(header["d"], header["c"]))
            except ValidationError as e:
                raise ParseError(lineno, str(e)) from None
            continue
        tokens = line.split()
        try:
            if tokens[0] == "v":
                _parse_vertex(lineno, tokens, graph)
            elif tokens[0] == "e":
                if len(tokens) != 3:
                    raise ParseError(lineno, "expected 'e <u> <v>'")
                graph.add_edge(
                    parse_int(lineno, tokens[1], "vertex"),
                    parse_int(lineno, tokens[2], "vertex"),
                )
            else:
                raise ParseError(lineno, "unknown record %r" % tokens[0])
        except ParseError:
            raise
        except ValidationError as e:
            raise ParseError(lineno, str(e)) from None
    if graph is None:
        raise ValidationError("missing 'graph' header")
    return graph


def _parse_vertex(lineno: int, tokens: List[str], graph: ColoredGraph) -> None:
    if len(tokens) < 3:
        raise ParseError(lineno, "expected 'v <id> <color> [key=value...]'")
    vid = parse_int(lineno, tokens[1], "vertex id")
    if vid != len(graph):
        raise ParseError(lineno, "expected vertex id %d, got %d" % (len(graph), vid))
    color = parse_int(lineno, tokens[2], "color")
    fields = parse_fields(lineno, tokens[3:])
    unknown = sorted(set(fields) - set(VERTEX_FIELDS))
    if unknown:
        raise ParseError(lineno, "unknown vertex fields: %s" % ", ".join(unknown))
    intended = None
    if "type" in fields:
        intended = parse_tree_type_any_depth(
            fields["type"], graph.params.d, graph.params.c
        )
    marks = [m for m in fields.get("marks", "").split(",") if m]
    orig = parse_int(lineno, fields["orig"], "color") if "orig" in fields else None
    graph.add_vertex(color, intended, marks, orig)


def parse_graph(text: str) -> ColoredGraph:
    return parse_graph_records(iter_records(text))


def dump_graph(graph: ColoredGraph) -> str:
    lines = ["graph d=%d c=%d" % (graph.params.d, graph.params.c)]
    for v in graph.vertices():
        line = "v %d %d" % (v, graph.color(v))
        intended = graph.intended_type(v)
        if intended is not None:
            line += " type=%s" % intended.encoding
        if graph.marks(v):
            line += " marks=%s" % ",".join(sorted(graph.marks(v)))
        if graph.orig_color(v) is not None:
            line += " orig=%d" % graph.orig_color(v)
        lines.append(line)
    for u, v in graph.edges():
        lines.append("e %d %d" % (u, v))
    return "\n".join(lines) + "\n"
