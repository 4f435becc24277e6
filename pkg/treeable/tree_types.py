# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from collections import Counter, deque
import functools
import itertools
import math
import re
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .log import LOG
from .util import Params, ResourceError, ValidationError


# -------------------------------------------------------------------------------------
ENUMERATION_CAP = 10**6
BALL_SIZE_CAP = 20000


# -------------------------------------------------------------------------------------
@functools.lru_cache(maxsize=None)
def _split(encoding: str) -> Tuple[int, Tuple[str, ...]]:
    """
    Split a canonical tree encoding into its root color and child encodings.
    """
    i = encoding.index("[")
    color = int(encoding[:i])
    body = encoding[i + 1 : -1]
    children = []
    level = 0
    start = 0
    for j, ch in enumerate(body):
        if ch == "[":
            level += 1
        elif ch == "]":
            level -= 1
        elif ch == "," and level == 0:
            children.append(body[start:j])
            start = j + 1
    if body:
        children.append(body[start:])
    return color, tuple(children)


@functools.lru_cache(maxsize=None)
def _depth(encoding: str) -> int:
    _, children = _split(encoding)
    if not children:
        return 0
    return 1 + max(_depth(ch) for ch in children)


@functools.lru_cache(maxsize=None)
def _truncate(encoding: str, level: int) -> str:
    color, children = _split(encoding)
    if level == 0 or not children:
        return "%d[]" % color
    parts = sorted(_truncate(ch, level - 1) for ch in children)
    return "%d[%s]" % (color, ",".join(parts))


@functools.lru_cache(maxsize=None)
def _neighbor_balls(encoding: str, k: int) -> Tuple[str, ...]:
    """
    k-balls, as rooted trees, of the root's neighbors inside the tree.
    """
    color, children = _split(encoding)
    balls = []
    for i, child in enumerate(children):
        child_color, grandchildren = _split(child)
        if k == 0:
            balls.append("%d[]" % child_color)
            continue
        rest = children[:i] + children[i + 1 :]
        parent = "%d[%s]" % (color, ",".join(rest))
        parts = [_truncate(g, k - 1) for g in grandchildren]
        parts.append(_truncate(parent, k - 1))
        balls.append("%d[%s]" % (child_color, ",".join(sorted(parts))))
    return tuple(balls)


# -------------------------------------------------------------------------------------
class RootedTreeType:
    """
    Isomorphism class of a rooted, vertex colored tree of depth at most
    ``params.r``. Two types are equal when their canonical encodings are equal.
    """

    __slots__ = ("params", "encoding")

    def __init__(self, params: Params, encoding: str) -> None:
        self.params = params
        self.encoding = encoding

    @property
    def color(self) -> int:
        return _split(self.encoding)[0]

    def children(self) -> Tuple[str, ...]:
        return _split(self.encoding)[1]

    def degree(self) -> int:
        return len(self.children())

    def depth(self) -> int:
        return _depth(self.encoding)

    def representative(self) -> Tuple[List[int], List[Tuple[int, int]]]:
        colors = []  # type: List[int]
        edges = []  # type: List[Tuple[int, int]]
        _expand(self.encoding, colors, edges, None)
        return colors, edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTreeType):
            return NotImplemented
        return self.encoding == other.encoding

    def __lt__(self, other) -> bool:
        if not isinstance(other, RootedTreeType):
            return NotImplemented
        return self.encoding < other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def __str__(self) -> str:
        return self.encoding

    def __repr__(self) -> str:
        return "<RootedTreeType %s r=%d>" % (self.encoding, self.params.r)


# -------------------------------------------------------------------------------------
NUMBER_RE = re.compile(r"[0-9]+")


def _read_node(text: str, pos: int) -> Tuple[Tuple[int, list], int]:
    match = NUMBER_RE.match(text, pos)
    if not match:
        raise ValidationError("expected a color at offset %d of %r" % (pos, text))
    color = int(match.group())
    pos = match.end()
    if pos >= len(text) or text[pos] != "[":
        raise ValidationError("expected '[' at offset %d of %r" % (pos, text))
    pos += 1
    children = []
    if pos < len(text) and text[pos] == "]":
        return (color, children), pos + 1
    while True:
        child, pos = _read_node(text, pos)
        children.append(child)
        if pos >= len(text):
            raise ValidationError("unterminated child list in %r" % text)
        if text[pos] == "]":
            return (color, children), pos + 1
        if text[pos] != ",":
            raise ValidationError(
                "unexpected %r at offset %d of %r" % (text[pos], pos, text)
            )
        pos += 1


def _canonical(node: Any, params: Params, level: int, root: bool) -> str:
    try:
        color, children = node
        children = list(children)
    except (TypeError, ValueError):
        raise ValidationError("malformed tree node: %r" % (node,)) from None
    if not isinstance(color, int) or not 1 <= color <= params.c:
        raise ValidationError("color %r outside 1..%d" % (color, params.c))
    limit = params.d if root else params.d - 1
    if len(children) > limit:
        raise ValidationError(
            "vertex at depth %d has %d children, at most %d allowed"
            % (level, len(children), limit)
        )
    if children and level >= params.r:
        raise ValidationError("tree is deeper than radius %d" % params.r)
    parts = sorted(_canonical(ch, params, level + 1, False) for ch in children)
    return "%d[%s]" % (color, ",".join(parts))


def _nested_from_graph(graph: nx.Graph, root: Any) -> Tuple[int, list]:
    if root not in graph:
        raise ValidationError("root %r is not a vertex of the tree" % (root,))
    if not nx.is_tree(graph):
        raise ValidationError("representative is not a tree")

    def build(v, parent):
        kids = [build(u, v) for u in graph[v] if u != parent]
        return (graph.nodes[v]["color"], kids)

    return build(root, None)


def canonical_tree(tree: Any, params: Params, root: Any = None) -> RootedTreeType:
    """
    Canonicalize a rooted colored tree given either as nested
    ``(color, [children...])`` pairs or as a :class:`networkx.Graph` with a
    ``color`` node attribute and an explicit root.

    :arg tree:
        The tree representative.
    :arg params:
        Degree, color and depth bounds the tree must satisfy.
    :arg root:
        Root vertex, required when ``tree`` is a graph.

    :raises ValidationError:
        If the representative violates the bounds or is not a tree.
    """
    if isinstance(tree, nx.Graph):
        if root is None:
            raise ValidationError("a root is required for graph representatives")
        tree = _nested_from_graph(tree, root)
    return RootedTreeType(params, _canonical(tree, params, 0, True))


def parse_tree_type(text: str, params: Params) -> RootedTreeType:
    text = text.strip()
    node, pos = _read_node(text, 0)
    if pos != len(text):
        raise ValidationError("trailing data after tree encoding %r" % text)
    return RootedTreeType(params, _canonical(node, params, 0, True))


def parse_tree_type_any_depth(text: str, d: int, c: int) -> RootedTreeType:
    """
    Parse an encoding whose depth is not known in advance. The resulting type
    uses its own depth as radius bound.
    """
    t = parse_tree_type(text, Params(d, c, len(text)))
    return RootedTreeType(t.params.with_radius(t.depth()), t.encoding)


# -------------------------------------------------------------------------------------
def truncate(t: RootedTreeType, level: int) -> RootedTreeType:
    if level < 0:
        raise ValidationError("truncation level must be >= 0: %d" % level)
    return RootedTreeType(t.params.with_radius(level), _truncate(t.encoding, level))


def neighbor_types(t: RootedTreeType, k: int) -> Counter:
    """
    Multiset of k-types of the root's neighbors, as seen inside ``t``.
    """
    if k < 0:
        raise ValidationError("k must be >= 0: %d" % k)
    params = t.params.with_radius(k)
    balls = _neighbor_balls(t.encoding, k)
    return Counter(RootedTreeType(params, enc) for enc in balls)


def adm(t: RootedTreeType, tau: RootedTreeType) -> int:
    """
    Number of root neighbors in ``t`` whose k-ball, computed inside ``t``, has
    type ``tau``. ``t`` must be a (k+1)-type and ``tau`` a k-type.
    """
    k = tau.params.r
    if t.params.r != k + 1:
        raise ValidationError(
            "adm needs a %d-type for a %d-type argument, got a %d-type"
            % (k + 1, k, t.params.r)
        )
    return _neighbor_balls(t.encoding, k).count(tau.encoding)


# -------------------------------------------------------------------------------------
@functools.lru_cache(maxsize=None)
def _count(d: int, c: int, height: int, max_children: int) -> int:
    if height == 0 or max_children == 0:
        return c
    pool = _count(d, c, height - 1, d - 1)
    return c * sum(math.comb(pool + m - 1, m) for m in range(max_children + 1))


@functools.lru_cache(maxsize=None)
def _enumerate(d: int, c: int, height: int, max_children: int) -> Tuple[str, ...]:
    if height == 0 or max_children == 0:
        return tuple(sorted("%d[]" % col for col in range(1, c + 1)))
    pool = _enumerate(d, c, height - 1, d - 1)
    out = []
    for col in range(1, c + 1):
        for m in range(max_children + 1):
            for combo in itertools.combinations_with_replacement(pool, m):
                out.append("%d[%s]" % (col, ",".join(combo)))
    return tuple(sorted(out))


def count_tree_types(params: Params, cap: Optional[int] = None) -> int:
    """
    Closed form size of the r-type space, without enumerating it.

    :raises ResourceError:
        If ``cap`` is given and the count exceeds it.
    """
    total = _count(params.d, params.c, params.r, params.d)
    if cap is not None and total > cap:
        raise ResourceError(
            "%d-type space for d=%d c=%d has %d elements, cap is %d"
            % (params.r, params.d, params.c, total, cap)
        )
    return total


def enumerate_tree_types(
    params: Params, cap: Optional[int] = None
) -> FrozenSet[RootedTreeType]:
    cap = ENUMERATION_CAP if cap is None else cap
    total = count_tree_types(params, cap)
    LOG.debug("enumerating %d types for %r", total, params)
    return frozenset(
        RootedTreeType(params, enc)
        for enc in _enumerate(params.d, params.c, params.r, params.d)
    )


# -------------------------------------------------------------------------------------
def _expand(
    encoding: str, colors: List[int], edges: List[Tuple[int, int]], parent: Any
) -> int:
    color, children = _split(encoding)
    v = len(colors)
    colors.append(color)
    if parent is not None:
        edges.append((parent, v))
    for ch in children:
        _expand(ch, colors, edges, v)
    return v


def _split_cyclic(encoding: str) -> Tuple[List[str], List[Tuple[int, int]]]:
    labels, edges = encoding[1:-1].rsplit(";", 1)
    pairs = []
    for e in edges.split(","):
        u, v = e.split("-")
        pairs.append((int(u), int(v)))
    return labels.split("|"), pairs


class BallType:
    """
    Isomorphism class of a rooted, vertex colored connected graph in which
    every vertex lies within distance ``params.r`` of the root. Balls that are
    trees share their encoding with :class:`RootedTreeType`.
    """

    __slots__ = ("params", "encoding")

    def __init__(self, params: Params, encoding: str) -> None:
        self.params = params
        self.encoding = encoding

    @property
    def is_tree(self) -> bool:
        return not self.encoding.startswith("{")

    @property
    def color(self) -> int:
        if self.is_tree:
            return _split(self.encoding)[0]
        return _split(_split_cyclic(self.encoding)[0][0])[0]

    def to_tree_type(self) -> RootedTreeType:
        if not self.is_tree:
            raise ValidationError("ball %s contains a cycle" % self.encoding)
        return RootedTreeType(self.params, self.encoding)

    def representative(self) -> Tuple[List[int], List[Tuple[int, int]]]:
        """
        Return ``(colors, edges)`` of a concrete graph of this type. Vertex 0 is
        the root.
        """
        colors = []  # type: List[int]
        edges = []  # type: List[Tuple[int, int]]
        if self.is_tree:
            _expand(self.encoding, colors, edges, None)
        else:
            labels, core_edges = _split_cyclic(self.encoding)
            colors.extend(_split(lab)[0] for lab in labels)
            edges.extend(core_edges)
            for i, lab in enumerate(labels):
                for ch in _split(lab)[1]:
                    _expand(ch, colors, edges, i)
        return colors, sorted((min(u, v), max(u, v)) for u, v in edges)

    def to_nx(self) -> nx.Graph:
        colors, edges = self.representative()
        g = nx.Graph()
        for v, col in enumerate(colors):
            g.add_node(v, color=col, root=(v == 0))
        g.add_edges_from(edges)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, BallType):
            return NotImplemented
        return self.encoding == other.encoding

    def __lt__(self, other) -> bool:
        if not isinstance(other, BallType):
            return NotImplemented
        return self.encoding < other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def __str__(self) -> str:
        return self.encoding

    def __repr__(self) -> str:
        return "<BallType %s r=%d>" % (self.encoding, self.params.r)


# -------------------------------------------------------------------------------------
def _rank(values: Sequence) -> List[int]:
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _refine(nbrs: List[List[int]], labels: List[int]) -> List[int]:
    labels = _rank(labels)
    while True:
        sigs = [
            (labels[v], tuple(sorted(labels[u] for u in nbrs[v])))
            for v in range(len(labels))
        ]
        new = _rank(sigs)
        if max(new) == max(labels):
            return new
        labels = new


def _search(nbrs: List[List[int]], labels: List[int]) -> Iterable[List[int]]:
    labels = _refine(nbrs, labels)
    counts = Counter(labels)
    target = min((lab for lab, n in counts.items() if n > 1), default=None)
    if target is None:
        yield labels
        return
    for v in [i for i, lab in enumerate(labels) if lab == target]:
        split = [2 * lab + 1 for lab in labels]
        split[v] = 2 * target
        yield from _search(nbrs, split)


def _ball_encoding(adj: Dict[Any, List[Any]], colors: Dict[Any, int], root: Any) -> str:
    alive = {v: set(nbrs) for v, nbrs in adj.items()}
    hanging = {v: [] for v in alive}  # type: Dict[Any, List[str]]
    queue = deque(v for v, nbrs in alive.items() if v != root and len(nbrs) <= 1)
    while queue:
        u = queue.popleft()
        if u not in alive:
            continue
        enc = "%d[%s]" % (colors[u], ",".join(sorted(hanging.pop(u))))
        for p in alive.pop(u):
            alive[p].discard(u)
            hanging[p].append(enc)
            if p != root and len(alive[p]) == 1:
                queue.append(p)

    def label(v):
        return "%d[%s]" % (colors[v], ",".join(sorted(hanging[v])))

    if len(alive) == 1:
        return label(root)

    core = sorted(alive)
    index = {v: i for i, v in enumerate(core)}
    labels = [label(v) for v in core]
    nbrs = [[index[u] for u in alive[v]] for v in core]
    dist = {index[root]: 0}
    queue = deque([index[root]])
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    initial = [
        (0 if v == root else 1, dist[i], labels[i]) for i, v in enumerate(core)
    ]

    best = None
    best_pos = None
    for pos in _search(nbrs, _rank(initial)):
        cert = tuple(
            sorted(
                (min(pos[u], pos[v]), max(pos[u], pos[v]))
                for u in range(len(core))
                for v in nbrs[u]
                if u < v
            )
        )
        if best is None or cert < best:
            best = cert
            best_pos = pos
    ordered = [lab for _, lab in sorted(zip(best_pos, labels))]
    return "{%s;%s}" % ("|".join(ordered), ",".join("%d-%d" % e for e in best))


def canonical_ball(
    graph: nx.Graph, root: Any, params: Params, cap: Optional[int] = None
) -> BallType:
    """
    Canonicalize a connected colored graph rooted at ``root``. The graph is
    expected to be the ball itself (every vertex within ``params.r``).
    """
    cap = BALL_SIZE_CAP if cap is None else cap
    if len(graph) > cap:
        raise ResourceError("ball of %d vertices exceeds cap %d" % (len(graph), cap))
    adj = {v: list(graph[v]) for v in graph}
    colors = {v: graph.nodes[v]["color"] for v in graph}
    return BallType(params, _ball_encoding(adj, colors, root))


def ball_around(
    graph: nx.Graph, v: Any, r: int, params: Params, cap: Optional[int] = None
) -> BallType:
    """
    Type of the induced r-ball around ``v`` in a graph carrying a ``color``
    node attribute.
    """
    if v not in graph:
        raise ValidationError("vertex %r is not in the graph" % (v,))
    if r < 0:
        raise ValidationError("radius must be >= 0: %d" % r)
    cap = BALL_SIZE_CAP if cap is None else cap
    dist = nx.single_source_shortest_path_length(graph, v, cutoff=r)
    if len(dist) > cap:
        raise ResourceError(
            "%d-ball of vertex %r has %d vertices, cap is %d" % (r, v, len(dist), cap)
        )
    adj = {u: [w for w in graph.adj[u] if w in dist] for u in dist}
    colors = {u: graph.nodes[u]["color"] for u in dist}
    return BallType(params.with_radius(r), _ball_encoding(adj, colors, v))


def extract_ball(graph, v: int, r: int, cap: Optional[int] = None) -> BallType:
    """
    Type of the r-ball around vertex ``v`` of a
    :class:`~treeable.graph.ColoredGraph`.
    """
    return ball_around(graph.graph, v, r, graph.params, cap)
