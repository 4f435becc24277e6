# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import re
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx
from networkx.algorithms import isomorphism

from .audit import AuditReport, deficiency_audit, local_dist
from .distribution import TypeDistribution, from_graph
from .graph import ColoredGraph, dump_graph, parse_graph_records
from .log import LOG
from .synthesizer import SynthesisReport, rainbow_color, synthesize
from .tree_types import BallType, ball_around, canonical_ball
from .util import (
    ParseError,
    Params,
    SchemeError,
    ValidationError,
    format_number,
    iter_records,
    parse_fields,
    parse_int,
)


# -------------------------------------------------------------------------------------
class Composite:
    """
    Legend entry of a color rule: rainbow color ``color``, the set of rainbow
    colors ``neighbors`` the vertex wants to be joined to, membership ``xi``
    in the output domain and the output color ``base`` (None keeps the input
    color).
    """

    __slots__ = ("color", "neighbors", "xi", "base")

    def __init__(
        self,
        color: int,
        neighbors: Iterable[int] = (),
        xi: bool = True,
        base: Optional[int] = None,
    ) -> None:
        self.color = color
        self.neighbors = frozenset(neighbors)
        self.xi = xi
        self.base = base

    def key(self) -> Tuple:
        return (self.color, tuple(sorted(self.neighbors)), self.xi, self.base or 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Composite):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other) -> bool:
        if not isinstance(other, Composite):
            return NotImplemented
        return self.key() < other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        nbrs = ",".join(str(c) for c in sorted(self.neighbors))
        s = "(%d, {%s})" % (self.color, nbrs)
        if not self.xi:
            s += " xi=0"
        if self.base is not None:
            s += " color=%d" % self.base
        return s

    def __repr__(self) -> str:
        return "<Composite %s>" % self


class ColorRule:
    """
    Edge rule on rainbow colored graphs: ``x`` and ``y`` within distance r are
    joined iff each one's color belongs to the other's neighbor color set.
    """

    __slots__ = ("legend",)

    def __init__(self, legend: Dict[int, Composite]) -> None:
        self.legend = dict(legend)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorRule):
            return NotImplemented
        return self.legend == other.legend

    __hash__ = None


class TypePairFamily:
    """
    Edge rule given by pairs ``(ball, z)``: ``ball`` is a 2r-ball type and
    ``z`` a vertex of its representative. ``x`` is joined to the image of
    ``z`` under every isomorphism from the representative onto the 2r-ball
    of ``x``.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[Tuple[BallType, int]]) -> None:
        self.pairs = frozenset(pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TypePairFamily):
            return NotImplemented
        return self.pairs == other.pairs

    __hash__ = None


Eta = Union[ColorRule, TypePairFamily]


# -------------------------------------------------------------------------------------
class InterpretationScheme:
    """
    Local recipe producing a new graph from an input graph.

    :arg r:
        Locality radius.
    :arg eta:
        Edge rule, a :class:`TypePairFamily` or a :class:`ColorRule`.
    :arg xi:
        r-ball types of the vertices kept in the output, None keeps all.
    :arg marks:
        Named sets of r-ball types. Output vertices whose r-ball belongs to
        such a set carry the mark.
    :arg out_degree:
        Degree bound of the output graph, None derives it from the result.
    """

    __slots__ = ("r", "eta", "xi", "marks", "out_degree")

    def __init__(
        self,
        r: int,
        eta: Eta,
        xi: Optional[Iterable[BallType]] = None,
        marks: Optional[Dict[str, Iterable[BallType]]] = None,
        out_degree: Optional[int] = None,
    ) -> None:
        self.r = r
        self.eta = eta
        self.xi = None if xi is None else frozenset(xi)
        self.marks = {
            name: frozenset(types) for name, types in (marks or {}).items()
        }  # type: Dict[str, FrozenSet[BallType]]
        self.out_degree = out_degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, InterpretationScheme):
            return NotImplemented
        return (
            self.r == other.r
            and self.eta == other.eta
            and self.xi == other.xi
            and self.marks == other.marks
            and self.out_degree == other.out_degree
        )

    __hash__ = None


def color_rule_scheme(legend: Dict[int, Composite], r: int) -> InterpretationScheme:
    return InterpretationScheme(r, ColorRule(legend))


# -------------------------------------------------------------------------------------
class ValidationResult:
    __slots__ = ("violations",)

    def __init__(self, violations: List[Tuple[str, str]]) -> None:
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> Set[str]:
        return {kind for kind, _ in self.violations}

    def dump(self) -> str:
        lines = ["valid %s" % ("yes" if self.ok else "no")]
        for kind, msg in self.violations:
            lines.append("violation %s %s" % (kind, msg))
        return "\n".join(lines) + "\n"


def validate_scheme(scheme: InterpretationScheme) -> ValidationResult:
    """
    Static checks of a scheme: symmetry, anti-reflexivity, guardedness and
    locality. Symmetry of a type pair family is checked on signatures made of
    the r-ball types of both endpoints and their distance.
    """
    violations = []  # type: List[Tuple[str, str]]
    r = scheme.r
    if r < 0:
        return ValidationResult([("radius", "radius must be >= 0: %d" % r)])
    xi = scheme.xi
    for name in sorted(scheme.marks):
        if xi is None:
            continue
        for ball in sorted(scheme.marks[name] - xi):
            violations.append(
                ("guardedness", "mark %s uses type %s outside xi" % (name, ball))
            )
    if isinstance(scheme.eta, ColorRule):
        for cid, comp in sorted(scheme.eta.legend.items()):
            if not comp.xi and comp.neighbors:
                violations.append(
                    (
                        "guardedness",
                        "legend color %d is outside xi but wants neighbors" % cid,
                    )
                )
        return ValidationResult(violations)

    signatures = set()
    for ball, z in sorted(scheme.eta.pairs, key=lambda p: (p[0].encoding, p[1])):
        g = ball.to_nx()
        if not 0 <= z < len(g):
            violations.append(("index", "vertex %d is not in %s" % (z, ball)))
            continue
        if z == 0:
            violations.append(
                ("anti-reflexivity", "pair (%s, 0) joins the root" % ball)
            )
            continue
        dist = nx.single_source_shortest_path_length(g, 0)
        if dist[z] > r:
            violations.append(
                ("locality", "vertex %d of %s lies beyond radius %d" % (z, ball, r))
            )
            continue
        if max(dist.values()) > 2 * r:
            violations.append(("locality", "%s is not a %d-ball" % (ball, 2 * r)))
            continue
        near_root = ball_around(g, 0, r, ball.params)
        near_z = ball_around(g, z, r, ball.params)
        if xi is not None and (near_root not in xi or near_z not in xi):
            violations.append(
                ("guardedness", "pair (%s, %d) has an endpoint outside xi" % (ball, z))
            )
        signatures.add((near_root.encoding, near_z.encoding, dist[z]))
    for a, b, delta in sorted(signatures):
        if (b, a, delta) not in signatures:
            msg = "no reverse pair for %s -> %s at distance %d" % (a, b, delta)
            violations.append(("symmetry", msg))
    return ValidationResult(violations)


# -------------------------------------------------------------------------------------
def _legend_entry(legend: Dict[int, Composite], color: int) -> Composite:
    try:
        return legend[color]
    except KeyError:
        raise SchemeError("color %d has no legend entry" % color) from None


def _ball_graph(graph: ColoredGraph, x: int, radius: int) -> nx.Graph:
    dist = nx.single_source_shortest_path_length(graph.graph, x, cutoff=radius)
    sub = nx.Graph()
    for u in dist:
        sub.add_node(u, color=graph.color(u), root=(u == x))
    for u in dist:
        for w in graph.graph.adj[u]:
            if w in dist:
                sub.add_edge(u, w)
    return sub


NODE_MATCH = isomorphism.categorical_node_match(["color", "root"], [None, False])


def _color_rule_arcs(
    legend: Dict[int, Composite], graph: ColoredGraph, domain: List[int], r: int
) -> Set[Tuple[int, int]]:
    arcs = set()
    for x in domain:
        cx = _legend_entry(legend, graph.color(x))
        if not cx.neighbors:
            continue
        reach = nx.single_source_shortest_path_length(graph.graph, x, cutoff=r)
        for y in reach:
            if y == x:
                continue
            cy = _legend_entry(legend, graph.color(y))
            if cy.color in cx.neighbors and cx.color in cy.neighbors:
                arcs.add((x, y))
    return arcs


def _type_pair_arcs(
    family: TypePairFamily, graph: ColoredGraph, domain: List[int], r: int
) -> Set[Tuple[int, int]]:
    targets = {}  # type: Dict[str, List[int]]
    reps = {}  # type: Dict[str, nx.Graph]
    for ball, z in family.pairs:
        targets.setdefault(ball.encoding, []).append(z)
        if ball.encoding not in reps:
            reps[ball.encoding] = ball.to_nx()
    arcs = set()
    for x in domain:
        enc = ball_around(graph.graph, x, 2 * r, graph.params).encoding
        if enc not in targets:
            continue
        matcher = isomorphism.GraphMatcher(
            reps[enc], _ball_graph(graph, x, 2 * r), node_match=NODE_MATCH
        )
        for mapping in matcher.isomorphisms_iter():
            for z in targets[enc]:
                arcs.add((x, mapping[z]))
    return arcs


def interpret(
    scheme: InterpretationScheme, graph: ColoredGraph
) -> Tuple[ColoredGraph, List[int]]:
    """
    Apply a scheme and also return, for each output vertex, the input vertex
    it comes from.

    :raises SchemeError:
        If the scheme fails validation or produces an asymmetric, reflexive or
        unguarded edge on this graph.
    :raises ValidationError:
        If the output exceeds the declared degree bound.
    """
    result = validate_scheme(scheme)
    if not result.ok:
        kind, msg = result.violations[0]
        raise SchemeError("invalid scheme (%s): %s" % (kind, msg))
    r = scheme.r
    legend = scheme.eta.legend if isinstance(scheme.eta, ColorRule) else None
    balls = {}  # type: Dict[int, BallType]

    def near_type(v: int) -> BallType:
        if v not in balls:
            balls[v] = ball_around(graph.graph, v, r, graph.params)
        return balls[v]

    domain = []
    for v in graph.vertices():
        if legend is not None and not _legend_entry(legend, graph.color(v)).xi:
            continue
        if scheme.xi is not None and near_type(v) not in scheme.xi:
            continue
        domain.append(v)
    inside = set(domain)

    if legend is not None:
        arcs = _color_rule_arcs(legend, graph, domain, r)
    else:
        arcs = _type_pair_arcs(scheme.eta, graph, domain, r)
    for x, y in sorted(arcs):
        if x == y:
            raise SchemeError("scheme joins vertex %d to itself" % x)
        if y not in inside:
            raise SchemeError("edge %d-%d leaves the output domain" % (x, y))
        if (y, x) not in arcs:
            raise SchemeError("edge %d-%d is not symmetric" % (x, y))

    index = {v: i for i, v in enumerate(domain)}
    colors = []
    for v in domain:
        color = graph.color(v)
        if legend is not None and legend[color].base is not None:
            color = legend[color].base
        colors.append(color)
    edges = sorted({(index[x], index[y]) for x, y in arcs if x < y})
    degrees = [0] * len(domain)
    for u, v in edges:
        degrees[u] += 1
        degrees[v] += 1
    degree = max(degrees, default=0)
    if scheme.out_degree is not None:
        if degree > scheme.out_degree:
            raise ValidationError(
                "output degree %d exceeds the declared bound %d"
                % (degree, scheme.out_degree)
            )
        degree = scheme.out_degree
    recolored = legend is not None and any(c.base is not None for c in legend.values())
    c = max(colors, default=1) if recolored else graph.params.c
    out = ColoredGraph(Params(max(1, degree), max(1, c)))
    for v, color in zip(domain, colors):
        marks = [name for name, types in scheme.marks.items() if near_type(v) in types]
        out.add_vertex(color, marks=marks)
    for u, v in edges:
        out.add_edge(u, v)
    LOG.debug(
        "interpretation kept %d of %d vertices, %d edges",
        len(out),
        len(graph),
        len(edges),
    )
    return out, domain


def apply_scheme(scheme: InterpretationScheme, graph: ColoredGraph) -> ColoredGraph:
    return interpret(scheme, graph)[0]


# -------------------------------------------------------------------------------------
LEGEND_RE = re.compile(
    r"^legend\s+(?P<id>\d+)\s*=\s*"
    r"\(\s*(?P<color>\d+)\s*,\s*\{(?P<nbrs>[0-9,\s]*)\}\s*\)"
    r"(?P<flags>(\s+[a-z]+=\d+)*)\s*$"
)


def _catalog_ball(lineno: int, graph: ColoredGraph) -> BallType:
    if len(graph) == 0 or not nx.is_connected(graph.graph):
        raise ParseError(lineno, "catalog ball must be connected and non empty")
    radius = max(nx.single_source_shortest_path_length(graph.graph, 0).values())
    params = Params(graph.params.d, graph.params.c, radius)
    return canonical_ball(graph.graph, 0, params)


def _rep_index(graph: ColoredGraph, ball: BallType, z: int) -> int:
    colors, edges = ball.representative()
    mine = [graph.color(v) for v in graph.vertices()]
    if mine == colors and graph.edges() == edges:
        return z
    rooted = graph.graph.copy()
    for v in rooted:
        rooted.nodes[v]["root"] = v == 0
    matcher = isomorphism.GraphMatcher(rooted, ball.to_nx(), node_match=NODE_MATCH)
    return next(matcher.isomorphisms_iter())[z]


def _parse_legend(lineno: int, line: str) -> Tuple[int, Composite]:
    match = LEGEND_RE.match(line)
    if not match:
        raise ParseError(lineno, "expected 'legend <id> = (<color>, {<colors>})'")
    nbrs = [tok for tok in re.split(r"[,\s]+", match.group("nbrs")) if tok]
    flags = parse_fields(lineno, match.group("flags").split())
    unknown = sorted(set(flags) - {"xi", "color"})
    if unknown:
        raise ParseError(lineno, "unknown legend flags: %s" % ", ".join(unknown))
    base = parse_int(lineno, flags["color"], "color") if "color" in flags else None
    comp = Composite(
        int(match.group("color")),
        [int(tok) for tok in nbrs],
        flags.get("xi", "1") != "0",
        base,
    )
    return int(match.group("id")), comp


def parse_scheme(text: str) -> InterpretationScheme:
    """
    Parse a scheme file: a ``scheme r= form=`` header, ``legend``, ``xi``,
    ``mark`` and ``eta`` records, and ``ball <id>`` ... ``end`` sections
    holding catalog graphs rooted at their vertex 0.
    """
    records = list(iter_records(text))
    if not records:
        raise ValidationError("missing 'scheme' header")
    lineno, line = records[0]
    tokens = line.split()
    if tokens[0] != "scheme":
        raise ParseError(lineno, "expected 'scheme' header, got %r" % tokens[0])
    fields = parse_fields(lineno, tokens[1:])
    if "r" not in fields or fields.get("form") not in ("colorrule", "typepair"):
        raise ParseError(lineno, "header needs r=<int> and form=colorrule|typepair")
    unknown = sorted(set(fields) - {"r", "form", "outdeg"})
    if unknown:
        raise ParseError(lineno, "unknown header fields: %s" % ", ".join(unknown))
    r = parse_int(lineno, fields["r"], "radius")
    out_degree = None
    if "outdeg" in fields:
        out_degree = parse_int(lineno, fields["outdeg"], "degree")

    catalog = {}  # type: Dict[str, BallType]
    graphs = {}  # type: Dict[str, ColoredGraph]
    body = []  # type: List[Tuple[int, str]]
    i = 1
    while i < len(records):
        lineno, line = records[i]
        tokens = line.split()
        if tokens[0] != "ball":
            body.append((lineno, line))
            i += 1
            continue
        if len(tokens) != 2 or tokens[1] in catalog:
            raise ParseError(lineno, "expected 'ball <new id>'")
        section = []
        i += 1
        while i < len(records) and records[i][1] != "end":
            section.append(records[i])
            i += 1
        if i == len(records):
            raise ParseError(lineno, "ball section %s lacks 'end'" % tokens[1])
        i += 1
        graph = parse_graph_records(iter(section))
        graphs[tokens[1]] = graph
        catalog[tokens[1]] = _catalog_ball(lineno, graph)

    def lookup(lineno: int, ident: str) -> BallType:
        if ident not in catalog:
            raise ParseError(lineno, "unknown ball %r" % ident)
        return catalog[ident]

    legend = {}  # type: Dict[int, Composite]
    xi = set()  # type: Optional[Set[BallType]]
    marks = {}  # type: Dict[str, Set[BallType]]
    pairs = set()
    for lineno, line in body:
        tokens = line.split()
        if tokens[0] == "legend":
            cid, comp = _parse_legend(lineno, line)
            if cid in legend:
                raise ParseError(lineno, "duplicate legend entry %d" % cid)
            legend[cid] = comp
        elif tokens[0] == "xi":
            if tokens[1:] == ["*"]:
                xi = None
            elif xi is None:
                raise ParseError(lineno, "xi already covers every type")
            else:
                xi.update(lookup(lineno, ident) for ident in tokens[1:])
        elif tokens[0] == "mark":
            if len(tokens) < 2:
                raise ParseError(lineno, "expected 'mark <name> <ball>...'")
            marks.setdefault(tokens[1], set()).update(
                lookup(lineno, ident) for ident in tokens[2:]
            )
        elif tokens[0] == "eta":
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'eta <ball> <vertex>'")
            ball = lookup(lineno, tokens[1])
            z = parse_int(lineno, tokens[2], "vertex")
            if not 0 <= z < len(graphs[tokens[1]]):
                raise ParseError(lineno, "ball %s has no vertex %d" % (tokens[1], z))
            pairs.add((ball, _rep_index(graphs[tokens[1]], ball, z)))
        else:
            raise ParseError(lineno, "unknown record %r" % tokens[0])

    if fields["form"] == "colorrule":
        if pairs:
            raise ValidationError("eta pairs are not allowed in a colorrule scheme")
        eta = ColorRule(legend)  # type: Eta
    else:
        if legend:
            raise ValidationError("legend entries are not allowed in a typepair scheme")
        eta = TypePairFamily(pairs)
    return InterpretationScheme(r, eta, xi, marks, out_degree)


def dump_scheme(scheme: InterpretationScheme) -> str:
    balls = set()  # type: Set[BallType]
    if scheme.xi is not None:
        balls.update(scheme.xi)
    for types in scheme.marks.values():
        balls.update(types)
    if isinstance(scheme.eta, TypePairFamily):
        balls.update(ball for ball, _ in scheme.eta.pairs)
    ids = {ball: "b%d" % i for i, ball in enumerate(sorted(balls))}

    form = "colorrule" if isinstance(scheme.eta, ColorRule) else "typepair"
    header = "scheme r=%d form=%s" % (scheme.r, form)
    if scheme.out_degree is not None:
        header += " outdeg=%d" % scheme.out_degree
    lines = [header]
    if isinstance(scheme.eta, ColorRule):
        for cid, comp in sorted(scheme.eta.legend.items()):
            lines.append("legend %d = %s" % (cid, comp))
    if scheme.xi is None:
        lines.append("xi *")
    elif scheme.xi:
        lines.append("xi %s" % " ".join(sorted(ids[b] for b in scheme.xi)))
    for name in sorted(scheme.marks):
        members = sorted(ids[b] for b in scheme.marks[name])
        lines.append(" ".join(["mark", name] + members))
    if isinstance(scheme.eta, TypePairFamily):
        for ball, z in sorted(scheme.eta.pairs, key=lambda p: (ids[p[0]], p[1])):
            lines.append("eta %s %d" % (ids[ball], z))
    for ball in sorted(balls):
        lines.append("ball %s" % ids[ball])
        lines.extend(dump_graph(ColoredGraph.from_ball(ball)).splitlines())
        lines.append("end")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------------------------
class PipelineRun:
    """
    One synthesized size of a :func:`pipeline` call.
    """

    __slots__ = ("n", "synthesis", "audit", "size", "distance", "upper")

    def __init__(
        self,
        n: int,
        synthesis: SynthesisReport,
        audit: AuditReport,
        size: int,
        distance: Any,
        upper: Any,
    ) -> None:
        self.n = n
        self.synthesis = synthesis
        self.audit = audit
        self.size = size
        self.distance = distance
        self.upper = upper


class PipelineReport:
    __slots__ = (
        "locality",
        "rainbow_radius",
        "rainbow_colors",
        "legend",
        "distribution",
        "source_exact",
        "depth",
        "runs",
        "seed",
    )

    def __init__(
        self,
        locality: int,
        rainbow_radius: int,
        rainbow_colors: int,
        legend: Dict[int, Composite],
        distribution: TypeDistribution,
        source_exact: bool,
        depth: int,
        runs: List[PipelineRun],
        seed: Any = None,
    ) -> None:
        self.locality = locality
        self.rainbow_radius = rainbow_radius
        self.rainbow_colors = rainbow_colors
        self.legend = legend
        self.distribution = distribution
        self.source_exact = source_exact
        self.depth = depth
        self.runs = runs
        self.seed = seed

    def dump(self) -> str:
        lines = [
            "locality %d" % self.locality,
            "rainbow_radius %d" % self.rainbow_radius,
            "rainbow_colors %d" % self.rainbow_colors,
            "composite_colors %d" % len(self.legend),
            "support %d" % len(self.distribution),
            "source_exact %s" % ("yes" if self.source_exact else "no"),
            "depth %d" % self.depth,
        ]
        if self.seed is not None:
            lines.append("seed %s" % self.seed)
        for run in self.runs:
            lines.append(
                "run n=%d size=%d nonperfect=%d distance=%s upper=%s"
                % (
                    run.n,
                    run.size,
                    run.synthesis.nonperfect,
                    format_number(run.distance),
                    format_number(run.upper),
                )
            )
        return "\n".join(lines) + "\n"


def _check_forest(forest: ColoredGraph) -> None:
    if len(forest) and not nx.is_forest(forest.graph):
        raise ValidationError("the source graph contains a cycle")


def pipeline(
    target: ColoredGraph,
    forest: ColoredGraph,
    k: int,
    sizes: Iterable[int],
    seed: Any = 0,
    domain: Optional[List[int]] = None,
    epsilon: Any = None,
) -> PipelineReport:
    """
    Approximate ``target`` by interpretations of finite high girth graphs.

    ``target`` must be an interpretation of ``forest`` by a color rule: its
    vertex ``i`` sits on forest vertex ``domain[i]`` (identity by default)
    and each of its edges joins vertices of one forest component. The forest
    is rainbow colored, recolored with composite colors and synthesized at
    every size of ``sizes``. Each synthesized graph is interpreted back and
    compared to ``target`` by the truncated local distance.
    """
    if k < 0:
        raise ValidationError("k must be >= 0: %d" % k)
    _check_forest(forest)
    if domain is None:
        domain = list(range(len(target)))
    if len(domain) != len(target) or len(set(domain)) != len(domain):
        raise ValidationError("domain must map target vertices to distinct vertices")
    for x in domain:
        if not 0 <= x < len(forest):
            raise ValidationError("domain vertex %d is not in the source graph" % x)
    components = {}
    for i, comp in enumerate(nx.connected_components(forest.graph)):
        for v in comp:
            components[v] = i

    locality = 0
    for a, b in target.edges():
        x, y = domain[a], domain[b]
        if components[x] != components[y]:
            raise ValidationError(
                "target edge %d-%d joins different source components" % (a, b)
            )
        locality = max(locality, nx.shortest_path_length(forest.graph, x, y))
    radius = max(locality, 2 * k, 1)
    LOG.info("locality radius %d, rainbow radius %d", locality, radius)
    rainbow = rainbow_color(forest, radius)

    inverse = {x: i for i, x in enumerate(domain)}
    composites = []
    for v in forest.vertices():
        color = rainbow.color(v)
        if v in inverse:
            i = inverse[v]
            wanted = {rainbow.color(domain[j]) for j in target.neighbors(i)}
            composites.append(Composite(color, wanted, True, target.color(i)))
        else:
            composites.append(Composite(color, (), False, None))
    legend = {i + 1: comp for i, comp in enumerate(sorted(set(composites)))}
    ids = {comp: cid for cid, comp in legend.items()}
    recolored = ColoredGraph(Params(forest.params.d, len(legend)))
    for v in forest.vertices():
        recolored.add_vertex(ids[composites[v]])
    for u, v in forest.edges():
        recolored.add_edge(u, v)

    q = from_graph(recolored, k)
    scheme = color_rule_scheme(legend, locality)
    image, origin = interpret(scheme, recolored)
    back = [inverse[x] for x in origin]
    exact = (
        len(image) == len(target)
        and all(image.color(u) == target.color(back[u]) for u in image.vertices())
        and sorted(
            (min(back[u], back[v]), max(back[u], back[v])) for u, v in image.edges()
        )
        == target.edges()
    )
    if not exact:
        LOG.warning("interpretation of the recolored source does not match the target")

    depth = (k - 2 * locality) // locality if locality else 1
    depth = max(depth, 1)
    runs = []
    for n in sizes:
        synthesized, synth_report = synthesize(q, n, seed, epsilon)
        audit_report = deficiency_audit(synthesized, q)
        result = apply_scheme(scheme, synthesized)
        common = Params(
            max(target.params.d, result.params.d), max(target.params.c, result.params.c)
        )
        dist, upper = local_dist(
            result.with_params(common), target.with_params(common), depth
        )
        LOG.info("n=%d: local distance %s (upper %s)", n, dist, upper)
        runs.append(
            PipelineRun(n, synth_report, audit_report, len(result), dist, upper)
        )
    return PipelineReport(
        locality, radius, rainbow.params.c, legend, q, exact, depth, runs, seed
    )
