# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from collections import Counter, deque
from fractions import Fraction
import math
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from .distribution import TypeDistribution, Weight, project
from .graph import ColoredGraph
from .log import LOG
from .tree_types import (
    BallType,
    RootedTreeType,
    count_tree_types,
    extract_ball,
    neighbor_types,
    truncate,
)
from .util import Params, ValidationError, format_number


# -------------------------------------------------------------------------------------
def girth(graph: ColoredGraph) -> Union[int, float]:
    """
    Length of a shortest cycle, or ``math.inf`` for a forest.
    """
    best = math.inf
    adj = graph.graph.adj
    for root in graph.vertices():
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def nonperfect_bound(params: Params, k: int, cap: Optional[int] = None) -> int:
    """
    Upper bound on the number of vertices within distance k of a deficient
    vertex once no edge can be added, for degree ``params.d`` and
    ``params.c`` colors.
    """
    d = params.d
    tk = count_tree_types(Params(d, params.c, k), cap)
    tk1 = count_tree_types(Params(d, params.c, k + 1), cap)
    return d ** (3 * k + 3) * tk**2 + d ** (k + 1) * tk * tk1


# -------------------------------------------------------------------------------------
class AuditReport:
    """
    Outcome of :func:`deficiency_audit`.

    ``deficient`` maps a pair of k-types ``(tau, tau2)`` to the number of
    vertices of k-type ``tau`` missing at least one neighbor of k-type
    ``tau2``. ``mistyped`` counts vertices whose k-ball differs from their
    intended k-type, ``perfect_violations`` those among them that are perfect.
    """

    __slots__ = (
        "size",
        "k",
        "degree",
        "girth",
        "deficient",
        "bad",
        "nonperfect",
        "bound",
        "mistyped",
        "perfect_violations",
        "cap_violations",
        "deviation",
    )

    def __init__(
        self,
        size: int,
        k: int,
        degree: int,
        graph_girth: Union[int, float],
        deficient: Dict[Tuple[RootedTreeType, RootedTreeType], int],
        bad: List[int],
        nonperfect: int,
        bound: int,
        mistyped: int,
        perfect_violations: int,
        cap_violations: int,
        deviation: Weight,
    ) -> None:
        self.size = size
        self.k = k
        self.degree = degree
        self.girth = graph_girth
        self.deficient = deficient
        self.bad = bad
        self.nonperfect = nonperfect
        self.bound = bound
        self.mistyped = mistyped
        self.perfect_violations = perfect_violations
        self.cap_violations = cap_violations
        self.deviation = deviation

    @property
    def perfect(self) -> int:
        return self.size - self.nonperfect

    @property
    def mistyped_bound(self) -> int:
        return self.degree**self.k * self.nonperfect

    @property
    def passed(self) -> bool:
        return (
            self.nonperfect <= self.bound
            and self.perfect_violations == 0
            and self.cap_violations == 0
            and self.mistyped <= self.mistyped_bound
        )

    def dump(self) -> str:
        lines = [
            "size %d" % self.size,
            "girth %s" % self.girth,
            "bad %d" % len(self.bad),
            "perfect %d" % self.perfect,
            "nonperfect %d" % self.nonperfect,
            "bound %d" % self.bound,
            "mistyped %d" % self.mistyped,
            "mistyped_bound %d" % self.mistyped_bound,
            "perfect_violations %d" % self.perfect_violations,
            "cap_violations %d" % self.cap_violations,
            "deviation %s" % format_number(self.deviation),
        ]
        for (tau, tau2), count in sorted(self.deficient.items()):
            lines.append("deficient %s %s %d" % (tau, tau2, count))
        lines.append("passed %s" % ("yes" if self.passed else "no"))
        return "\n".join(lines) + "\n"


def near(graph: ColoredGraph, sources: List[int], k: int) -> Dict[int, int]:
    """
    Vertices within distance ``k`` of any source, with their distance.
    """
    if not sources:
        return {}
    return nx.multi_source_dijkstra_path_length(graph.graph, set(sources), cutoff=k)


def deficiency_audit(graph: ColoredGraph, q: TypeDistribution) -> AuditReport:
    """
    Check a synthesized graph against the distribution it was built for.
    Every vertex must carry an intended type from the support of ``q``.

    :raises ValidationError:
        If a vertex has no intended type or one outside the support.
    """
    k = q.k
    if k < 0:
        raise ValidationError("distribution over 0-types has no neighbor structure")
    n = len(graph)
    if n == 0:
        raise ValidationError("cannot audit an empty graph")
    support = set(q.support())
    sigma = {}  # type: Dict[int, RootedTreeType]
    caps = {}  # type: Dict[RootedTreeType, Counter]
    for v in graph.vertices():
        t = graph.intended_type(v)
        if t is None:
            raise ValidationError("vertex %d has no intended type" % v)
        if t not in support:
            raise ValidationError(
                "intended type %s of vertex %d is outside the support" % (t, v)
            )
        sigma[v] = truncate(t, k)
        if t not in caps:
            caps[t] = neighbor_types(t, k)

    deficient = Counter()  # type: Counter
    bad = []
    cap_violations = 0
    for v in graph.vertices():
        wanted = caps[graph.intended_type(v)]
        realized = Counter(sigma[u] for u in graph.neighbors(v))
        missing = [tau for tau, cnt in wanted.items() if realized[tau] < cnt]
        for tau in missing:
            deficient[sigma[v], tau] += 1
        if missing:
            bad.append(v)
        if any(cnt > wanted.get(tau, 0) for tau, cnt in realized.items()):
            cap_violations += 1

    reach = near(graph, bad, k)
    balls = Counter()  # type: Counter
    mistyped = 0
    perfect_violations = 0
    for v in graph.vertices():
        enc = extract_ball(graph, v, k).encoding
        balls[enc] += 1
        if enc != sigma[v].encoding:
            mistyped += 1
            if v not in reach:
                perfect_violations += 1

    expected = {t.encoding: w for t, w in project(q, k).items()}
    deviation = max(
        (
            abs(Fraction(balls.get(enc, 0), n) - expected.get(enc, 0))
            for enc in set(balls) | set(expected)
        ),
        default=Fraction(0),
    )
    report = AuditReport(
        size=n,
        k=k,
        degree=q.params.d,
        graph_girth=girth(graph),
        deficient=dict(deficient),
        bad=bad,
        nonperfect=len(reach),
        bound=nonperfect_bound(q.params, k),
        mistyped=mistyped,
        perfect_violations=perfect_violations,
        cap_violations=cap_violations,
        deviation=deviation,
    )
    LOG.info(
        "audit: %d bad, %d non-perfect of %d, bound %d",
        len(bad),
        report.nonperfect,
        n,
        report.bound,
    )
    return report


# -------------------------------------------------------------------------------------
class StatTable:
    """
    Fraction of vertices whose r-ball has a given type.
    """

    __slots__ = ("radius", "size", "counts")

    def __init__(self, radius: int, size: int, counts: Dict[str, int]) -> None:
        self.radius = radius
        self.size = size
        self.counts = counts

    def probability(self, ball: Union[BallType, str]) -> Fraction:
        enc = ball if isinstance(ball, str) else ball.encoding
        if self.size == 0:
            return Fraction(0)
        return Fraction(self.counts.get(enc, 0), self.size)

    def probabilities(self) -> Dict[str, Fraction]:
        return {enc: self.probability(enc) for enc in self.counts}

    def dump(self) -> str:
        lines = ["stats r=%d n=%d" % (self.radius, self.size)]
        for enc in sorted(self.counts):
            lines.append("stat %s %s" % (enc, format_number(self.probability(enc))))
        return "\n".join(lines) + "\n"


def ball_stats(graph: ColoredGraph, r: int) -> StatTable:
    counts = Counter(extract_ball(graph, v, r).encoding for v in graph.vertices())
    return StatTable(r, len(graph), dict(counts))


def local_dist(
    g: ColoredGraph, h: ColoredGraph, depth: int
) -> Tuple[Fraction, Fraction]:
    """
    Truncated local distance ``sum(2**-r * sup_gap(r) for r in 1..depth)`` and
    its upper bound ``truncated + 2**-depth``.

    :raises ValidationError:
        If the graphs do not share degree bound and color count.
    """
    if (g.params.d, g.params.c) != (h.params.d, h.params.c):
        raise ValidationError(
            "graphs differ in bounds: %r vs %r" % (g.params, h.params)
        )
    if depth < 0:
        raise ValidationError("depth must be >= 0: %d" % depth)
    total = Fraction(0)
    for r in range(1, depth + 1):
        a = ball_stats(g, r).probabilities()
        b = ball_stats(h, r).probabilities()
        gap = max(
            (abs(a.get(enc, 0) - b.get(enc, 0)) for enc in set(a) | set(b)),
            default=Fraction(0),
        )
        total += Fraction(gap) / 2**r
    return total, total + Fraction(1, 2**depth)


def metric_check(
    g: ColoredGraph, h: ColoredGraph, k: ColoredGraph, depth: int
) -> Tuple[bool, bool]:
    """
    Evaluate the triangle inequality and the ultrametric inequality of the
    truncated local distance on three graphs.
    """
    gh, _ = local_dist(g, h, depth)
    hk, _ = local_dist(h, k, depth)
    gk, _ = local_dist(g, k, depth)
    triangle = gk <= gh + hk
    ultra = gk <= max(gh, hk)
    if not ultra:
        LOG.info("ultrametric inequality fails: %s > max(%s, %s)", gk, gh, hk)
    return triangle, ultra


# -------------------------------------------------------------------------------------
class PerturbationReport:
    __slots__ = ("changed", "changed_balls", "bound", "radius")

    def __init__(
        self, changed: Fraction, changed_balls: Fraction, bound: Fraction, radius: int
    ) -> None:
        self.changed = changed
        self.changed_balls = changed_balls
        self.bound = bound
        self.radius = radius

    @property
    def holds(self) -> bool:
        return self.changed == 0 or self.changed_balls < self.bound

    def dump(self) -> str:
        return "changed %s\nchanged_balls %s\nbound %s\nholds %s\n" % (
            format_number(self.changed),
            format_number(self.changed_balls),
            format_number(self.bound),
            "yes" if self.holds else "no",
        )


def perturbation_check(g: ColoredGraph, h: ColoredGraph, r: int) -> PerturbationReport:
    """
    Compare two graphs on the same colored vertex set: the fraction of
    vertices whose labeled 1-ball changed, and the fraction whose r-ball type
    changed, against the bound ``d**r`` times the former.
    """
    if len(g) != len(h):
        raise ValidationError("graphs have %d and %d vertices" % (len(g), len(h)))
    for v in g.vertices():
        if g.color(v) != h.color(v):
            raise ValidationError("vertex %d changes color" % v)
    if r < 1:
        raise ValidationError("radius must be >= 1: %d" % r)
    n = len(g)
    changed = [v for v in g.vertices() if g.neighbors(v) != h.neighbors(v)]
    candidates = set(near(g, changed, r)) | set(near(h, changed, r))
    changed_balls = [
        v
        for v in sorted(candidates)
        if extract_ball(g, v, r).encoding != extract_ball(h, v, r).encoding
    ]
    d = max(g.params.d, h.params.d)
    if n == 0:
        return PerturbationReport(Fraction(0), Fraction(0), Fraction(0), r)
    frac = Fraction(len(changed), n)
    return PerturbationReport(
        frac, Fraction(len(changed_balls), n), d**r * frac, r
    )
