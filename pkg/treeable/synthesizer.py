# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from fractions import Fraction
import math
import random
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from .audit import girth, near, nonperfect_bound
from .distribution import TypeDistribution, Weight, check_simple_adm, check_unimodular
from .graph import ColoredGraph
from .log import LOG
from .tree_types import ENUMERATION_CAP, RootedTreeType, neighbor_types, truncate
from .util import Params, ResourceError, ValidationError, format_number


# -------------------------------------------------------------------------------------
STALL_FACTOR = 4


def threshold_n(params: Params, epsilon: Weight, cap: Optional[int] = None) -> float:
    """
    Graph size above which at most an ``epsilon`` fraction of vertices can be
    non-perfect after synthesis of a distribution over (k+1)-types, with
    ``k = params.r``.

    :raises ResourceError:
        If a type space count exceeds ``cap``.
    """
    if epsilon <= 0:
        raise ValidationError("epsilon must be > 0: %s" % epsilon)
    cap = ENUMERATION_CAP if cap is None else cap
    return nonperfect_bound(params, params.r, cap) / epsilon


def threshold_epsilon(params: Params, n: int) -> Fraction:
    """
    Smallest epsilon whose threshold does not exceed ``n``.
    """
    if n < 1:
        raise ValidationError("n must be >= 1: %d" % n)
    return Fraction(nonperfect_bound(params, params.r), n)


# -------------------------------------------------------------------------------------
class _Pool:
    """
    Set of vertices with O(1) insertion, removal and uniform sampling.
    """

    __slots__ = ("items", "index")

    def __init__(self) -> None:
        self.items = []  # type: List[int]
        self.index = {}  # type: Dict[int, int]

    def add(self, x: int) -> None:
        if x not in self.index:
            self.index[x] = len(self.items)
            self.items.append(x)

    def discard(self, x: int) -> None:
        i = self.index.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if last != x:
            self.items[i] = last
            self.index[last] = i

    def choice(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]

    def __contains__(self, x: int) -> bool:
        return x in self.index

    def __len__(self) -> int:
        return len(self.items)


# -------------------------------------------------------------------------------------
class EdgeBuilder:
    """
    Greedy edge insertion on a fixed vertex set. Vertex ``x`` belongs to class
    ``sigma[x]`` and may take ``caps[x][s]`` more neighbors of class ``s``. An
    edge is only added between vertices at distance at least
    ``min_distance``, so every cycle it closes is at least that long plus one.
    """

    def __init__(
        self,
        graph: ColoredGraph,
        sigma: Sequence[Hashable],
        caps: Sequence[Dict[Hashable, int]],
        min_distance: int,
        rng: random.Random,
    ) -> None:
        self.graph = graph
        self.sigma = sigma
        self.caps = caps
        self.cutoff = min_distance - 1
        self.rng = rng
        self.pools = {}  # type: Dict[Tuple[Hashable, Hashable], _Pool]
        self.random_edges = 0
        self.sweep_edges = 0
        self.sweeps = 0
        for x in graph.vertices():
            for s, cnt in caps[x].items():
                if cnt > 0:
                    self.pool(sigma[x], s).add(x)
        self.keys = sorted(self.pools)

    def pool(self, a: Hashable, b: Hashable) -> _Pool:
        key = (a, b)
        if key not in self.pools:
            self.pools[key] = _Pool()
        return self.pools[key]

    def _near(self, x: int) -> Dict[int, int]:
        return nx.single_source_shortest_path_length(
            self.graph.graph, x, cutoff=self.cutoff
        )

    def legal(self, x: int, y: int) -> bool:
        if x == y:
            return False
        if self.caps[x].get(self.sigma[y], 0) <= 0:
            return False
        if self.caps[y].get(self.sigma[x], 0) <= 0:
            return False
        return y not in self._near(x)

    def connect(self, x: int, y: int) -> None:
        self.graph.add_edge(x, y)
        for a, b in ((x, y), (y, x)):
            s = self.sigma[b]
            self.caps[a][s] -= 1
            if self.caps[a][s] == 0:
                self.pools[self.sigma[a], s].discard(a)

    def _live(self) -> List[Tuple[Hashable, Hashable]]:
        return [
            key
            for key in self.keys
            if self.pools[key] and self.pools.get((key[1], key[0]))
        ]

    def random_phase(self) -> None:
        """
        Insert edges between random compatible vertices until a run of
        consecutive failures exceeds the stall limit.
        """
        live = self._live()
        failures = 0
        while live:
            limit = STALL_FACTOR * sum(len(self.pools[key]) for key in live)
            if failures > limit:
                break
            a, b = self.rng.choice(live)
            x = self.pools[a, b].choice(self.rng)
            y = self.pools[b, a].choice(self.rng)
            if self.legal(x, y):
                self.connect(x, y)
                self.random_edges += 1
                failures = 0
                live = self._live()
            else:
                failures += 1
        LOG.debug("random phase added %d edges", self.random_edges)

    def sweep(self) -> int:
        """
        Try every remaining compatible pair once. Returns the number of edges
        added.
        """
        added = 0
        for a, b in self.keys:
            partners = self.pools.get((b, a))
            if not partners:
                continue
            mine = self.pools[a, b]
            for x in sorted(mine.items):
                if x not in mine:
                    continue
                reach = self._near(x)
                for y in sorted(partners.items):
                    if x not in mine:
                        break
                    if y == x or y not in partners or y in reach:
                        continue
                    self.connect(x, y)
                    added += 1
                    reach = self._near(x)
        self.sweep_edges += added
        return added

    def saturate(self) -> None:
        self.random_phase()
        while True:
            self.sweeps += 1
            if self.sweep() == 0:
                break
        LOG.debug("%d sweeps added %d edges", self.sweeps, self.sweep_edges)

    def bad(self) -> List[int]:
        return [
            x
            for x in self.graph.vertices()
            if any(v > 0 for v in self.caps[x].values())
        ]


# -------------------------------------------------------------------------------------
def class_size(weight: Weight, n: int) -> int:
    if isinstance(weight, Fraction):
        return math.ceil(weight * n)
    return math.ceil(round(weight * n, 9))


class SynthesisReport:
    """
    Outcome of :func:`synthesize`. ``deficient`` maps a pair of k-types
    ``(tau, tau2)`` to the number of vertices of k-type ``tau`` still missing
    a neighbor of k-type ``tau2``.
    """

    __slots__ = (
        "n",
        "size",
        "k",
        "seed",
        "girth",
        "target_girth",
        "epsilon",
        "threshold",
        "classes",
        "deficient",
        "bad",
        "nonperfect",
        "bound",
        "random_edges",
        "sweep_edges",
        "sweeps",
    )

    def __init__(self, **fields: Any) -> None:
        for name in self.__slots__:
            setattr(self, name, fields[name])

    @property
    def perfect(self) -> int:
        return self.size - self.nonperfect

    @property
    def edges(self) -> int:
        return self.random_edges + self.sweep_edges

    def dump(self) -> str:
        lines = [
            "n %d" % self.n,
            "size %d" % self.size,
            "k %d" % self.k,
            "seed %s" % self.seed,
            "girth %s" % self.girth,
            "target_girth %d" % self.target_girth,
            "edges %d" % self.edges,
            "sweeps %d" % self.sweeps,
            "bad %d" % len(self.bad),
            "perfect %d" % self.perfect,
            "nonperfect %d" % self.nonperfect,
            "bound %d" % self.bound,
        ]
        if self.epsilon is not None:
            lines.append("epsilon %s" % format_number(self.epsilon))
        if self.threshold is not None:
            lines.append("threshold %s" % format_number(self.threshold))
        for t, size in sorted(self.classes.items()):
            lines.append("class %s %d" % (t, size))
        for (tau, tau2), count in sorted(self.deficient.items()):
            lines.append("deficient %s %s %d" % (tau, tau2, count))
        return "\n".join(lines) + "\n"


def synthesize(
    q: TypeDistribution,
    n: int,
    seed: Any = 0,
    epsilon: Optional[Weight] = None,
) -> Tuple[ColoredGraph, SynthesisReport]:
    """
    Build a graph of at least ``n`` vertices with girth at least ``2k+4`` in
    which the (k+1)-type of most vertices follows ``q``.

    Every vertex gets an intended type ``t`` with class sizes ``ceil(n*q(t))``
    and may receive at most ``adm(t, tau)`` neighbors of k-type ``tau``. Edges
    are added until no further one fits.

    :arg q:
        Unimodular distribution whose support has simple admissibility.
    :arg n:
        Requested size.
    :arg seed:
        Anything accepted by :func:`networkx.utils.create_py_random_state`.
    :arg epsilon:
        If given, the report carries the size threshold for this epsilon and
        a warning is logged when ``n`` is below it.

    :raises ValidationError:
        If a precondition on ``q`` or ``n`` fails.
    """
    if n < 1:
        raise ValidationError("n must be >= 1: %d" % n)
    residuals = check_unimodular(q)
    if not residuals.passed:
        raise ValidationError(
            "distribution is not unimodular, max residual %s"
            % format_number(residuals.max_residual)
        )
    simple, witness = check_simple_adm(q)
    if not simple:
        raise ValidationError(
            "type %s has %d neighbors of type %s" % (witness[0], witness[2], witness[1])
        )
    k = q.k
    rng = nx.utils.create_py_random_state(seed)
    graph = ColoredGraph(Params(q.params.d, q.params.c))
    sigma = []  # type: List[RootedTreeType]
    caps = []  # type: List[Dict[RootedTreeType, int]]
    classes = {}  # type: Dict[RootedTreeType, int]
    for t, w in q.items():
        size = class_size(w, n)
        classes[t] = size
        tau = truncate(t, k)
        wanted = neighbor_types(t, k)
        for _ in range(size):
            graph.add_vertex(t.color, intended_type=t)
            sigma.append(tau)
            caps.append(dict(wanted))
    LOG.info("synthesizing %d vertices over %d types, k=%d", len(graph), len(q), k)

    builder = EdgeBuilder(graph, sigma, caps, 2 * k + 3, rng)
    builder.saturate()

    deficient = {
        key: len(pool) for key, pool in builder.pools.items() if len(pool) > 0
    }
    bad = builder.bad()
    nonperfect = len(near(graph, bad, k))
    bound = nonperfect_bound(q.params, k)
    threshold = None
    if epsilon is not None:
        try:
            threshold = threshold_n(q.params.with_radius(k), epsilon)
        except ResourceError as e:
            LOG.warning("threshold unavailable: %s", e)
        else:
            if n < threshold:
                LOG.warning(
                    "n=%d is below the size threshold %s for epsilon=%s",
                    n,
                    format_number(threshold),
                    format_number(epsilon),
                )
    report = SynthesisReport(
        n=n,
        size=len(graph),
        k=k,
        seed=seed,
        girth=girth(graph),
        target_girth=2 * k + 4,
        epsilon=epsilon,
        threshold=threshold,
        classes=classes,
        deficient=deficient,
        bad=bad,
        nonperfect=nonperfect,
        bound=bound,
        random_edges=builder.random_edges,
        sweep_edges=builder.sweep_edges,
        sweeps=builder.sweeps,
    )
    LOG.info(
        "synthesized %d vertices, %d edges, %d non-perfect",
        report.size,
        report.edges,
        nonperfect,
    )
    return graph, report


def synthesize_sequence(
    q: TypeDistribution, sizes: Sequence[int], seed: Any = 0
) -> List[Tuple[ColoredGraph, SynthesisReport]]:
    return [synthesize(q, n, seed) for n in sizes]


# -------------------------------------------------------------------------------------
def random_high_girth_graph(
    n: int, d: int, min_girth: int, seed: Any = 0, c: int = 1
) -> ColoredGraph:
    """
    Random graph of maximum degree ``d`` and girth at least ``min_girth``,
    built by inserting edges between random far apart vertices until no
    further edge fits. Colors are drawn uniformly from ``1..c``.
    """
    if n < 0:
        raise ValidationError("n must be >= 0: %d" % n)
    if min_girth < 3:
        raise ValidationError("girth must be >= 3: %d" % min_girth)
    rng = nx.utils.create_py_random_state(seed)
    graph = ColoredGraph(Params(d, c))
    for _ in range(n):
        graph.add_vertex(rng.randint(1, c))
    caps = [{0: d} for _ in range(n)]
    builder = EdgeBuilder(graph, [0] * n, caps, min_girth - 1, rng)
    builder.saturate()
    LOG.info("random graph: %d vertices, %d edges", n, graph.num_edges())
    return graph


# -------------------------------------------------------------------------------------
def _by_index(graph: nx.Graph, colors: Dict) -> List[int]:
    # pylint: disable=unused-argument
    return sorted(graph)


def rainbow_color(graph: ColoredGraph, r: int) -> ColoredGraph:
    """
    Recolor so that vertices at distance at most ``2r`` get distinct colors,
    with at most ``max_degree(G**2r) + 1`` colors. Former colors move to the
    ``orig`` attribute.
    """
    if r < 0:
        raise ValidationError("radius must be >= 0: %d" % r)
    if len(graph) == 0:
        return ColoredGraph(Params(graph.params.d, 1))
    if r == 0:
        coloring = {v: 0 for v in graph.vertices()}
    else:
        coloring = nx.greedy_color(nx.power(graph.graph, 2 * r), strategy=_by_index)
    out = ColoredGraph(Params(graph.params.d, max(coloring.values()) + 1))
    for v in graph.vertices():
        out.add_vertex(
            coloring[v] + 1,
            intended_type=graph.intended_type(v),
            marks=graph.marks(v),
            orig_color=graph.color(v),
        )
    for u, v in graph.edges():
        out.add_edge(u, v)
    LOG.debug("rainbow coloring at radius %d uses %d colors", r, out.params.c)
    return out


def power(graph: ColoredGraph, k: int) -> ColoredGraph:
    """
    Graph on the same vertices joining vertices at distance 1..k.
    """
    if k < 1:
        raise ValidationError("power must be >= 1: %d" % k)
    if k == 1:
        return graph.copy()
    joined = nx.power(graph.graph, k)
    degree = max((deg for _, deg in joined.degree()), default=0)
    out = ColoredGraph(Params(max(1, degree), graph.params.c))
    for v in graph.vertices():
        out.add_vertex(
            graph.color(v),
            intended_type=graph.intended_type(v),
            marks=graph.marks(v),
            orig_color=graph.orig_color(v),
        )
    for u, v in joined.edges():
        out.add_edge(u, v)
    return out
