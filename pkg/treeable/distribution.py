# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from collections import Counter, defaultdict
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from .graph import ColoredGraph
from .log import LOG
from .tree_types import (
    RootedTreeType,
    extract_ball,
    neighbor_types,
    parse_tree_type,
    truncate,
)
from .util import (
    ParseError,
    Params,
    ValidationError,
    format_number,
    iter_records,
    parse_fraction,
    parse_header,
)


# -------------------------------------------------------------------------------------
TOLERANCE = 1e-9

Weight = Union[Fraction, float]


def _weight(value) -> Weight:
    if isinstance(value, bool):
        raise ValidationError("invalid weight: %r" % (value,))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise ValidationError("invalid weight: %r" % (value,))


# -------------------------------------------------------------------------------------
class TypeDistribution:
    """
    Finitely supported probability measure on (k+1)-types, where
    ``k = params.r - 1``. Weights are exact fractions, or floats compared
    against ``tolerance``.
    """

    __slots__ = ("params", "weights", "tolerance")

    def __init__(
        self,
        params: Params,
        weights: Mapping[RootedTreeType, Weight],
        tolerance: float = TOLERANCE,
    ) -> None:
        self.params = params
        self.tolerance = tolerance
        self.weights = {}  # type: Dict[RootedTreeType, Weight]
        for t, w in weights.items():
            w = _weight(w)
            if w < 0:
                raise ValidationError("negative weight %s for %s" % (w, t))
            if w == 0:
                continue
            t = parse_tree_type(t.encoding, params)
            if t in self.weights:
                raise ValidationError("duplicate type %s" % t)
            self.weights[t] = w
        total = sum(self.weights.values())
        if self.exact:
            if total != 1:
                raise ValidationError("weights sum to %s, expected 1" % total)
        elif abs(total - 1) > tolerance:
            raise ValidationError("weights sum to %r, expected 1" % total)

    @property
    def k(self) -> int:
        return self.params.r - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(w, Fraction) for w in self.weights.values())

    def support(self) -> List[RootedTreeType]:
        return sorted(self.weights)

    def items(self) -> List[Tuple[RootedTreeType, Weight]]:
        return [(t, self.weights[t]) for t in self.support()]

    def __getitem__(self, t: RootedTreeType) -> Weight:
        return self.weights.get(t, Fraction(0))

    def __iter__(self) -> Iterator[RootedTreeType]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TypeDistribution):
            return NotImplemented
        return self.params == other.params and self.weights == other.weights

    __hash__ = None

    def __repr__(self) -> str:
        return "<TypeDistribution k=%d d=%d c=%d support=%d>" % (
            self.k,
            self.params.d,
            self.params.c,
            len(self),
        )


# -------------------------------------------------------------------------------------
def from_graph(graph: ColoredGraph, k: int) -> TypeDistribution:
    """
    Empirical distribution of (k+1)-types of a graph with no cycle of length
    at most 2k+3.

    :raises ValidationError:
        If the graph is empty or some (k+1)-ball contains a cycle.
    """
    if k < 0:
        raise ValidationError("k must be >= 0: %d" % k)
    n = len(graph)
    if n == 0:
        raise ValidationError("empty graph has no type distribution")
    params = graph.params.with_radius(k + 1)
    counts = Counter()  # type: Counter
    for v in graph.vertices():
        ball = extract_ball(graph, v, k + 1)
        if not ball.is_tree:
            raise ValidationError(
                "the %d-ball of vertex %d contains a cycle" % (k + 1, v)
            )
        counts[ball.encoding] += 1
    LOG.debug("%d distinct %d-types over %d vertices", len(counts), k + 1, n)
    return TypeDistribution(
        params,
        {RootedTreeType(params, enc): Fraction(cnt, n) for enc, cnt in counts.items()},
    )


# -------------------------------------------------------------------------------------
class ResidualReport:
    """
    Flow between k-types: ``flow(a, b)`` is the mass of (k+1)-types with
    truncation ``a`` weighted by how many root neighbors have k-type ``b``.
    The residual of ``(a, b)`` is ``flow(a, b) - flow(b, a)``.
    """

    __slots__ = ("types", "flows", "max_residual", "tolerance")

    def __init__(
        self,
        types: List[RootedTreeType],
        flows: Dict[Tuple[RootedTreeType, RootedTreeType], Weight],
        tolerance: float,
    ) -> None:
        self.types = types
        self.flows = flows
        self.tolerance = tolerance
        self.max_residual = max(
            (abs(self.residual(a, b)) for a in types for b in types),
            default=Fraction(0),
        )

    def flow(self, a: RootedTreeType, b: RootedTreeType) -> Weight:
        return self.flows.get((a, b), Fraction(0))

    def residual(self, a: RootedTreeType, b: RootedTreeType) -> Weight:
        return self.flow(a, b) - self.flow(b, a)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def nonzero(self) -> List[Tuple[RootedTreeType, RootedTreeType, Weight]]:
        out = []
        for a in self.types:
            for b in self.types:
                res = self.residual(a, b)
                if abs(res) > self.tolerance:
                    out.append((a, b, res))
        return out

    def dump(self) -> str:
        lines = [
            "unimodular %s" % ("yes" if self.passed else "no"),
            "max_residual %s" % format_number(self.max_residual),
        ]
        for a, b, res in self.nonzero():
            lines.append("residual %s %s %s" % (a, b, format_number(res)))
        return "\n".join(lines) + "\n"


def _require_k(q: TypeDistribution) -> int:
    if q.k < 0:
        raise ValidationError("distribution over 0-types has no neighbor structure")
    return q.k


def check_unimodular(q: TypeDistribution) -> ResidualReport:
    k = _require_k(q)
    flows = defaultdict(Fraction)  # type: Dict
    types = set()
    for t, w in q.items():
        tau = truncate(t, k)
        types.add(tau)
        for tau2, count in neighbor_types(t, k).items():
            types.add(tau2)
            flows[tau, tau2] += w * count
    tolerance = 0 if q.exact else q.tolerance
    report = ResidualReport(sorted(types), dict(flows), tolerance)
    LOG.debug("max residual %s over %d k-types", report.max_residual, len(types))
    return report


def check_simple_adm(
    q: TypeDistribution,
) -> Tuple[bool, Optional[Tuple[RootedTreeType, RootedTreeType, int]]]:
    """
    Check that no root in the support has two neighbors of the same k-type.
    Returns ``(True, None)`` or ``(False, (t, tau, count))``.
    """
    k = _require_k(q)
    for t in q.support():
        counts = neighbor_types(t, k)
        for tau in sorted(counts):
            if counts[tau] > 1:
                return False, (t, tau, counts[tau])
    return True, None


def project(q: TypeDistribution, level: int) -> TypeDistribution:
    """
    Push-forward of ``q`` along truncation to ``level``.
    """
    if not 0 <= level <= q.params.r:
        raise ValidationError(
            "projection level must be within 0..%d: %d" % (q.params.r, level)
        )
    weights = defaultdict(Fraction)  # type: Dict
    for t, w in q.items():
        weights[truncate(t, level)] += w
    return TypeDistribution(q.params.with_radius(level), weights, q.tolerance)


def mix(q1: TypeDistribution, q2: TypeDistribution, alpha: Weight) -> TypeDistribution:
    """
    Convex combination ``alpha * q1 + (1 - alpha) * q2``.
    """
    if q1.params != q2.params:
        raise ValidationError("cannot mix %r with %r" % (q1.params, q2.params))
    alpha = _weight(alpha)
    if not 0 <= alpha <= 1:
        raise ValidationError("mixing weight must be within [0, 1]: %s" % alpha)
    weights = defaultdict(Fraction)  # type: Dict
    for t, w in q1.items():
        weights[t] += alpha * w
    for t, w in q2.items():
        weights[t] += (1 - alpha) * w
    return TypeDistribution(q1.params, weights, max(q1.tolerance, q2.tolerance))


# -------------------------------------------------------------------------------------
def parse_distribution(text: str) -> TypeDistribution:
    """
    Parse a ``dist d= c= k=`` header followed by ``t <encoding> <weight>``
    lines.
    """
    params = None
    weights = {}  # type: Dict[RootedTreeType, Weight]
    for lineno, line in iter_records(text):
        if params is None:
            header = parse_header(lineno, line, "dist", ["d", "c", "k"])
            try:
                params = Params(header["d"], header["c"], header["k"] + 1)
            except ValidationError as e:
                raise ParseError(lineno, str(e)) from None
            continue
        tokens = line.split()
        if tokens[0] != "t" or len(tokens) != 3:
            raise ParseError(lineno, "expected 't <encoding> <weight>'")
        try:
            t = parse_tree_type(tokens[1], params)
        except ValidationError as e:
            raise ParseError(lineno, str(e)) from None
        if t in weights:
            raise ParseError(lineno, "duplicate type %s" % t)
        weight = parse_fraction(lineno, tokens[2])
        if weight < 0:
            raise ParseError(lineno, "negative weight %s" % tokens[2])
        weights[t] = weight
    if params is None:
        raise ValidationError("missing 'dist' header")
    return TypeDistribution(params, weights)


def dump_distribution(q: TypeDistribution) -> str:
    lines = ["dist d=%d c=%d k=%d" % (q.params.d, q.params.c, q.k)]
    for t, w in q.items():
        lines.append("t %s %s" % (t.encoding, format_number(w)))
    return "\n".join(lines) + "\n"
