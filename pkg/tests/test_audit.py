# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from fractions import Fraction
import math
import os
import unittest

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from treeable import (
    ColoredGraph,
    Params,
    RootedTreeType,
    ValidationError,
    ball_stats,
    deficiency_audit,
    girth,
    local_dist,
    metric_check,
    nonperfect_bound,
    parse_distribution,
    parse_graph,
    perturbation_check,
    random_high_girth_graph,
    synthesize,
)


DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

PROPERTY_SETTINGS = settings(
    max_examples=15,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def read_data(name):
    with open(os.path.join(DATA_DIR, name), "r", encoding="utf-8") as f:
        return f.read()


def cycle(n):
    g = ColoredGraph(Params(2, 1))
    for _ in range(n):
        g.add_vertex(1)
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
    return g


def single(color):
    g = ColoredGraph(Params(1, 2))
    g.add_vertex(color)
    return g


# -------------------------------------------------------------------------------------
class GirthTest(unittest.TestCase):
    def test_cycles(self):
        for n in (3, 4, 7, 12):
            self.assertEqual(girth(cycle(n)), n)

    def test_forest(self):
        self.assertEqual(girth(parse_graph(read_data("path4.graph"))), math.inf)
        self.assertEqual(girth(ColoredGraph(Params(1, 1))), math.inf)

    def test_two_cycles(self):
        g = ColoredGraph(Params(3, 1))
        for _ in range(9):
            g.add_vertex(1)
        for i in range(4):
            g.add_edge(i, (i + 1) % 4)
        for i in range(5):
            g.add_edge(4 + i, 4 + (i + 1) % 5)
        self.assertEqual(girth(g), 4)
        g.add_edge(0, 6)
        self.assertEqual(girth(g), 4)


# -------------------------------------------------------------------------------------
class DeficiencyAuditTest(unittest.TestCase):
    def setUp(self):
        self.q = parse_distribution(read_data("match.dist"))

    def test_bound(self):
        self.assertEqual(nonperfect_bound(Params(2, 2, 1), 0), 80)

    def test_perfect(self):
        graph, _ = synthesize(self.q, 10, seed=1)
        report = deficiency_audit(graph, self.q)
        self.assertEqual(report.size, 10)
        self.assertEqual(report.bad, [])
        self.assertEqual(report.nonperfect, 0)
        self.assertEqual(report.mistyped, 0)
        self.assertEqual(report.deviation, 0)
        self.assertEqual(report.girth, math.inf)
        self.assertTrue(report.passed)
        self.assertIn("passed yes\n", report.dump())

    def test_deleted_edge(self):
        graph, _ = synthesize(self.q, 10, seed=1)
        u, v = graph.edges()[0]
        graph.remove_edge(u, v)
        report = deficiency_audit(graph, self.q)
        self.assertEqual(sorted(report.bad), sorted([u, v]))
        self.assertEqual(report.nonperfect, 2)
        self.assertEqual(report.perfect, 8)
        self.assertEqual(report.bound, 80)
        self.assertEqual(report.mistyped, 0)
        self.assertEqual(report.perfect_violations, 0)
        keys = {(a.encoding, b.encoding): n for (a, b), n in report.deficient.items()}
        self.assertEqual(keys, {("1[]", "2[]"): 1, ("2[]", "1[]"): 1})
        self.assertTrue(report.passed)

    def test_cap_violation(self):
        params = Params(2, 2, 1)
        t = RootedTreeType(params, "1[2[]]")
        s = RootedTreeType(params, "2[1[]]")
        g = ColoredGraph(Params(2, 2))
        g.add_vertex(1, intended_type=t)
        g.add_vertex(2, intended_type=s)
        g.add_vertex(2, intended_type=s)
        g.add_vertex(1, intended_type=t)
        g.add_edge(0, 1)
        g.add_edge(0, 2)
        report = deficiency_audit(g, self.q)
        self.assertEqual(report.cap_violations, 1)
        self.assertEqual(report.bad, [3])
        self.assertFalse(report.passed)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            deficiency_audit(ColoredGraph(Params(2, 2)), self.q)
        with self.assertRaises(ValidationError):
            deficiency_audit(parse_graph(read_data("path4.graph")), self.q)
        g = ColoredGraph(Params(2, 2))
        g.add_vertex(1, intended_type=RootedTreeType(Params(2, 2, 1), "1[1[]]"))
        with self.assertRaises(ValidationError):
            deficiency_audit(g, self.q)


# -------------------------------------------------------------------------------------
class LocalDistanceTest(unittest.TestCase):
    def test_stats(self):
        table = ball_stats(parse_graph(read_data("edge_point.graph")), 1)
        self.assertEqual(table.probability("1[1[]]"), Fraction(2, 3))
        self.assertEqual(table.probability("1[]"), Fraction(1, 3))
        self.assertEqual(table.probability("1[1[],1[]]"), 0)
        self.assertEqual(
            table.dump(), "stats r=1 n=3\nstat 1[1[]] 2/3\nstat 1[] 1/3\n"
        )

    def test_single_vertices(self):
        dist, upper = local_dist(single(1), single(2), 10)
        self.assertEqual(dist, 1 - Fraction(1, 2**10))
        self.assertEqual(upper, 1)

    def test_identical(self):
        g = cycle(6)
        dist, upper = local_dist(g, cycle(6), 5)
        self.assertEqual(dist, 0)
        self.assertEqual(upper, Fraction(1, 32))

    def test_cycle_lengths(self):
        # cycles look alike below half their length
        dist, _ = local_dist(cycle(8), cycle(10), 3)
        self.assertEqual(dist, 0)
        dist, _ = local_dist(cycle(8), cycle(10), 4)
        self.assertEqual(dist, Fraction(1, 16))

    def test_mismatched_bounds(self):
        with self.assertRaises(ValidationError):
            local_dist(single(1), cycle(3), 2)

    @PROPERTY_SETTINGS
    @given(seeds=st.lists(st.integers(0, 10**6), min_size=3, max_size=3))
    def test_triangle(self, seeds):
        g, h, k = (random_high_girth_graph(12, 2, 3, seed=s, c=2) for s in seeds)
        triangle, _ = metric_check(g, h, k, 3)
        self.assertTrue(triangle)
        self.assertEqual(local_dist(g, h, 3), local_dist(h, g, 3))


# -------------------------------------------------------------------------------------
class PerturbationTest(unittest.TestCase):
    def test_cycle_edge(self):
        g = cycle(100)
        h = g.copy()
        h.remove_edge(99, 0)
        report = perturbation_check(g, h, 2)
        self.assertEqual(report.changed, Fraction(2, 100))
        self.assertEqual(report.changed_balls, Fraction(4, 100))
        self.assertEqual(report.bound, Fraction(8, 100))
        self.assertTrue(report.holds)
        self.assertIn("holds yes\n", report.dump())

    def test_unchanged(self):
        report = perturbation_check(cycle(10), cycle(10), 3)
        self.assertEqual(report.changed, 0)
        self.assertEqual(report.changed_balls, 0)
        self.assertTrue(report.holds)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            perturbation_check(cycle(5), cycle(6), 1)
        with self.assertRaises(ValidationError):
            perturbation_check(cycle(5), cycle(5), 0)
        recolored = ColoredGraph(Params(2, 2))
        for color in (2, 1, 1, 1, 1):
            recolored.add_vertex(color)
        with self.assertRaises(ValidationError):
            perturbation_check(cycle(5), recolored, 1)

    @settings(PROPERTY_SETTINGS, max_examples=200)
    @given(
        seed=st.integers(0, 10**6),
        r=st.integers(min_value=1, max_value=3),
        add=st.booleans(),
        data=st.data(),
    )
    def test_single_toggle(self, seed, r, add, data):
        g = random_high_girth_graph(40, 3, 8, seed=seed)
        free = [v for v in g.vertices() if g.degree(v) < g.params.d]
        missing = [
            (u, v) for u in free for v in free if u < v and not g.has_edge(u, v)
        ]
        h = g.copy()
        if add and missing:
            u, v = data.draw(st.sampled_from(missing))
            h.add_edge(u, v)
        else:
            u, v = data.draw(st.sampled_from(g.edges()))
            h.remove_edge(u, v)
        report = perturbation_check(g, h, r)
        self.assertEqual(report.changed, Fraction(2, 40))
        self.assertTrue(report.holds)
        self.assertLess(report.changed_balls, report.bound)
