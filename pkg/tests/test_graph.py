# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import os
import unittest

from treeable import (
    BallType,
    ColoredGraph,
    Params,
    ParseError,
    ValidationError,
    dump_graph,
    parse_graph,
)


DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def read_data(name):
    with open(os.path.join(DATA_DIR, name), "r", encoding="utf-8") as f:
        return f.read()


# -------------------------------------------------------------------------------------
class ColoredGraphTest(unittest.TestCase):
    def setUp(self):
        self.graph = ColoredGraph(Params(2, 2))
        for color in (1, 2, 1):
            self.graph.add_vertex(color)

    def test_add_edge(self):
        self.graph.add_edge(0, 1)
        self.graph.add_edge(2, 1)
        self.assertEqual(self.graph.edges(), [(0, 1), (1, 2)])
        self.assertEqual(self.graph.neighbors(1), [0, 2])
        self.assertEqual(self.graph.degree(1), 2)
        self.assertEqual(self.graph.max_degree(), 2)
        self.assertTrue(self.graph.has_edge(1, 0))

    def test_invalid_edges(self):
        self.graph.add_edge(0, 1)
        with self.assertRaises(ValidationError):
            self.graph.add_edge(1, 0)
        with self.assertRaises(ValidationError):
            self.graph.add_edge(2, 2)
        with self.assertRaises(ValidationError):
            self.graph.add_edge(2, 5)
        self.graph.add_edge(1, 2)
        self.graph.add_vertex(2)
        with self.assertRaises(ValidationError):
            self.graph.add_edge(1, 3)

    def test_invalid_color(self):
        with self.assertRaises(ValidationError):
            self.graph.add_vertex(3)
        with self.assertRaises(ValidationError):
            self.graph.add_vertex(0)

    def test_remove_edge(self):
        self.graph.add_edge(0, 1)
        self.graph.remove_edge(1, 0)
        self.assertEqual(self.graph.num_edges(), 0)
        with self.assertRaises(ValidationError):
            self.graph.remove_edge(0, 1)

    def test_copy_independent(self):
        self.graph.add_edge(0, 1)
        other = self.graph.copy()
        self.assertEqual(other, self.graph)
        other.remove_edge(0, 1)
        self.assertNotEqual(other, self.graph)
        self.assertEqual(self.graph.num_edges(), 1)

    def test_with_params(self):
        self.graph.add_edge(0, 1)
        self.graph.add_edge(1, 2)
        wider = self.graph.with_params(Params(4, 3))
        self.assertEqual(wider.params, Params(4, 3))
        self.assertEqual(wider.edges(), self.graph.edges())
        with self.assertRaises(ValidationError):
            self.graph.with_params(Params(1, 2))
        with self.assertRaises(ValidationError):
            self.graph.with_params(Params(2, 1))

    def test_from_ball(self):
        ball = BallType(Params(2, 1, 2), "1[1[1[]],1[1[]]]")
        g = ColoredGraph.from_ball(ball)
        self.assertEqual(len(g), 5)
        self.assertEqual(g.num_edges(), 4)
        self.assertEqual(g.degree(0), 2)


# -------------------------------------------------------------------------------------
class GraphFormatTest(unittest.TestCase):
    def test_parse_path(self):
        g = parse_graph(read_data("path4.graph"))
        self.assertEqual(g.params, Params(2, 4))
        self.assertEqual([g.color(v) for v in g.vertices()], [1, 2, 3, 4])
        self.assertEqual(g.edges(), [(0, 1), (1, 2), (2, 3)])

    def test_vertex_fields(self):
        text = """\
graph d=2 c=2
v 0 1 type=1[2[]] marks=leaf,end orig=2
v 1 2
e 0 1
"""
        g = parse_graph(text)
        self.assertEqual(g.intended_type(0).encoding, "1[2[]]")
        self.assertEqual(g.intended_type(0).params.r, 1)
        self.assertEqual(g.marks(0), frozenset({"leaf", "end"}))
        self.assertEqual(g.orig_color(0), 2)
        self.assertIsNone(g.intended_type(1))
        self.assertEqual(parse_graph(dump_graph(g)), g)
        self.assertIn("v 0 1 type=1[2[]] marks=end,leaf orig=2", dump_graph(g))

    def test_dump(self):
        g = parse_graph(read_data("edge_point.graph"))
        self.assertEqual(
            dump_graph(g), "graph d=2 c=1\nv 0 1\nv 1 1\nv 2 1\ne 0 1\n"
        )

    def test_errors(self):
        cases = [
            ("graph d=2 c=1\nv 1 1\n", 2),
            ("graph d=2 c=1\nv 0 2\n", 2),
            ("graph d=1 c=1\nv 0 1\nv 1 1\nv 2 1\ne 0 1\ne 0 2\n", 6),
            ("graph d=2 c=1\nv 0 1\nv 1 1\ne 0 1\ne 1 0\n", 5),
            ("graph d=2 c=1\nv 0 1\nx 0\n", 3),
            ("graph d=2\n", 1),
            ("graph d=0 c=1\n", 1),
            ("graph d=2 c=1\nv 0 1 color=3\n", 2),
            ("graph d=2 c=1\n\n# comment\nv 0 1 type=1[\n", 4),
        ]
        for text, lineno in cases:
            with self.subTest(text=text):
                with self.assertRaises(ParseError) as cm:
                    parse_graph(text)
                self.assertEqual(cm.exception.lineno, lineno)
                self.assertTrue(str(cm.exception).startswith("line %d:" % lineno))

    def test_missing_header(self):
        with self.assertRaises(ValidationError):
            parse_graph("# nothing\n")
