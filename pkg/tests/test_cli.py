# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import contextlib
import io
import os
import shutil
import tempfile
import unittest

from treeable import girth, parse_graph
from treeable.cli import build_parser, dispatch


DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA_DIR, name)


# -------------------------------------------------------------------------------------
class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix="treeable-")

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def run_cli(self, *argv):
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = dispatch(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_parser_requires_command(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                build_parser().parse_args([])

    def test_usage_errors(self):
        code, out, err = self.run_cli(
            "types", "enum", "--d", "2", "--c", "1", "--r", "1", "--bogus"
        )
        self.assertEqual((code, out), (1, ""))
        self.assertIn("--bogus", err)
        code, _, err = self.run_cli()
        self.assertEqual(code, 1)
        self.assertIn("usage:", err)
        code, out, _ = self.run_cli("--help")
        self.assertEqual(code, 0)
        self.assertIn("usage:", out)

    def test_types_enum(self):
        code, out, _ = self.run_cli(
            "types", "enum", "--d", "2", "--c", "1", "--r", "1"
        )
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(set(lines[:-1]), {"1[]", "1[1[]]", "1[1[],1[]]"})
        self.assertEqual(lines[-1], "# count 3")

    def test_types_enum_cap(self):
        code, out, err = self.run_cli(
            "types", "enum", "--d", "3", "--c", "3", "--r", "2", "--cap", "10"
        )
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("error: "))

    def test_types_adm(self):
        code, out, _ = self.run_cli(
            "types",
            "adm",
            "1[2[3[]]]",
            "2[1[],3[]]",
            "--d",
            "2",
            "--c",
            "3",
            "--k",
            "1",
        )
        self.assertEqual((code, out), (0, "1\n"))

    def test_dist(self):
        code, out, _ = self.run_cli("dist", "check", data("match.dist"))
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("unimodular yes\n"))
        code, out, _ = self.run_cli("dist", "check", data("bad.dist"))
        self.assertEqual(code, 1)
        self.assertIn("residual 1[] 2[] 1/3\n", out)
        code, out, _ = self.run_cli(
            "dist", "from-graph", data("edge_point.graph"), "--k", "0"
        )
        self.assertEqual(code, 0)
        self.assertEqual(out, "dist d=2 c=1 k=0\nt 1[1[]] 2/3\nt 1[] 1/3\n")
        code, out, _ = self.run_cli(
            "dist", "project", data("match.dist"), "--level", "0"
        )
        self.assertEqual(code, 0)
        self.assertIn("t 1[] 1/2\nt 2[] 1/2\n", out)

    def test_synth_and_audit(self):
        graph = os.path.join(self.tmp, "out.graph")
        code, out, _ = self.run_cli(
            "synth", data("match.dist"), "--n", "10", "--seed", "4", "-o", graph
        )
        self.assertEqual(code, 0)
        self.assertIn("bad 0\n", out)
        with open(graph, encoding="utf-8") as f:
            self.assertEqual(parse_graph(f.read()).num_edges(), 5)
        code, out, _ = self.run_cli("audit", graph, data("match.dist"))
        self.assertEqual(code, 0)
        self.assertIn("passed yes\n", out)

    def test_synth_to_stdout(self):
        code, out, _ = self.run_cli("synth", data("match.dist"), "--n", "4")
        self.assertEqual(code, 0)
        self.assertIn("# bad 0\n", out)
        self.assertEqual(len(parse_graph(out)), 4)

    def test_audit_without_types(self):
        code, _, err = self.run_cli("audit", data("path4.graph"), data("match.dist"))
        self.assertEqual(code, 1)
        self.assertIn("no intended type", err)

    def test_gen(self):
        code, out, _ = self.run_cli(
            "gen", "--n", "30", "--d", "3", "--girth", "5", "--seed", "2"
        )
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("# seed 2\n"))
        self.assertGreaterEqual(girth(parse_graph(out)), 5)

    def test_stats(self):
        code, out, _ = self.run_cli("stats", data("edge_point.graph"), "--r", "1")
        self.assertEqual(code, 0)
        self.assertEqual(out, "stats r=1 n=3\nstat 1[1[]] 2/3\nstat 1[] 1/3\n")

    def test_distance(self):
        g = os.path.join(self.tmp, "g.graph")
        h = os.path.join(self.tmp, "h.graph")
        with open(g, "w", encoding="utf-8") as f:
            f.write("graph d=1 c=2\nv 0 1\n")
        with open(h, "w", encoding="utf-8") as f:
            f.write("graph d=1 c=2\nv 0 2\n")
        code, out, _ = self.run_cli("distance", g, h, "--R", "10")
        self.assertEqual((code, out), (0, "distance 1023/1024\nupper 1/1\n"))

    def test_power_and_rainbow(self):
        code, out, _ = self.run_cli("power", data("path4.graph"), "--k", "2")
        self.assertEqual(code, 0)
        self.assertEqual(parse_graph(out).num_edges(), 5)
        code, out, _ = self.run_cli("rainbow", data("path4.graph"), "--r", "1")
        self.assertEqual(code, 0)
        recolored = parse_graph(out)
        self.assertEqual([recolored.orig_color(v) for v in range(4)], [1, 2, 3, 4])

    def test_interp(self):
        code, out, _ = self.run_cli("interp", "validate", data("chord.scheme"))
        self.assertEqual((code, out), (0, "valid yes\n"))
        code, out, _ = self.run_cli("interp", "validate", data("asymmetric.scheme"))
        self.assertEqual(code, 1)
        self.assertIn("violation symmetry", out)
        code, out, _ = self.run_cli(
            "interp", "apply", data("chord.scheme"), data("path4.graph")
        )
        self.assertEqual(code, 0)
        self.assertEqual(parse_graph(out).edges(), [(0, 1), (0, 3), (1, 2), (2, 3)])

    def test_missing_file(self):
        missing = os.path.join(self.tmp, "nope")
        code, _, err = self.run_cli("stats", missing, "--r", "1")
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error: "))

    def test_pipeline(self):
        target = os.path.join(self.tmp, "target.graph")
        forest = os.path.join(self.tmp, "forest.graph")
        with open(target, "w", encoding="utf-8") as f:
            f.write("graph d=2 c=1\n")
            f.write("".join("v %d 1\n" % v for v in range(8)))
            for i in (0, 4):
                f.write("e %d %d\ne %d %d\n" % (i, i + 1, i + 1, i + 2))
                f.write("e %d %d\ne %d %d\n" % (i + 2, i + 3, i, i + 3))
        with open(forest, "w", encoding="utf-8") as f:
            f.write("graph d=2 c=1\n")
            f.write("".join("v %d 1\n" % v for v in range(8)))
            for i in (0, 4):
                for j in range(3):
                    f.write("e %d %d\n" % (i + j, i + j + 1))
        code, out, _ = self.run_cli(
            "pipeline", target, forest, "--k", "9", "--n", "40", "--n", "80"
        )
        self.assertEqual(code, 0)
        self.assertIn("locality 3\n", out)
        self.assertIn("source_exact yes\n", out)
        self.assertIn("seed 0\n", out)
        self.assertIn("run n=40 size=40 nonperfect=0 distance=0/1 upper=1/2\n", out)
