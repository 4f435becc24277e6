# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import argparse
from fractions import Fraction
import logging
import sys
from typing import List, Optional

from .audit import ball_stats, deficiency_audit, local_dist
from .distribution import (
    check_unimodular,
    dump_distribution,
    from_graph,
    parse_distribution,
    project,
)
from .graph import dump_graph, parse_graph
from .interpret import apply_scheme, parse_scheme, pipeline, validate_scheme
from .log import LOG, configure_logging
from .synthesizer import power, rainbow_color, random_high_girth_graph, synthesize
from .tree_types import adm, enumerate_tree_types, parse_tree_type
from .util import Params, ResourceError, SchemeError, ValidationError, format_number


# -------------------------------------------------------------------------------------
def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _comment(text: str) -> str:
    return "".join("# %s\n" % line for line in text.splitlines())


# -------------------------------------------------------------------------------------
def cmd_types_enum(args: argparse.Namespace) -> int:
    types = enumerate_tree_types(Params(args.d, args.c, args.r), cap=args.cap)
    lines = [t.encoding for t in sorted(types)]
    lines.append("# count %d" % len(types))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_types_adm(args: argparse.Namespace) -> int:
    t = parse_tree_type(args.t, Params(args.d, args.c, args.k + 1))
    tau = parse_tree_type(args.tau, Params(args.d, args.c, args.k))
    print(adm(t, tau))
    return 0


def cmd_dist_from_graph(args: argparse.Namespace) -> int:
    q = from_graph(parse_graph(_read(args.graph)), args.k)
    _emit(dump_distribution(q), args.output)
    return 0


def cmd_dist_check(args: argparse.Namespace) -> int:
    report = check_unimodular(parse_distribution(_read(args.dist)))
    sys.stdout.write(report.dump())
    return 0 if report.passed else 1


def cmd_dist_project(args: argparse.Namespace) -> int:
    q = project(parse_distribution(_read(args.dist)), args.level)
    _emit(dump_distribution(q), args.output)
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    q = parse_distribution(_read(args.dist))
    graph, report = synthesize(q, args.n, args.seed, args.epsilon)
    if args.output:
        _emit(dump_graph(graph), args.output)
        sys.stdout.write(report.dump())
    else:
        sys.stdout.write(dump_graph(graph) + _comment(report.dump()))
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    graph = random_high_girth_graph(args.n, args.d, args.girth, args.seed, args.c)
    _emit(_comment("seed %d" % args.seed) + dump_graph(graph), args.output)
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    report = deficiency_audit(
        parse_graph(_read(args.graph)), parse_distribution(_read(args.dist))
    )
    sys.stdout.write(report.dump())
    return 0 if report.passed else 1


def cmd_stats(args: argparse.Namespace) -> int:
    sys.stdout.write(ball_stats(parse_graph(_read(args.graph)), args.r).dump())
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.g))
    h = parse_graph(_read(args.h))
    dist, upper = local_dist(g, h, args.R)
    print("distance %s" % format_number(dist))
    print("upper %s" % format_number(upper))
    return 0


def cmd_power(args: argparse.Namespace) -> int:
    _emit(dump_graph(power(parse_graph(_read(args.graph)), args.k)), args.output)
    return 0


def cmd_rainbow(args: argparse.Namespace) -> int:
    recolored = rainbow_color(parse_graph(_read(args.graph)), args.r)
    _emit(dump_graph(recolored), args.output)
    return 0


def cmd_interp_validate(args: argparse.Namespace) -> int:
    result = validate_scheme(parse_scheme(_read(args.scheme)))
    sys.stdout.write(result.dump())
    return 0 if result.ok else 1


def cmd_interp_apply(args: argparse.Namespace) -> int:
    scheme = parse_scheme(_read(args.scheme))
    _emit(dump_graph(apply_scheme(scheme, parse_graph(_read(args.graph)))), args.output)
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    target = parse_graph(_read(args.target))
    forest = parse_graph(_read(args.forest))
    report = pipeline(target, forest, args.k, args.n, args.seed, epsilon=args.epsilon)
    sys.stdout.write(report.dump())
    return 0 if report.source_exact else 1


# -------------------------------------------------------------------------------------
def _add_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, required=True, help="maximum degree")
    parser.add_argument("--c", type=int, required=True, help="number of colors")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o", "--output", metavar="FILE", help="write the result to FILE"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeable",
        description="Finite high girth graphs with prescribed local statistics.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress to stderr (twice for debug output)",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    types = sub.add_parser("types", help="rooted tree types")
    types_sub = types.add_subparsers(dest="action", metavar="ACTION")
    types_sub.required = True
    p = types_sub.add_parser("enum", help="list every r-type")
    _add_bounds(p)
    p.add_argument("--r", type=int, required=True, help="radius")
    p.add_argument("--cap", type=int, help="refuse larger type spaces")
    _add_output(p)
    p.set_defaults(func=cmd_types_enum)
    p = types_sub.add_parser("adm", help="admissibility of a (k+1)-type and a k-type")
    p.add_argument("t", help="(k+1)-type encoding")
    p.add_argument("tau", help="k-type encoding")
    _add_bounds(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_types_adm)

    dist = sub.add_parser("dist", help="type distributions")
    dist_sub = dist.add_subparsers(dest="action", metavar="ACTION")
    dist_sub.required = True
    p = dist_sub.add_parser("from-graph", help="empirical (k+1)-type distribution")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_dist_from_graph)
    p = dist_sub.add_parser("check", help="unimodularity residuals")
    p.add_argument("dist")
    p.set_defaults(func=cmd_dist_check)
    p = dist_sub.add_parser("project", help="push forward to a smaller radius")
    p.add_argument("dist")
    p.add_argument("--level", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_dist_project)

    p = sub.add_parser("synth", help="synthesize a high girth graph")
    p.add_argument("dist")
    p.add_argument("--n", type=int, required=True, help="requested size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=Fraction, default=None)
    _add_output(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("gen", help="random graph of bounded degree and large girth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--girth", type=int, required=True)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("audit", help="audit a synthesized graph")
    p.add_argument("graph")
    p.add_argument("dist")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("stats", help="r-ball statistics")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("distance", help="truncated local distance")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--R", type=int, required=True, help="truncation depth")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("power", help="graph power")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("rainbow", help="distance 2r proper recoloring")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_rainbow)

    interp = sub.add_parser("interp", help="interpretation schemes")
    interp_sub = interp.add_subparsers(dest="action", metavar="ACTION")
    interp_sub.required = True
    p = interp_sub.add_parser("validate", help="static scheme checks")
    p.add_argument("scheme")
    p.set_defaults(func=cmd_interp_validate)
    p = interp_sub.add_parser("apply", help="apply a scheme to a graph")
    p.add_argument("scheme")
    p.add_argument("graph")
    _add_output(p)
    p.set_defaults(func=cmd_interp_apply)

    p = sub.add_parser("pipeline", help="approximate an interpreted target graph")
    p.add_argument("target")
    p.add_argument("forest")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=Fraction, default=None)
    p.set_defaults(func=cmd_pipeline)

    return parser


# -------------------------------------------------------------------------------------
def dispatch(argv: List[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage or help
        return 0 if not e.code else 1
    if args.verbose:
        level = logging.DEBUG if args.verbose > 1 else logging.INFO
        configure_logging(True, level)
    try:
        return args.func(args)
    except ResourceError as e:
        LOG.debug("resource limit", exc_info=True)
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (ValidationError, SchemeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
