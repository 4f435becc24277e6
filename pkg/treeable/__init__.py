# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT


from .audit import (
    AuditReport,
    PerturbationReport,
    StatTable,
    ball_stats,
    deficiency_audit,
    girth,
    local_dist,
    metric_check,
    nonperfect_bound,
    perturbation_check,
)
from .distribution import (
    ResidualReport,
    TypeDistribution,
    check_simple_adm,
    check_unimodular,
    dump_distribution,
    from_graph,
    mix,
    parse_distribution,
    project,
)
from .graph import ColoredGraph, dump_graph, parse_graph
from .interpret import (
    ColorRule,
    Composite,
    InterpretationScheme,
    PipelineReport,
    PipelineRun,
    TypePairFamily,
    ValidationResult,
    apply_scheme,
    color_rule_scheme,
    dump_scheme,
    interpret,
    parse_scheme,
    pipeline,
    validate_scheme,
)
from .log import configure_logging
from .synthesizer import (
    SynthesisReport,
    power,
    rainbow_color,
    random_high_girth_graph,
    synthesize,
    synthesize_sequence,
    threshold_epsilon,
    threshold_n,
)
from .tree_types import (
    BallType,
    RootedTreeType,
    adm,
    canonical_ball,
    canonical_tree,
    count_tree_types,
    enumerate_tree_types,
    extract_ball,
    neighbor_types,
    parse_tree_type,
    truncate,
)
from .util import (
    Params,
    ParseError,
    ResourceError,
    SchemeError,
    TreeableError,
    ValidationError,
)


__all__ = (
    "AuditReport",
    "BallType",
    "ColorRule",
    "ColoredGraph",
    "Composite",
    "InterpretationScheme",
    "Params",
    "ParseError",
    "PerturbationReport",
    "PipelineReport",
    "PipelineRun",
    "ResidualReport",
    "ResourceError",
    "RootedTreeType",
    "SchemeError",
    "StatTable",
    "SynthesisReport",
    "TreeableError",
    "TypeDistribution",
    "TypePairFamily",
    "ValidationError",
    "ValidationResult",
    "adm",
    "apply_scheme",
    "ball_stats",
    "canonical_ball",
    "canonical_tree",
    "check_simple_adm",
    "check_unimodular",
    "color_rule_scheme",
    "configure_logging",
    "count_tree_types",
    "deficiency_audit",
    "dump_distribution",
    "dump_graph",
    "dump_scheme",
    "enumerate_tree_types",
    "extract_ball",
    "from_graph",
    "girth",
    "interpret",
    "local_dist",
    "metric_check",
    "mix",
    "neighbor_types",
    "nonperfect_bound",
    "parse_distribution",
    "parse_graph",
    "parse_scheme",
    "parse_tree_type",
    "perturbation_check",
    "pipeline",
    "power",
    "project",
    "rainbow_color",
    "random_high_girth_graph",
    "synthesize",
    "synthesize_sequence",
    "threshold_epsilon",
    "threshold_n",
    "truncate",
    "validate_scheme",
)
