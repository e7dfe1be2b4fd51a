"""Toolkit for the two-stage discrete sell-or-hold problem.

Exact enumeration solver, the linear-time two-value algorithm, the
three-value heuristic with its mid/high worst-case guarantee, and the
dominating-set reduction machinery, all over exact rational arithmetic.
"""

from .approx import (
    ApproxReport,
    ThreeValueProfile,
    detect_three_values,
    gen_tightness,
    solve_approx,
)
from .exact import EnumerationCapError, ExactOptions, prunable, solve_exact
from .model import (
    DegenerateValuesError,
    DshpError,
    Instance,
    InstanceError,
    ParseError,
    Solution,
    SolutionError,
    ValueDomainError,
    as_rational,
    check_solution,
    complete_first_stage,
    evaluate,
    format_rational,
    parse_instance,
    parse_rational,
    parse_solution,
    second_stage_greedy,
    serialize_instance,
    serialize_solution,
    require_valid,
    validate,
)
from .reduction import (
    GenerationError,
    Graph,
    GraphError,
    ReductionError,
    ReductionParams,
    brute_force_mds,
    build_reduction,
    default_params,
    dominating_plan,
    dominating_solution_revenue,
    extract_dominating,
    gen_regular_graph,
    is_connected,
    is_dominating,
    parse_graph,
    regular_degree,
    serialize_graph,
    window_bounds,
    window_holds,
)
from .two_value import (
    TwoValueProfile,
    VisitCounter,
    detect_two_values,
    solve_two_value,
)

__all__ = [
    "ApproxReport",
    "DegenerateValuesError",
    "DshpError",
    "EnumerationCapError",
    "ExactOptions",
    "GenerationError",
    "Graph",
    "GraphError",
    "Instance",
    "InstanceError",
    "ParseError",
    "ReductionError",
    "ReductionParams",
    "Solution",
    "SolutionError",
    "ThreeValueProfile",
    "TwoValueProfile",
    "ValueDomainError",
    "VisitCounter",
    "as_rational",
    "brute_force_mds",
    "build_reduction",
    "check_solution",
    "complete_first_stage",
    "default_params",
    "detect_three_values",
    "detect_two_values",
    "dominating_plan",
    "dominating_solution_revenue",
    "evaluate",
    "extract_dominating",
    "format_rational",
    "gen_regular_graph",
    "gen_tightness",
    "is_connected",
    "is_dominating",
    "parse_graph",
    "parse_instance",
    "parse_rational",
    "parse_solution",
    "prunable",
    "regular_degree",
    "require_valid",
    "second_stage_greedy",
    "serialize_graph",
    "serialize_instance",
    "serialize_solution",
    "solve_approx",
    "solve_exact",
    "solve_two_value",
    "validate",
    "window_bounds",
    "window_holds",
]
