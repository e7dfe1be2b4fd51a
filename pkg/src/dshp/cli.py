"""Command-line front end: solve, gen, mds, compare, check.

Reports are single-line JSON objects on stdout (pass --pretty for indented
output).  Exit codes: 0 success, 1 check failed, 2 invalid instance or
arguments, 3 algorithm/domain mismatch, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from .approx import gen_tightness, solve_approx
from .exact import ExactOptions, prunable, solve_exact
from .model import (
    DshpError,
    Instance,
    ValueDomainError,
    check_solution,
    format_rational,
    parse_instance,
    parse_rational,
    parse_solution,
    require_valid,
    serialize_instance,
    serialize_solution,
)
from .reduction import (
    GenerationError,
    ReductionParams,
    brute_force_mds,
    build_reduction,
    default_params,
    dominating_solution_revenue,
    extract_dominating,
    gen_regular_graph,
    is_connected,
    is_dominating,
    parse_graph,
    regular_degree,
    serialize_graph,
    window_holds,
)
from .two_value import DegenerateValuesError, detect_two_values, solve_two_value

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DOMAIN_MISMATCH = 3
EXIT_IO = 4

DEFAULT_MAX_N = 24


def _enumeration_cap(max_n_arg) -> int:
    if max_n_arg is not None:
        return max_n_arg
    env = os.environ.get("DSHP_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"DSHP_MAX_N must be an integer, got {env!r}") from None
    return DEFAULT_MAX_N


def _emit(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, indent=2))
    else:
        print(json.dumps(obj, separators=(",", ":")))


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _solution_obj(solution) -> dict:
    return {
        "first_stage": list(solution.first_stage),
        "second_stage": [list(sel) for sel in solution.second_stage],
        "value": format_rational(solution.value),
    }


def gen_random_instance(n: int, m: int, k: int, values: str, seed: int) -> Instance:
    """Seeded random instance whose values come from a random admissible set.

    values "2": two distinct rationals (signs unrestricted); "3": three
    distinct nonnegative rationals; "any": unrestricted per-entry draws.
    For "2"/"3" the instance is regenerated until every set member actually
    appears, so the value-count detectors accept the output.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = random.Random(seed)

    def rand_rational(lo: int, hi: int) -> Fraction:
        den = rng.randint(1, 4)
        return Fraction(rng.randint(lo * den, hi * den), den)

    if values == "2":
        while True:
            pool = sorted({rand_rational(-3, 6) for _ in range(2)})
            if len(pool) == 2:
                break
    elif values == "3":
        while True:
            pool = sorted({rand_rational(0, 6) for _ in range(3)})
            if len(pool) == 3:
                break
    elif values == "any":
        pool = None
    else:
        raise ValueError(f"values must be one of 2, 3, any; got {values!r}")
    if pool is not None and len(pool) > n * (m + 1):
        raise ValueError(
            f"an instance with n={n}, m={m} has only {n * (m + 1)} value slots, "
            f"too few for {len(pool)} distinct values"
        )

    def draw() -> Fraction:
        if pool is None:
            return rand_rational(-6, 9)
        return pool[rng.randrange(len(pool))]

    for _ in range(10000):
        c = tuple(draw() for _ in range(n))
        f = tuple(tuple(draw() for _ in range(m)) for _ in range(n))
        if pool is None:
            break
        present = set(c).union(*f)
        if present == set(pool):
            break
    else:
        raise GenerationError(f"could not realize all {len(pool)} values (seed {seed})")
    while True:
        weights = [rng.randint(0, 8) for _ in range(m)]
        if any(weights):
            break
    total = sum(weights)
    p = tuple(Fraction(w, total) for w in weights)
    label = f"random(n={n},m={m},k={k},values={values},seed={seed})"
    return Instance(n=n, m=m, k=k, c=c, p=p, f=f, label=label)


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    require_valid(instance)
    cap = _enumeration_cap(args.max_n)
    started = time.perf_counter()
    extras: dict = {}
    if args.algo == "exact":
        options = ExactOptions(prune=args.prune, max_n=cap)
        solution = solve_exact(instance, options)
        extras["prune"] = args.prune
        if args.prune:
            extras["pruned_assets"] = len(prunable(instance))
    elif args.algo == "two-value":
        try:
            profile = detect_two_values(instance)
            extras["v_min"] = format_rational(profile.v_min)
            extras["v_max"] = format_rational(profile.v_max)
        except DegenerateValuesError:
            extras["degenerate"] = True
        solution = solve_two_value(instance)
    else:
        solution, report = solve_approx(instance)
        extras["low"] = format_rational(report.profile.low)
        extras["mid"] = format_rational(report.profile.mid)
        extras["high"] = format_rational(report.profile.high)
        extras["high_count"] = report.profile.high_count
        extras["mid_count"] = report.profile.mid_count
        extras["guarantee"] = format_rational(report.guarantee)
        extras["certified_lower_bound"] = format_rational(report.certified_lower_bound)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    if args.solution_out:
        with open(args.solution_out, "w", encoding="utf-8") as handle:
            handle.write(serialize_solution(solution) + "\n")
    _emit(
        {
            "algorithm": args.algo,
            "instance": instance.label,
            "objective": format_rational(solution.value),
            "wall_time_ms": elapsed_ms,
            "solution": _solution_obj(solution),
            "extras": extras,
        },
        args.pretty,
    )
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "random":
        instance = gen_random_instance(args.n, args.m, args.k, args.values, args.seed)
        require_valid(instance)
        print(serialize_instance(instance))
    elif args.kind == "tightness":
        instance = gen_tightness(
            parse_rational(args.vs), parse_rational(args.vm), parse_rational(args.vl)
        )
        print(serialize_instance(instance))
    elif args.kind == "reduction":
        graph = parse_graph(_read(args.graph))
        degree = args.d if args.d is not None else regular_degree(graph)
        if degree is None:
            raise DshpError("graph is not regular; the reduction needs a regular graph")
        if args.B is None and args.S is None:
            params = default_params(graph.n, degree)
        else:
            defaults = default_params(graph.n, degree)
            params = ReductionParams(
                degree=degree,
                discount=parse_rational(args.B) if args.B is not None else defaults.discount,
                premium=parse_rational(args.S) if args.S is not None else defaults.premium,
            )
        instance = build_reduction(graph, params)
        print(serialize_instance(instance))
    else:
        graph = gen_regular_graph(args.n, args.d, args.seed)
        sys.stdout.write(serialize_graph(graph))
    return EXIT_OK


def cmd_mds(args) -> int:
    graph = parse_graph(_read(args.graph))
    dominating = brute_force_mds(graph)
    _emit(
        {"n": graph.n, "edges": len(graph.edges), "mds": list(dominating), "size": len(dominating)},
        args.pretty,
    )
    return EXIT_OK


def cmd_compare(args) -> int:
    instance = parse_instance(_read(args.instance))
    require_valid(instance)
    cap = _enumeration_cap(args.max_n)
    solution, report = solve_approx(instance)
    out = {
        "instance": instance.label,
        "approx_objective": format_rational(solution.value),
        "guarantee_value_ratio": format_rational(report.guarantee),
        "guarantee_budget_ratio": format_rational(
            max(Fraction(1, 2), Fraction(instance.k, instance.n))
        ),
    }
    if instance.n <= cap:
        best = solve_exact(instance, ExactOptions(max_n=cap))
        out["exact_objective"] = format_rational(best.value)
        out["exact_skipped"] = False
        if best.value != 0:
            out["realized_ratio"] = format_rational(solution.value / best.value)
        else:
            out["realized_ratio"] = None
    else:
        out["exact_objective"] = None
        out["exact_skipped"] = True
        out["realized_ratio"] = None
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_check_solution(args) -> int:
    instance = parse_instance(_read(args.instance))
    require_valid(instance)
    solution = parse_solution(_read(args.solution))
    failures = check_solution(instance, solution)
    checks = [
        {"name": "solution", "ok": not failures, "detail": "; ".join(failures) or "ok"}
    ]
    passed = all(entry["ok"] for entry in checks)
    _emit({"checks": checks, "passed": passed}, args.pretty)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def cmd_check_reduction(args) -> int:
    graph = parse_graph(_read(args.graph))
    instance = parse_instance(_read(args.instance))
    require_valid(instance)
    solution = parse_solution(_read(args.solution))
    cap = _enumeration_cap(args.max_n)
    checks: list[dict] = []
    mds_size = None

    def add(name: str, ok: bool, detail: str = "ok") -> bool:
        checks.append({"name": name, "ok": bool(ok), "detail": detail})
        return bool(ok)

    def bail() -> int:
        _emit({"checks": checks, "passed": False, "mds_size": mds_size}, args.pretty)
        return EXIT_CHECK_FAILED

    degree = regular_degree(graph)
    ok = add(
        "graph_regular",
        degree is not None,
        f"degree {degree}" if degree is not None else "vertex degrees differ",
    )
    ok = add("graph_connected", is_connected(graph)) and ok

    params = None
    values = sorted(instance.values())
    if degree is not None and len(values) == 3 and values[1] == 1 and values[0] < 1 < values[2]:
        params = ReductionParams(
            degree=degree, discount=1 - values[0], premium=values[2] - 1
        )
        ok = add("ratio_window", window_holds(graph.n, params)) and ok
    else:
        ok = add(
            "ratio_window",
            False,
            f"cannot infer (B, S): instance values {[str(v) for v in values]} "
            f"are not of the form {{1-B, 1, 1+S}}",
        )
    if not ok:
        return bail()

    rebuilt = build_reduction(graph, params)
    same = (
        rebuilt.n == instance.n
        and rebuilt.m == instance.m
        and rebuilt.k == instance.k
        and rebuilt.c == instance.c
        and rebuilt.p == instance.p
        and rebuilt.f == instance.f
    )
    ok = add(
        "instance_matches_reduction", same, "ok" if same else "instance differs from the construction"
    )

    failures = check_solution(instance, solution)
    ok = add("solution_valid", not failures, "; ".join(failures) or "ok") and ok
    if not ok:
        return bail()

    if instance.n <= cap:
        best = solve_exact(instance, ExactOptions(max_n=cap))
        ok = (
            add(
                "solution_optimal",
                solution.value == best.value,
                f"solution {solution.value}, optimum {best.value}",
            )
            and ok
        )
    else:
        add("solution_optimal", True, f"skipped: n={instance.n} exceeds cap {cap}")

    dominating = extract_dominating(graph, solution)
    ok = (
        add(
            "extracted_set_dominates",
            is_dominating(graph, dominating),
            f"complement of first stage: {list(dominating)}",
        )
        and ok
    )
    minimum = brute_force_mds(graph)
    mds_size = len(minimum)
    ok = (
        add(
            "mds_size_matches",
            len(dominating) == mds_size,
            f"extracted {len(dominating)}, brute force {mds_size}",
        )
        and ok
    )
    formula = dominating_solution_revenue(graph.n, params, len(dominating))
    ok = (
        add(
            "revenue_formula",
            formula == solution.value,
            f"formula {formula}, solution {solution.value}",
        )
        and ok
    )
    _emit({"checks": checks, "passed": ok, "mds_size": mds_size}, args.pretty)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    pretty = argparse.ArgumentParser(add_help=False)
    pretty.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(
        prog="dshp", description="Discrete sell-or-hold problem toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", parents=[pretty], help="solve an instance file")
    p_solve.add_argument("--algo", required=True, choices=["exact", "two-value", "approx"])
    p_solve.add_argument("--instance", required=True, help="instance JSON file")
    p_solve.add_argument(
        "--prune", action="store_true", help="exclude first-stage-dominated assets (exact only)"
    )
    p_solve.add_argument("--max-n", type=int, default=None, help="enumeration cap override")
    p_solve.add_argument("--solution-out", default=None, help="also write the solution to a file")
    p_solve.set_defaults(func=cmd_solve)

    p_gen = sub.add_parser("gen", help="generate instances and graphs")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)

    g_random = gen_sub.add_parser("random", help="random instance")
    g_random.add_argument("--n", type=int, required=True)
    g_random.add_argument("--m", type=int, required=True)
    g_random.add_argument("--k", type=int, required=True)
    g_random.add_argument("--values", choices=["2", "3", "any"], default="any")
    g_random.add_argument("--seed", type=int, default=0)
    g_random.set_defaults(func=cmd_gen)

    g_tight = gen_sub.add_parser("tightness", help="the ratio-tight 4x3 family")
    g_tight.add_argument("--vs", required=True, help="low value (rational)")
    g_tight.add_argument("--vm", required=True, help="mid value (rational)")
    g_tight.add_argument("--vl", required=True, help="high value (rational)")
    g_tight.set_defaults(func=cmd_gen)

    g_red = gen_sub.add_parser("reduction", help="instance from a regular graph")
    g_red.add_argument("--graph", required=True, help="graph file")
    g_red.add_argument("--d", type=int, default=None, help="expected degree (default: inferred)")
    g_red.add_argument("--B", default=None, help="discount below 1 (rational)")
    g_red.add_argument("--S", default=None, help="premium above 1 (rational)")
    g_red.set_defaults(func=cmd_gen)

    g_graph = gen_sub.add_parser("graph", help="random connected regular graph")
    g_graph.add_argument("--n", type=int, required=True)
    g_graph.add_argument("--d", type=int, required=True)
    g_graph.add_argument("--seed", type=int, default=0)
    g_graph.set_defaults(func=cmd_gen)

    p_mds = sub.add_parser("mds", parents=[pretty], help="brute-force minimum dominating set")
    p_mds.add_argument("--graph", required=True)
    p_mds.set_defaults(func=cmd_mds)

    p_cmp = sub.add_parser(
        "compare", parents=[pretty], help="approx vs exact on a three-valued instance"
    )
    p_cmp.add_argument("--instance", required=True)
    p_cmp.add_argument("--max-n", type=int, default=None)
    p_cmp.set_defaults(func=cmd_compare)

    p_check = sub.add_parser("check", help="verify solution or reduction files")
    check_sub = p_check.add_subparsers(dest="what", required=True)

    c_sol = check_sub.add_parser("solution", parents=[pretty], help="structural and value checks")
    c_sol.add_argument("--instance", required=True)
    c_sol.add_argument("--solution", required=True)
    c_sol.set_defaults(func=cmd_check_solution)

    c_red = check_sub.add_parser(
        "reduction", parents=[pretty], help="dominating-set round-trip checks"
    )
    c_red.add_argument("--graph", required=True)
    c_red.add_argument("--instance", required=True)
    c_red.add_argument("--solution", required=True)
    c_red.add_argument("--max-n", type=int, default=None)
    c_red.set_defaults(func=cmd_check_reduction)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_MISMATCH
    except (DshpError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
