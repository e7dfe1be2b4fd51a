"""Instance/solution model: validation, greedy completion, evaluation, formats."""

import random
from fractions import Fraction

import pytest

from dshp import (
    Instance,
    ParseError,
    Solution,
    SolutionError,
    as_rational,
    check_solution,
    complete_first_stage,
    default_params,
    dominating_plan,
    build_reduction,
    evaluate,
    gen_tightness,
    parse_instance,
    parse_rational,
    parse_solution,
    second_stage_greedy,
    serialize_instance,
    serialize_solution,
    validate,
)
from dshp.cli import gen_random_instance

from conftest import brute_force_second_stage, octahedron


def test_validate_budget_exceeds_assets():
    inst = Instance(n=2, m=1, k=3, c=(1, 1), p=(1,), f=((1,), (1,)))
    assert any("k > n" in v for v in validate(inst))


def test_validate_probability_simplex():
    inst = Instance(
        n=1, m=2, k=1, c=(1,), p=(Fraction(1, 2), Fraction(1, 3)), f=((1, 1),)
    )
    violations = validate(inst)
    assert any("5/6" in v for v in violations)


def test_validate_negative_probability_and_shape():
    inst = Instance(n=2, m=2, k=1, c=(1,), p=(Fraction(3, 2), Fraction(-1, 2)), f=((1, 1),))
    violations = validate(inst)
    assert any("p[1]" in v for v in violations)
    assert any("c has 1 entries" in v for v in violations)
    assert any("f has 1 rows" in v for v in violations)


def test_validate_generator_output_is_ok(tightness_012):
    assert validate(tightness_012) == []
    for seed in range(5):
        inst = gen_random_instance(5, 3, 2, "any", seed)
        assert validate(inst) == []


def test_greedy_no_budget_left(tightness_012):
    inst = gen_tightness(0, 1, 2)
    selections, revenue = second_stage_greedy(inst, {1})  # |F| == k == 1
    assert selections == ((), (), ())
    assert revenue == 0


def test_greedy_tightness_sells_high_asset_per_scenario(tightness_012):
    selections, revenue = second_stage_greedy(tightness_012, set())
    assert selections == ((0,), (2,), (3,))
    assert revenue == 2


def test_greedy_budget_violation():
    inst = gen_tightness(0, 1, 2)
    with pytest.raises(SolutionError):
        second_stage_greedy(inst, {0, 1})


def test_greedy_matches_brute_force_on_random_instances():
    rng = random.Random(41)
    for _ in range(30):
        inst = gen_random_instance(5, 3, rng.randint(0, 5), "any", rng.randrange(10**6))
        size = rng.randint(0, inst.k)
        first = set(rng.sample(range(inst.n), size))
        _, revenue = second_stage_greedy(inst, first)
        assert revenue == brute_force_second_stage(inst, first)


def test_evaluate_empty_solution_zero_budget():
    inst = Instance(n=2, m=2, k=0, c=(1, 2), p=(Fraction(1, 2), Fraction(1, 2)), f=((1, 1), (2, 2)))
    sol = Solution((), ((), ()), Fraction(0))
    assert evaluate(inst, sol) == 0


def test_evaluate_tightness_mid_asset(tightness_012):
    sol = Solution((1,), ((), (), ()), Fraction(1))
    assert evaluate(tightness_012, sol) == 1


def test_evaluate_octahedron_dominating_plan_value():
    graph = octahedron()
    inst = build_reduction(graph, default_params(6, 4))
    plan = dominating_plan(inst, {0, 3})
    assert evaluate(inst, plan) == Fraction(21, 4)


def test_evaluate_names_violated_constraints(tightness_012):
    wide = Instance(
        n=4, m=2, k=2, c=(0, 1, 0, 0), p=(Fraction(1, 2),) * 2,
        f=((2, 0), (0, 0), (0, 2), (1, 1)),
    )
    overlapping = Solution((1,), ((1,), (2,)), Fraction(1))
    with pytest.raises(SolutionError, match="x_i \\+ y_ij <= 1"):
        evaluate(wide, overlapping)
    short = Solution((), ((0,), (), (3,)), Fraction(0))
    with pytest.raises(SolutionError, match="sum\\(x\\) \\+ sum\\(y\\) = k"):
        evaluate(tightness_012, short)
    too_big = Solution((0, 1), ((), (), ()), Fraction(1))
    with pytest.raises(SolutionError, match="budget"):
        evaluate(tightness_012, too_big)


def test_check_solution_reports_value_mismatch(tightness_012):
    stale = Solution((1,), ((), (), ()), Fraction(7))
    failures = check_solution(tightness_012, stale)
    assert len(failures) == 1 and "recomputed" in failures[0]
    good = complete_first_stage(tightness_012, (1,))
    assert check_solution(tightness_012, good) == []


def test_linearity_of_evaluate():
    rng = random.Random(7)
    for _ in range(20):
        inst = gen_random_instance(6, 3, rng.randint(0, 6), "any", rng.randrange(10**6))
        sol = complete_first_stage(inst, rng.sample(range(inst.n), rng.randint(0, inst.k)))
        expected = sum((inst.c[i] for i in sol.first_stage), Fraction(0))
        for j in range(inst.m):
            expected += inst.p[j] * sum((inst.f[i][j] for i in sol.second_stage[j]), Fraction(0))
        assert evaluate(inst, sol) == expected == sol.value


def test_scale_equivariance_of_greedy():
    rng = random.Random(11)
    for _ in range(10):
        inst = gen_random_instance(6, 3, 3, "any", rng.randrange(10**6))
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        scaled = Instance(
            n=inst.n,
            m=inst.m,
            k=inst.k,
            c=tuple(lam * v for v in inst.c),
            p=inst.p,
            f=tuple(tuple(lam * v for v in row) for row in inst.f),
        )
        first = set(rng.sample(range(inst.n), rng.randint(0, inst.k)))
        base_sel, base_rev = second_stage_greedy(inst, first)
        scaled_sel, scaled_rev = second_stage_greedy(scaled, first)
        assert scaled_sel == base_sel
        assert scaled_rev == lam * base_rev


def test_permutation_equivariance_of_greedy():
    rng = random.Random(13)
    n, m, k = 6, 3, 3
    # distinct values within each scenario, so the tie-break never fires
    f = tuple(
        tuple(Fraction(rng.randrange(100) * n + i, 7) for j in range(m))
        for i in range(n)
    )
    c = tuple(Fraction(i) for i in range(n))
    inst = Instance(n=n, m=m, k=k, c=c, p=(Fraction(1, 3),) * 3, f=f)
    perm = list(range(n))
    rng.shuffle(perm)
    relabeled = Instance(
        n=n,
        m=m,
        k=k,
        c=tuple(c[perm.index(i)] for i in range(n)),
        p=inst.p,
        f=tuple(f[perm.index(i)] for i in range(n)),
    )
    first = set(rng.sample(range(n), 2))
    base_sel, base_rev = second_stage_greedy(inst, first)
    mapped_sel, mapped_rev = second_stage_greedy(relabeled, {perm[i] for i in first})
    assert mapped_rev == base_rev
    for j in range(m):
        assert set(mapped_sel[j]) == {perm[i] for i in base_sel[j]}


def test_instance_round_trip(tightness_012):
    text = serialize_instance(tightness_012)
    again = parse_instance(text)
    assert again == tightness_012


def test_fraction_literals_parse_exactly():
    inst = parse_instance(
        '{"n": 1, "m": 3, "k": 1, "c": ["1"], "p": ["1/3", "1/3", "1/3"],'
        ' "f": [["1", "1", "1"]]}'
    )
    assert inst.p == (Fraction(1, 3),) * 3


def test_decimal_literals_parse_exactly():
    assert parse_rational("0.1") == Fraction(1, 10)
    inst = parse_instance(
        '{"n": 1, "m": 1, "k": 0, "c": [0.1], "p": ["1"], "f": [["0.3"]]}'
    )
    assert inst.c[0] == Fraction(1, 10)
    assert inst.f[0][0] == Fraction(3, 10)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError, match="f\\[1\\]\\[0\\]"):
        parse_instance(
            '{"n": 2, "m": 1, "k": 1, "c": ["1", "1"], "p": ["1"],'
            ' "f": [["1"], ["nope"]]}'
        )
    with pytest.raises(ParseError, match="p"):
        parse_instance('{"n": 1, "m": 2, "k": 1, "c": ["1"], "p": ["1"], "f": [["1", "1"]]}')
    with pytest.raises(ParseError):
        parse_instance("{not json")
    with pytest.raises(ParseError, match="missing field 'k'"):
        parse_instance('{"n": 1, "m": 1, "c": ["1"], "p": ["1"], "f": [["1"]]}')


def test_floats_rejected_outside_parsing():
    with pytest.raises(TypeError):
        as_rational(0.1)
    with pytest.raises(TypeError):
        Instance(n=1, m=1, k=0, c=(0.1,), p=(1,), f=((1,),))


def test_solution_round_trip():
    sol = Solution((2, 0), ((3, 1), (4,)), Fraction(21, 4))
    again = parse_solution(serialize_solution(sol))
    assert again == sol
    assert again.first_stage == (0, 2)  # stored sorted
