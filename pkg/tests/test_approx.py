"""Three-value heuristic: detection, guarantee, tightness family."""

import random
from fractions import Fraction

import pytest

from dshp import (
    Instance,
    ValueDomainError,
    build_reduction,
    default_params,
    detect_three_values,
    evaluate,
    gen_tightness,
    solve_approx,
    solve_exact,
)
from dshp.cli import gen_random_instance

from conftest import octahedron


def test_detect_tightness_profile(tightness_012):
    profile = detect_three_values(tightness_012)
    assert (profile.low, profile.mid, profile.high) == (0, 1, 2)
    assert profile.high_count == 0
    assert profile.mid_count == 1


def test_detect_reduction_instance():
    inst = build_reduction(octahedron(), default_params(6, 4))
    profile = detect_three_values(inst)
    assert (profile.low, profile.mid, profile.high) == (
        Fraction(1, 2),
        1,
        Fraction(11, 4),
    )
    assert profile.high_count == 0
    assert profile.mid_count == 6


def test_detect_rejects_wrong_cardinality():
    two = Instance(n=2, m=1, k=1, c=(1, 2), p=(1,), f=((1,), (2,)))
    with pytest.raises(ValueDomainError):
        detect_three_values(two)
    four = Instance(n=2, m=1, k=1, c=(1, 2), p=(1,), f=((3,), (4,)))
    with pytest.raises(ValueDomainError, match="witness"):
        detect_three_values(four)


def test_tightness_run(tightness_012):
    sol, report = solve_approx(tightness_012)
    assert sol.first_stage == (1,)
    assert sol.value == 1
    assert report.guarantee == Fraction(1, 2)
    assert report.achieved == report.certified_lower_bound == 1
    assert solve_exact(tightness_012).value == 2


def test_no_qualifying_first_stage_assets():
    # all first-stage values are the low value: pure second-stage greedy
    inst = Instance(
        n=3, m=2, k=2, c=(0, 0, 0), p=(Fraction(1, 2),) * 2, f=((2, 0), (1, 1), (0, 2))
    )
    sol, _ = solve_approx(inst)
    assert sol.first_stage == ()
    assert sol.second_stage == ((0, 1), (1, 2))
    assert sol.value == 3


def test_full_budget_sells_everything():
    inst = Instance(
        n=3, m=2, k=3, c=(2, 1, 0), p=(Fraction(1, 2),) * 2, f=((0, 0), (0, 0), (1, 2))
    )
    sol, _ = solve_approx(inst)
    assert set(sol.first_stage) >= {0, 1}
    expected = sum((inst.c[i] for i in sol.first_stage), Fraction(0))
    for j in range(inst.m):
        expected += inst.p[j] * sum(
            (inst.f[i][j] for i in sol.second_stage[j]), Fraction(0)
        )
    assert sol.value == expected
    assert evaluate(inst, sol) == sol.value


def test_rejects_negative_values():
    inst = Instance(n=2, m=1, k=1, c=(-1, 0), p=(1,), f=((1,), (0,)))
    with pytest.raises(ValueDomainError, match="negative"):
        solve_approx(inst)


def test_stage_one_choices_high_before_mid():
    # more qualifying assets than budget: high-valued win, low index first
    inst = Instance(
        n=5,
        m=1,
        k=2,
        c=(1, 2, 0, 2, 1),
        p=(1,),
        f=((0,), (0,), (0,), (0,), (0,)),
    )
    sol, _ = solve_approx(inst)
    assert sol.first_stage == (1, 3)
    assert sol.value == 4


def test_gen_tightness_family():
    for triple in [(0, 1, 2), (1, 2, 3), (Fraction(1, 2), Fraction(3, 4), 1)]:
        inst = gen_tightness(*triple)
        profile = detect_three_values(inst)
        assert (profile.low, profile.mid, profile.high) == tuple(map(Fraction, triple))
        assert (profile.high_count, profile.mid_count) == (0, 1)
        sol, report = solve_approx(inst)
        best = solve_exact(inst)
        assert sol.value == profile.mid
        assert best.value == profile.high
        assert sol.value == report.guarantee * best.value  # ratio met exactly


def test_gen_tightness_rejects_bad_ordering():
    with pytest.raises(ValueError):
        gen_tightness(1, 1, 2)
    with pytest.raises(ValueError):
        gen_tightness(2, 1, 0)


def test_guarantee_on_random_instances():
    rng = random.Random(59)
    for _ in range(60):
        n = rng.randint(2, 8)
        inst = gen_random_instance(
            n, rng.randint(1, 4), rng.randint(0, n), "3", rng.randrange(10**6)
        )
        profile = detect_three_values(inst)
        sol, report = solve_approx(inst)
        best = solve_exact(inst)
        assert profile.high * sol.value >= profile.mid * best.value
        assert report.guarantee == profile.mid / profile.high
        assert evaluate(inst, sol) == sol.value  # feasibility
        assert all(inst.c[i] in (profile.mid, profile.high) for i in sol.first_stage)
