"""Heuristic for three-valued instances with a worst-case guarantee.

With values {low, mid, high}, selling every mid- or high-valued asset as
early as the budget allows achieves at least mid/high of the optimum, and
the ratio is attained exactly on a 4-asset, 3-scenario family
(gen_tightness), so the bound cannot be improved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    Instance,
    Solution,
    ValueDomainError,
    as_rational,
    complete_first_stage,
    require_valid,
)


@dataclass(frozen=True)
class ThreeValueProfile:
    """The sorted value triple plus first-stage class sizes.

    high_count / mid_count are the numbers of assets whose first-stage
    value is high resp. mid; together they bound what stage 1 can sell.
    """

    low: Fraction
    mid: Fraction
    high: Fraction
    high_count: int
    mid_count: int


@dataclass(frozen=True)
class ApproxReport:
    """Diagnostics of one heuristic run.

    guarantee is the a-priori worst-case ratio mid/high; no upper bound on
    the optimum is computed, so the certified lower bound on the optimal
    objective is the achieved value itself.
    """

    achieved: Fraction
    profile: ThreeValueProfile
    guarantee: Fraction
    certified_lower_bound: Fraction


def detect_three_values(instance: Instance) -> ThreeValueProfile:
    """Classify an instance as exactly three-valued or raise."""
    require_valid(instance)
    distinct: list[Fraction] = []
    stream = list(instance.c)
    for row in instance.f:
        stream.extend(row)
    for v in stream:
        if v not in distinct:
            distinct.append(v)
            if len(distinct) > 3:
                witness = ", ".join(str(x) for x in sorted(distinct))
                raise ValueDomainError(f"more than three distinct values: witness {witness}")
    if len(distinct) < 3:
        raise ValueDomainError(
            f"only {len(distinct)} distinct value(s); use the two-value solver "
            f"or the degenerate handling there"
        )
    low, mid, high = sorted(distinct)
    high_count = sum(1 for v in instance.c if v == high)
    mid_count = sum(1 for v in instance.c if v == mid)
    return ThreeValueProfile(low, mid, high, high_count, mid_count)


def solve_approx(instance: Instance) -> tuple[Solution, ApproxReport]:
    """Run the heuristic: stage 1 takes high- then mid-valued assets.

    If the mid/high classes fit the budget they are all sold at stage 1 and
    any leftover budget goes to the per-scenario greedy; otherwise the k
    highest-class assets (lowest index within a class) are sold and the
    second stage is empty.  Instances with negative values are rejected:
    the mid/high ratio guarantee is only meaningful for nonnegative values.
    """
    profile = detect_three_values(instance)
    if profile.low < 0:
        raise ValueDomainError(
            f"negative value {profile.low} present: the ratio guarantee needs nonnegative values"
        )
    stage1 = [i for i in range(instance.n) if instance.c[i] == profile.high]
    stage1 += [i for i in range(instance.n) if instance.c[i] == profile.mid]
    if len(stage1) > instance.k:
        stage1 = stage1[: instance.k]
    solution = complete_first_stage(instance, stage1)
    report = ApproxReport(
        achieved=solution.value,
        profile=profile,
        guarantee=profile.mid / profile.high,
        certified_lower_bound=solution.value,
    )
    return solution, report


def gen_tightness(low, mid, high) -> Instance:
    """The 4-asset, 3-scenario, k=1 family where the guarantee is exact.

    The heuristic sells the single mid-valued asset at stage 1 (revenue mid)
    while the optimum holds everything and sells each scenario's high-valued
    asset (revenue high), realizing the ratio mid/high exactly.
    """
    low, mid, high = as_rational(low), as_rational(mid), as_rational(high)
    if not low < mid < high:
        raise ValueError(f"need a strictly increasing triple, got {low}, {mid}, {high}")
    third = Fraction(1, 3)
    return Instance(
        n=4,
        m=3,
        k=1,
        c=(low, mid, low, low),
        p=(third, third, third),
        f=(
            (high, low, low),
            (low, low, low),
            (low, high, low),
            (low, low, high),
        ),
        label=f"tightness({low},{mid},{high})",
    )
