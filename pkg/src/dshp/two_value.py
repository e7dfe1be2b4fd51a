"""Linear-time solver for instances whose values all lie in {v_min, v_max}.

Selling every asset whose first-stage value is v_max as early as possible is
optimal (an exchange argument: swapping such an asset into the first stage
never loses value), and the leftover budget is spent per scenario on v_max
entries first.  Everything is done with counting passes, no sorting, so the
work is linear in n*m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    DegenerateValuesError,
    Instance,
    Solution,
    ValueDomainError,
    require_valid,
)


class VisitCounter:
    """Tally of value-entry reads; evidence for the linear-time bound."""

    __slots__ = ("visits",)

    def __init__(self):
        self.visits = 0

    def add(self, amount: int = 1) -> None:
        self.visits += amount


@dataclass(frozen=True)
class TwoValueProfile:
    """The two values of an instance plus the assets worth v_max up front."""

    v_min: Fraction
    v_max: Fraction
    max_valued: tuple[int, ...]


def detect_two_values(
    instance: Instance, counter: VisitCounter | None = None
) -> TwoValueProfile:
    """Classify an instance as two-valued or raise.

    More than two distinct values raises ValueDomainError with a witness
    triple; a single distinct value raises DegenerateValuesError (all
    feasible plans then share one objective, which solve_two_value handles).
    """
    require_valid(instance)
    distinct: list[Fraction] = []
    visits = 0

    def note(v: Fraction) -> bool:
        if v not in distinct:
            distinct.append(v)
        return len(distinct) > 2

    bailed = False
    for v in instance.c:
        visits += 1
        if note(v):
            bailed = True
            break
    if not bailed:
        for row in instance.f:
            for v in row:
                visits += 1
                if note(v):
                    bailed = True
                    break
            if bailed:
                break
    if counter:
        counter.add(visits)
    if bailed:
        witness = ", ".join(str(v) for v in sorted(distinct))
        raise ValueDomainError(f"not two-valued: witness values {witness}")
    if len(distinct) == 1:
        raise DegenerateValuesError(
            f"every value equals {distinct[0]}: all budget-k plans are equal-value"
        )
    v_min, v_max = sorted(distinct)
    max_valued = tuple(i for i in range(instance.n) if instance.c[i] == v_max)
    if counter:
        counter.add(instance.n)
    return TwoValueProfile(v_min, v_max, max_valued)


def solve_two_value(
    instance: Instance, counter: VisitCounter | None = None
) -> Solution:
    """Optimal solution of a two-valued instance in O(nm) operations.

    If fewer than k assets are worth v_max up front, all of them are sold at
    the first stage and each scenario sells the most valuable remainder;
    otherwise the k lowest-indexed v_max assets are sold and the second
    stage is empty.  Single-valued instances get the lexicographic budget-k
    first-stage plan.
    """
    try:
        profile = detect_two_values(instance, counter)
    except DegenerateValuesError:
        first = tuple(range(instance.k))
        value = sum((instance.c[i] for i in first), Fraction(0))
        if counter:
            counter.add(instance.k)
        return Solution(first, tuple(() for _ in range(instance.m)), value)

    n, m, k = instance.n, instance.m, instance.k
    top = profile.max_valued
    if len(top) >= k:
        first = top[:k]
        value = sum((instance.c[i] for i in first), Fraction(0))
        if counter:
            counter.add(k)
        return Solution(first, tuple(() for _ in range(m)), value)

    first = top
    in_first = set(first)
    need = k - len(first)
    value = sum((instance.c[i] for i in first), Fraction(0))
    if counter:
        counter.add(len(first))
    selections = []
    for j in range(m):
        picked = []
        # v_max entries first, ascending index, then v_min entries: exactly
        # the "most valuable, ties to lowest index" order without a sort.
        visits = 0
        for i in range(n):
            if i in in_first:
                continue
            visits += 1
            if instance.f[i][j] == profile.v_max:
                picked.append(i)
                if len(picked) == need:
                    break
        if len(picked) < need:
            have_max = set(picked)
            for i in range(n):
                if i in in_first or i in have_max:
                    continue
                visits += 1
                picked.append(i)
                if len(picked) == need:
                    break
        if counter:
            counter.add(visits)
        selections.append(tuple(picked))
        scenario_sum = sum((instance.f[i][j] for i in picked), Fraction(0))
        value += instance.p[j] * scenario_sum
    return Solution(first, tuple(selections), value)
