"""Exact DSHP solver: enumerate first-stage sets, complete each greedily.

Enumeration covers every size 0..k because holding everything back for the
second stage is often optimal.  Assets whose first-stage value is strictly
below their expected second-stage value can be excluded from first-stage
consideration without changing the optimal objective (an exchange argument:
moving such an asset to every scenario's second stage strictly improves any
plan that sells it early).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .model import (
    DshpError,
    Instance,
    Solution,
    complete_first_stage,
    require_valid,
)


class EnumerationCapError(DshpError):
    """n exceeds the safety cap on exhaustive enumeration."""


@dataclass(frozen=True)
class ExactOptions:
    prune: bool = False
    max_n: int = 24

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError(f"max_n must be >= 1, got {self.max_n}")


def prunable(instance: Instance) -> frozenset[int]:
    """Assets with c_i strictly below sum_j p_j f_ij (never sold first-stage)."""
    out = set()
    for i in range(instance.n):
        expected = sum(
            (instance.p[j] * instance.f[i][j] for j in range(instance.m)), Fraction(0)
        )
        if instance.c[i] < expected:
            out.add(i)
    return frozenset(out)


def _integer_view(instance: Instance):
    """Rescale c, f and p to integers over common denominators.

    Objectives of candidate plans then compare as plain integers (they all
    share the denominator scale * pscale), which keeps the enumeration loop
    exact without per-step Fraction arithmetic.
    """
    scale = lcm(
        *(v.denominator for v in instance.c),
        *(v.denominator for row in instance.f for v in row),
    )
    pscale = lcm(*(v.denominator for v in instance.p))
    c_int = [v.numerator * (scale // v.denominator) for v in instance.c]
    f_int = [[v.numerator * (scale // v.denominator) for v in row] for row in instance.f]
    weights = [v.numerator * (pscale // v.denominator) for v in instance.p]
    return c_int, f_int, weights, pscale


def solve_exact(instance: Instance, options: ExactOptions | None = None) -> Solution:
    """Globally optimal solution by exhaustive first-stage enumeration.

    First-stage sets are enumerated by increasing size, lexicographically
    within each size, and the first set achieving the maximal objective is
    kept, so the result is deterministic.  With options.prune, enumeration
    is restricted to assets outside prunable(instance).
    """
    if options is None:
        options = ExactOptions()
    require_valid(instance)
    if instance.n > options.max_n:
        raise EnumerationCapError(
            f"n={instance.n} exceeds the enumeration cap max_n={options.max_n}; "
            f"pass a larger max_n (CLI: --max-n or DSHP_MAX_N) to override"
        )

    n, m, k = instance.n, instance.m, instance.k
    c_int, f_int, weights, pscale = _integer_view(instance)
    # Per scenario, assets in selling order: highest value first, index ties low.
    ranking = [
        sorted(range(n), key=lambda i: (-f_int[i][j], i)) for j in range(m)
    ]
    if options.prune:
        pool = sorted(set(range(n)) - prunable(instance))
    else:
        pool = list(range(n))

    best_total = None
    best_first: tuple[int, ...] = ()
    for size in range(min(k, len(pool)) + 1):
        need = k - size
        for combo in itertools.combinations(pool, size):
            chosen = set(combo)
            total = pscale * sum(c_int[i] for i in combo)
            if need:
                for j in range(m):
                    weight = weights[j]
                    if not weight:
                        continue
                    left = need
                    acc = 0
                    for i in ranking[j]:
                        if i in chosen:
                            continue
                        acc += f_int[i][j]
                        left -= 1
                        if not left:
                            break
                    total += weight * acc
            if best_total is None or total > best_total:
                best_total = total
                best_first = combo
    return complete_first_stage(instance, best_first)
