"""Core data model for the discrete sell-or-hold problem (DSHP).

An instance holds n assets with known first-stage values c, and m future
scenarios with probabilities p and per-scenario values f.  Exactly k assets
are sold in total along every scenario path: a first-stage set F plus
k - |F| assets per scenario.  All arithmetic is exact rational; nothing in
this package ever rounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DshpError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DshpError):
    """Malformed instance, solution or graph text."""


class InstanceError(DshpError):
    """An instance violates its invariants."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("invalid instance: " + "; ".join(violations))
        self.violations = list(violations)


class SolutionError(DshpError):
    """A solution violates a structural constraint; the message names it."""


class ValueDomainError(DshpError):
    """The instance's set of distinct values does not fit the algorithm."""


class DegenerateValuesError(ValueDomainError):
    """Every value in the instance is identical: all feasible plans tie."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or numeric string to an exact Fraction.

    Floats are rejected: binary floating point has no place in this toolkit.
    Strings may be decimals ("1.25") or fractions ("5/4").
    """
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}: pass a string or Fraction")
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse a decimal or "a/b" numeral exactly; raise ParseError otherwise."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational numeral: {text!r} ({exc})") from None


def format_rational(q: Fraction) -> str:
    """Canonical text form: "a/b" in lowest terms, or "a" for integers."""
    return str(q)


def _rational_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


@dataclass(frozen=True)
class Instance:
    """A DSHP instance.

    n assets, m scenarios, sale budget k, first-stage values c (length n),
    scenario probabilities p (length m, summing to 1 exactly) and the
    second-stage value matrix f with f[i][j] = value of asset i under
    scenario j.  Values may be negative; probabilities may be zero.
    Assets and scenarios are 0-indexed everywhere, including file formats.
    """

    n: int
    m: int
    k: int
    c: tuple[Fraction, ...]
    p: tuple[Fraction, ...]
    f: tuple[tuple[Fraction, ...], ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "c", _rational_vector(self.c))
        object.__setattr__(self, "p", _rational_vector(self.p))
        object.__setattr__(self, "f", tuple(_rational_vector(row) for row in self.f))

    def values(self) -> set[Fraction]:
        """Every distinct value appearing in c or f."""
        seen = set(self.c)
        for row in self.f:
            seen.update(row)
        return seen


@dataclass(frozen=True)
class Solution:
    """A feasible plan: first-stage sold set, per-scenario sold lists, value.

    first_stage has at most k assets; every scenario list has exactly
    k - |first_stage| assets, disjoint from first_stage.  value is the exact
    objective the plan achieves.
    """

    first_stage: tuple[int, ...]
    second_stage: tuple[tuple[int, ...], ...]
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "first_stage", tuple(sorted(self.first_stage)))
        object.__setattr__(
            self, "second_stage", tuple(tuple(sorted(sel)) for sel in self.second_stage)
        )
        object.__setattr__(self, "value", as_rational(self.value))


def validate(instance: Instance) -> list[str]:
    """Return every violated instance invariant; an empty list means ok."""
    violations = []
    if instance.n < 1:
        violations.append(f"n must be >= 1, got {instance.n}")
    if instance.m < 1:
        violations.append(f"m must be >= 1, got {instance.m}")
    if instance.k < 0:
        violations.append(f"k must be >= 0, got {instance.k}")
    if instance.k > instance.n:
        violations.append(f"k > n (k={instance.k}, n={instance.n})")
    if len(instance.c) != instance.n:
        violations.append(f"c has {len(instance.c)} entries, expected n={instance.n}")
    if len(instance.p) != instance.m:
        violations.append(f"p has {len(instance.p)} entries, expected m={instance.m}")
    if len(instance.f) != instance.n:
        violations.append(f"f has {len(instance.f)} rows, expected n={instance.n}")
    for i, row in enumerate(instance.f):
        if len(row) != instance.m:
            violations.append(f"f[{i}] has {len(row)} entries, expected m={instance.m}")
    for j, pj in enumerate(instance.p):
        if pj < 0:
            violations.append(f"p[{j}] = {pj} is negative")
    if instance.p and all(pj >= 0 for pj in instance.p):
        total = sum(instance.p, Fraction(0))
        if total != 1:
            violations.append(f"probabilities sum to {total}, not 1")
    return violations


def require_valid(instance: Instance) -> None:
    violations = validate(instance)
    if violations:
        raise InstanceError(violations)


def second_stage_greedy(
    instance: Instance, first_stage: Iterable[int]
) -> tuple[tuple[tuple[int, ...], ...], Fraction]:
    """Optimal second-stage completion of a fixed first-stage set.

    With the first stage fixed, each scenario independently sells the
    k - |F| most valuable remaining assets (ties to the lowest index);
    the continuous relaxation of that per-scenario subproblem has an
    integral optimum, so this greedy is exact.

    Returns the per-scenario sold lists (index-sorted) and the expected
    second-stage revenue sum_j p_j * (sum of selected f_ij).
    """
    chosen = set(first_stage)
    if len(chosen) > instance.k:
        raise SolutionError(
            f"first-stage budget |F| <= k violated: |F|={len(chosen)}, k={instance.k}"
        )
    for i in chosen:
        if not 0 <= i < instance.n:
            raise SolutionError(f"first-stage asset {i} out of range 0..{instance.n - 1}")
    need = instance.k - len(chosen)
    remaining = [i for i in range(instance.n) if i not in chosen]
    selections = []
    revenue = Fraction(0)
    for j in range(instance.m):
        ranked = sorted(remaining, key=lambda i: (-instance.f[i][j], i))
        picked = sorted(ranked[:need])
        selections.append(tuple(picked))
        scenario_sum = sum((instance.f[i][j] for i in picked), Fraction(0))
        revenue += instance.p[j] * scenario_sum
    return tuple(selections), revenue


def complete_first_stage(instance: Instance, first_stage: Iterable[int]) -> Solution:
    """Build the full Solution for a first-stage set under greedy completion."""
    chosen = sorted(set(first_stage))
    selections, revenue = second_stage_greedy(instance, chosen)
    value = sum((instance.c[i] for i in chosen), Fraction(0)) + revenue
    return Solution(tuple(chosen), selections, value)


def evaluate(instance: Instance, solution: Solution) -> Fraction:
    """Exact objective of a solution; raises SolutionError on structural violations.

    The returned value is recomputed from scratch, so callers can compare it
    against solution.value (check_solution does exactly that).
    """
    chosen = solution.first_stage
    if len(set(chosen)) != len(chosen):
        raise SolutionError("first_stage contains duplicate assets")
    if len(chosen) > instance.k:
        raise SolutionError(
            f"first-stage budget |F| <= k violated: |F|={len(chosen)}, k={instance.k}"
        )
    for i in chosen:
        if not 0 <= i < instance.n:
            raise SolutionError(f"first-stage asset {i} out of range 0..{instance.n - 1}")
    if len(solution.second_stage) != instance.m:
        raise SolutionError(
            f"second_stage has {len(solution.second_stage)} scenario lists, expected m={instance.m}"
        )
    first = set(chosen)
    need = instance.k - len(first)
    total = sum((instance.c[i] for i in chosen), Fraction(0))
    for j, sel in enumerate(solution.second_stage):
        if len(set(sel)) != len(sel):
            raise SolutionError(f"second_stage[{j}] contains duplicate assets")
        if len(sel) != need:
            raise SolutionError(
                f"budget constraint sum(x) + sum(y) = k violated in scenario {j}: "
                f"{len(first)} + {len(sel)} != {instance.k}"
            )
        for i in sel:
            if not 0 <= i < instance.n:
                raise SolutionError(
                    f"second_stage[{j}] asset {i} out of range 0..{instance.n - 1}"
                )
            if i in first:
                raise SolutionError(
                    f"constraint x_i + y_ij <= 1 violated: asset {i} sold at both stages "
                    f"(scenario {j})"
                )
        total += instance.p[j] * sum((instance.f[i][j] for i in sel), Fraction(0))
    return total


def check_solution(instance: Instance, solution: Solution) -> list[str]:
    """All constraint violations of a solution, including a stale stored value."""
    try:
        recomputed = evaluate(instance, solution)
    except SolutionError as exc:
        return [str(exc)]
    if recomputed != solution.value:
        return [f"stored value {solution.value} != recomputed value {recomputed}"]
    return []


# --- instance / solution file formats (JSON, exact numeric strings) ---


def _parse_field_rational(raw, where: str) -> Fraction:
    if isinstance(raw, Fraction):  # bare JSON numeral, intercepted exactly
        return raw
    if isinstance(raw, bool):
        raise ParseError(f"{where}: not a rational numeral: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return parse_rational(raw)
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: expected a numeric string, got {raw!r}")


def _loads(text: str, what: str) -> dict:
    try:
        # parse_float receives the raw literal text, so "0.1" becomes exactly
        # 1/10 and never touches binary floating point.
        obj = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed {what}: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"malformed {what}: expected a JSON object")
    return obj


def _require_int(obj: dict, key: str) -> int:
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    raw = obj[key]
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ParseError(f"{key}: expected an integer, got {raw!r}")
    return raw


def parse_instance(text: str) -> Instance:
    """Parse the JSON instance format; numerics are parsed exactly."""
    obj = _loads(text, "instance")
    n = _require_int(obj, "n")
    m = _require_int(obj, "m")
    k = _require_int(obj, "k")
    for key in ("c", "p", "f"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
        if not isinstance(obj[key], list):
            raise ParseError(f"{key}: expected an array")
    c = tuple(_parse_field_rational(v, f"c[{i}]") for i, v in enumerate(obj["c"]))
    p = tuple(_parse_field_rational(v, f"p[{j}]") for j, v in enumerate(obj["p"]))
    rows = []
    for i, row in enumerate(obj["f"]):
        if not isinstance(row, list):
            raise ParseError(f"f[{i}]: expected an array (row of asset {i})")
        rows.append(
            tuple(_parse_field_rational(v, f"f[{i}][{j}]") for j, v in enumerate(row))
        )
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise ParseError(f"label: expected a string, got {label!r}")
    if len(c) != n:
        raise ParseError(f"c has {len(c)} entries, expected n={n}")
    if len(p) != m:
        raise ParseError(f"p has {len(p)} entries, expected m={m}")
    if len(rows) != n:
        raise ParseError(f"f has {len(rows)} rows, expected n={n}")
    for i, row in enumerate(rows):
        if len(row) != m:
            raise ParseError(f"f[{i}] has {len(row)} entries, expected m={m}")
    return Instance(n=n, m=m, k=k, c=c, p=p, f=tuple(rows), label=label)


def serialize_instance(instance: Instance) -> str:
    """Inverse of parse_instance: parse(serialize(I)) == I field for field."""
    obj = {
        "n": instance.n,
        "m": instance.m,
        "k": instance.k,
        "c": [format_rational(v) for v in instance.c],
        "p": [format_rational(v) for v in instance.p],
        "f": [[format_rational(v) for v in row] for row in instance.f],
    }
    if instance.label:
        obj["label"] = instance.label
    return json.dumps(obj)


def _parse_index_array(raw, where: str) -> tuple[int, ...]:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected an array")
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"{where}: expected integer asset indices, got {v!r}")
        out.append(v)
    return tuple(out)


def parse_solution(text: str) -> Solution:
    obj = _loads(text, "solution")
    for key in ("first_stage", "second_stage", "value"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    first = _parse_index_array(obj["first_stage"], "first_stage")
    if not isinstance(obj["second_stage"], list):
        raise ParseError("second_stage: expected an array of arrays")
    second = tuple(
        _parse_index_array(sel, f"second_stage[{j}]")
        for j, sel in enumerate(obj["second_stage"])
    )
    value = _parse_field_rational(obj["value"], "value")
    return Solution(first, second, value)


def serialize_solution(solution: Solution) -> str:
    obj = {
        "first_stage": list(solution.first_stage),
        "second_stage": [list(sel) for sel in solution.second_stage],
        "value": format_rational(solution.value),
    }
    return json.dumps(obj)
