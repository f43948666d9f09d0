"""Brute-force ground truth for small instances.

Minimum cuts are found by iterative deepening on the cut budget: a depth-first
search assigns every item either wholly to one part or to a set of parts it
is shared between, and each complete assignment is decided exactly with
:func:`~consensus_halving.linalg.box_feasible`. The first budget with a
feasible assignment is the minimum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    HALVING,
    DimensionError,
    FractionalSplit,
    GuardError,
    Instance,
    Ratios,
    additive_value,
    cut_count,
    cut_items,
)
from .agreeable import check_agreeable
from .linalg import AffineSystem, box_feasible
from .monotonic import AdditiveOracle

__all__ = [
    "MinCutResult",
    "SplitReport",
    "min_cuts_oracle",
    "min_cuts_line_oracle",
    "verify_split",
    "min_agreeable_size_oracle",
]

MAX_ITEMS = 12
MAX_AGENTS = 6
LINE_MAX_ITEMS = 15
AGREEABLE_MAX_ITEMS = 12


@dataclass(frozen=True)
class MinCutResult:
    cuts: int
    witness: FractionalSplit


@dataclass
class SplitReport:
    """Exact per-agent, per-part residuals u_i(part l) - alpha_l * u_i(M)."""

    residuals: list[list[Fraction]]
    cut_items: list[int]
    cut_count: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "cut_items": self.cut_items,
            "cut_count": self.cut_count,
            "residuals": [[str(r) for r in row] for row in self.residuals],
        }


def verify_split(inst: Instance, split: FractionalSplit, ratios: Ratios = HALVING) -> SplitReport:
    if split.m != inst.m:
        raise DimensionError(f"split has {split.m} items, instance has {inst.m}")
    if split.k != ratios.k:
        raise DimensionError(f"split has {split.k} parts but {ratios.k} ratios were given")
    residuals = [
        [additive_value(inst, i, split.column(p)) - ratios[p] * inst.total(i) for p in range(split.k)]
        for i in range(inst.n)
    ]
    passed = all(r == 0 for row in residuals for r in row)
    return SplitReport(residuals, sorted(cut_items(split)), cut_count(split), passed)


def _options(k: int, measure: str) -> list[tuple[tuple[int, ...], int]]:
    """Per-item choices (parts holding a piece, cost), cheapest first."""
    opts = [((p,), 0) for p in range(k)]
    if measure == "items":
        opts.append((tuple(range(k)), 1))
    elif measure == "cuts":
        for size in range(2, k + 1):
            opts.extend((s, size - 1) for s in itertools.combinations(range(k), size))
    else:
        raise ValueError(f"measure must be 'items' or 'cuts', got {measure!r}")
    return opts


def _decide(inst: Instance, ratios: Ratios, choice: Sequence[tuple[int, ...]]) -> FractionalSplit | None:
    """Exact feasibility of the ratio conditions given each item's part set."""
    n, k = inst.n, ratios.k
    shared = [(j, parts) for j, parts in enumerate(choice) if len(parts) > 1]
    var = {}
    for j, parts in shared:
        for p in parts:
            var[(j, p)] = len(var)
    nv = len(var)
    system = AffineSystem(nv)
    for i in range(n):
        target_total = inst.total(i)
        for p in range(k - 1):
            coeffs = [Fraction(0)] * nv
            whole = Fraction(0)
            for j, parts in enumerate(choice):
                if len(parts) == 1:
                    if parts[0] == p:
                        whole += inst.utilities[i][j]
                elif p in parts:
                    coeffs[var[(j, p)]] += inst.utilities[i][j]
            system.add(coeffs, ratios[p] * target_total - whole)
    for j, parts in shared:
        coeffs = [Fraction(0)] * nv
        for p in parts:
            coeffs[var[(j, p)]] = Fraction(1)
        system.add(coeffs, 1)
    y = box_feasible(system, [0] * nv, [1] * nv)
    if y is None:
        return None
    rows = []
    for j, parts in enumerate(choice):
        row = [Fraction(0)] * k
        if len(parts) == 1:
            row[parts[0]] = Fraction(1)
        else:
            for p in parts:
                row[p] = y[var[(j, p)]]
        rows.append(tuple(row))
    return FractionalSplit(tuple(rows), k)


def min_cuts_oracle(inst: Instance, ratios: Ratios = HALVING, measure: str = "items") -> MinCutResult:
    """Minimum number of cut items (``measure="items"``) or cuts (``"cuts"``).

    With ``"items"`` a shared item may be spread over all k parts; with
    ``"cuts"`` it names the parts it is spread over and costs one less than
    their number. For two parts the measures coincide.
    """
    n, m, k = inst.n, inst.m, ratios.k
    if m > MAX_ITEMS or n > MAX_AGENTS:
        raise GuardError(f"min-cut oracle is limited to m <= {MAX_ITEMS} and n <= {MAX_AGENTS}, got n={n}, m={m}")
    options = _options(k, measure)
    nonneg = not any(v < 0 for row in inst.utilities for v in row)
    targets = [[ratios[p] * inst.total(i) for p in range(k)] for i in range(n)]

    def search(j, budget, choice, whole):
        if j == m:
            if budget:
                return None  # this budget level only checks layouts spending it fully
            return _decide(inst, ratios, choice)
        for parts, cost in options:
            if cost > budget:
                continue
            if len(parts) == 1:
                p = parts[0]
                if nonneg and any(whole[i][p] + inst.utilities[i][j] > targets[i][p] for i in range(n)):
                    continue
                for i in range(n):
                    whole[i][p] += inst.utilities[i][j]
                choice.append(parts)
                found = search(j + 1, budget, choice, whole)
                choice.pop()
                for i in range(n):
                    whole[i][p] -= inst.utilities[i][j]
            else:
                choice.append(parts)
                found = search(j + 1, budget - cost, choice, whole)
                choice.pop()
            if found is not None:
                return found
        return None

    max_budget = m * (k - 1)
    for budget in range(max_budget + 1):
        found = search(0, budget, [], [[Fraction(0)] * k for _ in range(n)])
        if found is not None:
            return MinCutResult(budget, found)
    raise RuntimeError("no feasible split even with every item shared; the instance is malformed")


def min_cuts_line_oracle(inst: Instance, order: Sequence[int] | None = None, ratios: Ratios = HALVING) -> MinCutResult:
    """Fewest knife cuts on a line giving part 1 exactly alpha_1 of every agent.

    Walking along the line, the current side flips at every cut. A cut may sit
    in a gap between items, or inside an item: one cut inside an item leaves
    it shared and flips the side, two cuts inside it leave it shared and keep
    the side. Shared items get a free fraction; whole items follow the side.
    """
    n, m = inst.n, inst.m
    if ratios.k != 2:
        raise ValueError("the line oracle handles two parts")
    if m > LINE_MAX_ITEMS:
        raise GuardError(f"line oracle is limited to {LINE_MAX_ITEMS} items, got {m}")
    order = list(range(m)) if order is None else list(order)
    if sorted(order) != list(range(m)):
        raise ValueError("order must be a permutation of the items")
    nonneg = not any(v < 0 for row in inst.utilities for v in row)
    targets = [[ratios[p] * inst.total(i) for p in range(2)] for i in range(n)]
    choice: list[tuple[int, ...]] = [()] * m
    whole = [[Fraction(0)] * 2 for _ in range(n)]

    def place(j, p):
        if nonneg and any(whole[i][p] + inst.utilities[i][j] > targets[i][p] for i in range(n)):
            return False
        for i in range(n):
            whole[i][p] += inst.utilities[i][j]
        return True

    def unplace(j, p):
        for i in range(n):
            whole[i][p] -= inst.utilities[i][j]

    def search(pos, side, budget):
        if pos == m:
            return _decide(inst, ratios, choice) if budget == 0 else None
        j = order[pos]
        # a gap cut before this item (never before the first item)
        sides = [(side, 0)]
        if pos > 0 and budget >= 1:
            sides.append((1 - side, 1))
        for s, spent in sides:
            rest = budget - spent
            if place(j, s):
                choice[j] = (s,)
                found = search(pos + 1, s, rest)
                unplace(j, s)
                if found is not None:
                    return found
            choice[j] = (0, 1)
            if rest >= 1:
                found = search(pos + 1, 1 - s, rest - 1)
                if found is not None:
                    return found
            if rest >= 2:
                found = search(pos + 1, s, rest - 2)
                if found is not None:
                    return found
        return None

    for budget in range(2 * m + 1):
        for start in (0, 1):
            found = search(0, start, budget)
            if found is not None:
                return MinCutResult(budget, found)
    raise RuntimeError("no feasible line split; the instance is malformed")


def min_agreeable_size_oracle(f) -> int:
    """Size of the smallest set every agent weakly prefers to its complement."""
    oracle = AdditiveOracle(f) if isinstance(f, Instance) else f
    m = oracle.m
    if m > AGREEABLE_MAX_ITEMS:
        raise GuardError(f"agreeable oracle is limited to {AGREEABLE_MAX_ITEMS} items, got {m}")
    for size in range(m + 1):
        if any(check_agreeable(oracle, s) for s in itertools.combinations(range(m), size)):
            return size
    raise RuntimeError("the full item set is always agreeable for monotone utilities")
