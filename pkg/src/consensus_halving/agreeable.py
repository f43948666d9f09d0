"""Agreeable sets: item subsets every agent weakly prefers to their complement.

A set of at most floor((m + n) / 2) items always exists. For additive
utilities it comes from rounding an exact consensus halving; for general
monotonic utilities a brute force over few-cut layouts on a line finds one
when n is small.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .additive import solve_halving
from .core import GuardError, Instance, TheoremViolation
from .monotonic import AdditiveOracle, UtilityOracle

__all__ = [
    "AgreeableResult",
    "agreeable_additive",
    "agreeable_monotonic",
    "check_agreeable",
    "size_bound",
    "count_blocks",
]

MONOTONIC_MAX_AGENTS = 4


@dataclass(frozen=True)
class AgreeableResult:
    items: frozenset
    size_bound: int
    blocks: int
    order: tuple[int, ...]


def size_bound(n: int, m: int) -> int:
    return min((m + n) // 2, m)


def count_blocks(items: Iterable[int], order: Sequence[int]) -> int:
    """Number of maximal runs of ``items`` along ``order``."""
    s = set(items)
    runs, inside = 0, False
    for j in order:
        if j in s and not inside:
            runs += 1
        inside = j in s
    return runs


def _as_oracle(f) -> UtilityOracle:
    return AdditiveOracle(f) if isinstance(f, Instance) else f


def check_agreeable(f, items: Iterable[int]) -> bool:
    """u_i(S) >= u_i(M minus S) for every agent; ``f`` is an Instance or an oracle."""
    oracle = _as_oracle(f)
    s = frozenset(items)
    if any(not 0 <= j < oracle.m for j in s):
        raise ValueError("set contains items outside the instance")
    rest = frozenset(range(oracle.m)) - s
    return all(oracle.value(i, s) >= oracle.value(i, rest) for i in range(oracle.n))


def agreeable_additive(inst: Instance) -> AgreeableResult:
    """Round a consensus halving: the side with fewer whole items takes every cut item.

    With c <= n cut items that side has at most (m - c) / 2 whole items, so the
    result has at most (m + n) / 2 items. Items are reported along the line
    (part 1 whole items, cut items, part 2 whole items), where the result is a
    single block.
    """
    split, _ = solve_halving(inst)
    x = split.column(0)
    full1 = [j for j in range(inst.m) if x[j] == 1]
    full2 = [j for j in range(inst.m) if x[j] == 0]
    cut = [j for j in range(inst.m) if 0 < x[j] < 1]
    chosen = frozenset(full1 + cut) if len(full1) <= len(full2) else frozenset(cut + full2)
    order = tuple(full1 + cut + full2)
    bound = size_bound(inst.n, inst.m)
    if len(chosen) > bound or not check_agreeable(inst, chosen):
        raise TheoremViolation("rounded halving is not a small agreeable set")
    return AgreeableResult(chosen, bound, count_blocks(chosen, order), order)


def agreeable_monotonic(f: UtilityOracle) -> AgreeableResult:
    """Search alternating layouts with t = 0, 1, ..., n gap cuts along 0..m-1.

    For each set of cut gaps (lexicographic) the two alternating candidates
    are tried, the one containing item 0 first. The first candidate within
    the size bound that every agent finds agreeable is returned.
    """
    if f.n > MONOTONIC_MAX_AGENTS:
        raise GuardError(f"agreeable brute force is limited to n <= {MONOTONIC_MAX_AGENTS}, got {f.n}")
    m = f.m
    bound = size_bound(f.n, m)
    order = tuple(range(m))
    for t in range(min(f.n, max(m - 1, 0)) + 1):
        for gaps in itertools.combinations(range(1, m), t):
            bounds = (0, *gaps, m)
            segments = [range(a, b) for a, b in zip(bounds, bounds[1:])]
            for first in (0, 1):
                chosen = frozenset(j for s, seg in enumerate(segments) if s % 2 == first for j in seg)
                if len(chosen) <= bound and check_agreeable(f, chosen):
                    return AgreeableResult(chosen, bound, count_blocks(chosen, order), order)
    raise TheoremViolation("no agreeable set within the size bound among layouts with at most n cuts")
