"""Instance factories: random instances and the lower-bound constructions."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Instance, Ratios

__all__ = [
    "Generated",
    "gen_random",
    "gen_partition_reduction",
    "has_equal_bipartition",
    "gen_ksplit_worstcase",
    "smallest_worstcase_b",
    "gen_line_lower_bound",
    "gen_agreeable_tight",
    "gen_single_valued",
]

BIPARTITION_MAX_WEIGHTS = 22


@dataclass(frozen=True)
class Generated:
    """An instance together with its construction parameters and known bounds."""

    instance: Instance
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {**self.instance.to_json(), "metadata": self.metadata}


def gen_random(n: int, m: int, seed: int, denom_bound: int = 10**6) -> Instance:
    """Utilities p/q with q = denom_bound and p uniform in 0..q."""
    if denom_bound < 2:
        raise ValueError("denom_bound must be at least 2")
    rng = random.Random(seed)
    q = denom_bound
    return Instance.from_rows([[Fraction(rng.randint(0, q), q) for _ in range(m)] for _ in range(n)])


def has_equal_bipartition(weights: Sequence[int]) -> bool:
    """Exhaustive subset-sum test; weights are few enough to enumerate."""
    if len(weights) > BIPARTITION_MAX_WEIGHTS:
        raise ValueError(f"exhaustive bipartition test limited to {BIPARTITION_MAX_WEIGHTS} weights")
    total = sum(weights)
    if total % 2:
        return False
    half = total // 2
    return any(
        sum(c) == half
        for r in range(len(weights) + 1)
        for c in itertools.combinations(weights, r)
    )


def gen_partition_reduction(weights: Sequence[int], n: int) -> Generated:
    """Block-diagonal instance: agent i values its own copy (i, j) of each weight.

    Item (i, j) has index i * r + j. Minimum cuts are 0 if the weights split
    into two equal-sum halves and n otherwise.
    """
    weights = [int(w) for w in weights]
    if not weights or any(w <= 0 for w in weights):
        raise ValueError("weights must be positive integers")
    if n < 1:
        raise ValueError("n must be positive")
    r = len(weights)
    rows = [[weights[j] if block == i else 0 for block in range(n) for j in range(r)] for i in range(n)]
    partitionable = has_equal_bipartition(weights) if r <= BIPARTITION_MAX_WEIGHTS else None
    meta = {
        "generator": "partition-reduction",
        "weights": weights,
        "n": n,
        "partitionable": partitionable,
        "expected_min_cuts": None if partitionable is None else (0 if partitionable else n),
    }
    return Generated(Instance.from_rows(rows), meta)


def smallest_worstcase_b(ratios: Ratios) -> int:
    """Smallest b >= 1 with sum of fractional parts {alpha_l * b} > k - 2."""
    k = ratios.k
    lcd = math.lcm(*(a.denominator for a in ratios))
    for b in range(1, max(lcd, 2)):
        if sum(a * b - math.floor(a * b) for a in ratios) > k - 2:
            return b
    # b = lcd - 1 always qualifies when lcd > 1; lcd == 1 means k == 1
    raise ValueError(f"no b satisfies the fractional-part condition for ratios {ratios}")


def gen_ksplit_worstcase(n: int, ratios: Ratios) -> Generated:
    """n disjoint blocks of b items; agent i values each item of block i at 1/b.

    Every k-splitting with these ratios then needs (k - 1) n cuts.
    """
    if n < 1:
        raise ValueError("n must be positive")
    b = smallest_worstcase_b(ratios)
    unit = Fraction(1, b)
    rows = [[unit if j // b == i else Fraction(0) for j in range(n * b)] for i in range(n)]
    meta = {
        "generator": "ksplit-worstcase",
        "n": n,
        "ratios": str(ratios),
        "b": b,
        "expected_min_cuts": (ratios.k - 1) * n,
    }
    return Generated(Instance.from_rows(rows), meta)


def gen_line_lower_bound(n: int) -> Generated:
    """Primary and secondary items alternating on a line.

    There are n^2 - 1 primaries (even positions) and n^2 - 2 secondaries
    (odd positions). For i < n - 1, agent i values primaries i, i + (n-1),
    ..., i + n(n-1) (0-based primary labels) at 1/(n+1); the last agent
    values every secondary at 1/(n^2 - 2). Item indices follow the line.
    """
    if n < 2:
        raise ValueError("the line construction needs n >= 2")
    primaries, secondaries = n * n - 1, n * n - 2
    m = primaries + secondaries
    rows = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n - 1):
        for t in range(n + 1):
            rows[i][2 * (i + t * (n - 1))] = Fraction(1, n + 1)
    for s in range(secondaries):
        rows[n - 1][2 * s + 1] = Fraction(1, secondaries)
    ratios = Ratios((Fraction(1, n), Fraction(n - 1, n)))
    meta = {
        "generator": "line-lower-bound",
        "n": n,
        "order": list(range(m)),
        "ratios": str(ratios),
        "expected_min_line_cuts": 2 * n - 4,
    }
    return Generated(Instance.from_rows(rows), meta)


def gen_single_valued(n: int, m: int) -> Instance:
    """Agent i values only item i (at 1); items n..m-1 are worthless to all."""
    if m < n:
        raise ValueError("need at least one item per agent")
    return Instance.from_rows([[1 if j == i else 0 for j in range(m)] for i in range(n)])


def gen_agreeable_tight(n: int, m: int) -> Generated:
    """Instance whose smallest agreeable set has exactly floor((m + n) / 2) items.

    Agents 0..n-2 each value one distinct item; the last agent values the
    remaining m - n + 1 items equally. An agreeable set must contain the
    n - 1 single items and at least half (rounded up) of the rest.
    """
    if n < 1 or m < n:
        raise ValueError("need n >= 1 and m >= n")
    rows = [[1 if j == i else 0 for j in range(m)] for i in range(n - 1)]
    rows.append([1 if j >= n - 1 else 0 for j in range(m)])
    meta = {"generator": "agreeable-tight", "n": n, "m": m, "expected_min_size": (m + n) // 2}
    return Generated(Instance.from_rows(rows), meta)
