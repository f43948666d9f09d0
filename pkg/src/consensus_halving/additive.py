"""Exact solvers for additive utilities.

* :func:`solve_halving` - consensus halving with at most min(n, m) cuts, by
  walking from the all-halves point to a vertex of the halving polytope.
* :func:`solve_two_splitting` / :func:`solve_k_splitting` - the same walk for
  arbitrary ratios, applied successively for k > 2 parts.
* :func:`greedy_one_cut` - single-agent k-splitting that cuts one item.
* :func:`check_eps_halving` - exact epsilon-approximate halving test.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    DimensionError,
    FractionalSplit,
    Instance,
    Ratios,
    TheoremViolation,
    additive_value,
    to_rational,
)
from .linalg import ColumnBasis, integer_rows

try:
    from gmpy2 import mpq, mpz
except ImportError:  # pragma: no cover - pure Python fallback
    mpq, mpz = Fraction, int

__all__ = [
    "HalvingTrace",
    "solve_halving",
    "solve_two_splitting",
    "solve_k_splitting",
    "greedy_one_cut",
    "check_eps_halving",
    "halving_residuals",
]


@dataclass
class HalvingTrace:
    """Record of one run of the vertex walk.

    ``iterations`` holds ``(j_star, gamma, x_after)`` per loop pass and
    ``pinned`` the ordered pins ``(item, value)``; pinned values are 0 or 1.
    """

    iterations: list[tuple[int, Fraction, tuple[Fraction, ...]]] = field(default_factory=list)
    pinned: list[tuple[int, Fraction]] = field(default_factory=list)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _vertex_walk(utilities: Sequence[Sequence[Fraction]], m: int, alpha: Fraction) -> tuple[list[Fraction], HalvingTrace]:
    """Move from x = (alpha, ..., alpha) to a point with at most n fractional entries.

    Every pass finds y != x solving the agents' equations together with the
    pins, steps along y - x until some coordinate hits 0 or 1, and pins it.

    The full system (agent rows plus one unit row per pin) is never
    materialized. Pinned columns are always pivots of its echelon form, so
    the lowest free column is the first unpinned column that depends on the
    unpinned columns before it (at most n + 1 columns in). Bumping it by one
    and back-substituting moves only those columns. The scan keeps its
    elimination state between passes: pinning the item at basis position p
    invalidates only positions >= p.
    """
    n = len(utilities)
    scaled = integer_rows(utilities)
    columns = [[mpz(scaled[i][j]) for i in range(n)] for j in range(m)]
    # hot loop runs on gmpy2 rationals; ``xf`` mirrors x as Fractions and is
    # refreshed only where x moved
    x = [mpq(alpha.numerator, alpha.denominator)] * m
    xf = [alpha] * m
    trace = HalvingTrace()
    pinned = [False] * m
    basis = ColumnBasis()
    while True:
        start = basis.keys[-1] + 1 if len(basis) else 0
        combo = None
        for j in range(start, m):
            if pinned[j]:
                continue
            combo = basis.push(j, columns[j])
            if combo is not None:
                free_j = j
                break
        if combo is None:
            break
        lead = combo[free_j]
        direction = {j: mpq(v, lead) for j, v in combo.items()}
        # y = x + d; gamma_j is the step at which coordinate j reaches 0 or 1
        best_j, best_gamma = None, None
        for j in sorted(direction):
            d = direction[j]
            if d > 0:
                gamma = (1 - x[j]) / d
            else:
                gamma = x[j] / -d
            if best_gamma is None or gamma < best_gamma:
                best_j, best_gamma = j, gamma
        for j, d in direction.items():
            x[j] = x[j] + best_gamma * d
            xf[j] = _to_fraction(x[j])
        # exact arithmetic: the step lands j* on the boundary, never past it
        if x[best_j] not in (0, 1):
            raise TheoremViolation(f"pinned coordinate {best_j} is {x[best_j]}, not 0 or 1")
        pinned[best_j] = True
        if best_j != free_j:
            basis.truncate(basis.keys.index(best_j))
        trace.pinned.append((best_j, xf[best_j]))
        trace.iterations.append((best_j, _to_fraction(best_gamma), tuple(xf)))
    return xf, trace


def _two_split(inst: Instance, alpha: Fraction) -> tuple[FractionalSplit, HalvingTrace]:
    n, m = inst.n, inst.m
    if n >= m:
        return FractionalSplit.from_first_part([alpha] * m), HalvingTrace()
    x, trace = _vertex_walk(inst.utilities, m, alpha)
    return FractionalSplit.from_first_part(x), trace


def solve_halving(inst: Instance) -> tuple[FractionalSplit, HalvingTrace]:
    """Consensus halving with at most min(n, m) cut items.

    >>> split, _ = solve_halving(Instance.from_rows([[1, 1]]))
    >>> split.column(0)
    (Fraction(0, 1), Fraction(1, 1))
    """
    return _two_split(inst, Fraction(1, 2))


def solve_two_splitting(inst: Instance, ratios: Ratios) -> FractionalSplit:
    """Two parts with u_i(part 1) = alpha_1 * u_i(M) for every agent."""
    if ratios.k != 2:
        raise ValueError(f"two-splitting needs exactly 2 ratios, got {ratios.k}")
    split, _ = _two_split(inst, ratios[0])
    return split


def solve_k_splitting(inst: Instance, ratios: Ratios) -> FractionalSplit:
    """Consensus k-splitting with at most (k-1) * min(n, m) cuts.

    Part l is carved out of what remains with ratio
    alpha_l / (alpha_l + ... + alpha_k). The remaining fractional set is
    represented by a per-item mass; the two-splitting runs on the instance
    whose utilities are scaled by that mass, restricted to items that still
    have positive mass.
    """
    k = ratios.k
    if k < 2:
        raise ValueError("k-splitting needs at least two parts")
    if k == 2:
        return solve_two_splitting(inst, ratios)
    m = inst.m
    parts = [[Fraction(0)] * k for _ in range(m)]
    remaining = [Fraction(1)] * m
    tail = Fraction(1)
    for ell in range(k - 1):
        ratio = ratios[ell] / tail
        live = [j for j in range(m) if remaining[j] > 0]
        if live:
            sub = Instance.from_rows(
                ([u[j] * remaining[j] for j in live] for u in inst.utilities),
                allow_negative=True,
            )
            split, _ = _two_split(sub, ratio)
            for s, j in enumerate(live):
                taken = split.fractions[s][0] * remaining[j]
                parts[j][ell] = taken
                remaining[j] -= taken
        tail -= ratios[ell]
    for j in range(m):
        parts[j][k - 1] = remaining[j]
    return FractionalSplit(tuple(tuple(row) for row in parts), k)


def greedy_one_cut(u: Sequence, ratios: Ratios, require_condition: bool = True) -> FractionalSplit | None:
    """Single-agent k-splitting that cuts only a most valuable item j*.

    The greedy packing places the other items in decreasing order of value
    (ties by index), each into the lowest-index part that still has room
    under its target alpha_l * u(M); j* then fills every part's slack.

    The packing is guaranteed to place everything when the low-utility items
    (value at most u(j*)/k) are worth at least k * u(j*) in total. By default
    ``None`` is returned when that condition fails, without trying. With
    ``require_condition=False`` the packing is attempted anyway and ``None``
    means it got stuck.
    """
    u = [to_rational(v) for v in u]
    if any(v < 0 for v in u):
        raise ValueError("greedy_one_cut needs nonnegative utilities")
    m, k = len(u), ratios.k
    if m == 0:
        return None
    j_star = max(range(m), key=lambda j: (u[j], -j))
    top = u[j_star]
    low_total = sum((v for v in u if v <= top / k), Fraction(0))
    guaranteed = low_total >= k * top
    if require_condition and not guaranteed:
        return None

    total = sum(u, Fraction(0))
    targets = [a * total for a in ratios]
    filled = [Fraction(0)] * k
    rows = [[Fraction(0)] * k for _ in range(m)]
    order = sorted((j for j in range(m) if j != j_star), key=lambda j: (-u[j], j))
    for j in order:
        ell = next((p for p in range(k) if filled[p] + u[j] <= targets[p]), None)
        if ell is None:
            if guaranteed:
                raise TheoremViolation(f"greedy packing stalled at item {j} although the condition holds")
            return None
        filled[ell] += u[j]
        rows[j][ell] = Fraction(1)
    if top == 0:
        rows[j_star][0] = Fraction(1)
    else:
        for p in range(k):
            rows[j_star][p] = (targets[p] - filled[p]) / top
    return FractionalSplit(tuple(tuple(r) for r in rows), k)


def halving_residuals(inst: Instance, split: FractionalSplit) -> list[Fraction]:
    """Per-agent u_i(M_1) - u_i(M_2)."""
    if split.m != inst.m:
        raise DimensionError("split and instance disagree on m")
    if split.k != 2:
        raise ValueError("halving residuals need a two-part split")
    return [
        additive_value(inst, i, split.column(0)) - additive_value(inst, i, split.column(1))
        for i in range(inst.n)
    ]


def check_eps_halving(inst: Instance, split: FractionalSplit, eps) -> bool:
    """True iff |u_i(M_1) - u_i(M_2)| <= eps * u_i(M) for every agent."""
    if split.k != 2:
        raise ValueError(f"epsilon-halving is defined for two parts, got k={split.k}")
    eps = to_rational(eps)
    return all(abs(r) <= eps * inst.total(i) for i, r in enumerate(halving_residuals(inst, split)))
