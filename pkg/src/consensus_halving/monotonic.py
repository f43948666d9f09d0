"""Monotonic (set-function) utilities.

Oracles answer ``u_i(S)`` for whole-item sets and count their calls. On top of
them sit the two standard continuous extensions, a brute-force discrete
consensus halving, the linear-time two-agent Exact1 moving-knife procedure,
an exact halving solver for Lovasz-extended utilities with few agents, and a
numeric solver for a three-item instance whose only halvings are irrational.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import (
    DimensionError,
    FractionalSplit,
    GuardError,
    Instance,
    TheoremViolation,
    to_rational,
)
from .linalg import AffineSystem, box_feasible

__all__ = [
    "UtilityOracle",
    "AdditiveOracle",
    "SymmetricThresholdUtility",
    "SymmetricThresholdOracle",
    "CoverageOracle",
    "TableOracle",
    "FunctionOracle",
    "oracle_from_json",
    "eval_symmetric_threshold",
    "lovasz_extension",
    "multilinear_extension",
    "solve_discrete_halving",
    "check_discrete_halving",
    "CircleState",
    "Exact1Result",
    "austin_exact1",
    "check_exact1",
    "exact1_to_discrete",
    "solve_lovasz_halving",
    "Table1Result",
    "table1_oracle",
    "solve_table1_instance",
]

MULTILINEAR_MAX_ITEMS = 20
DISCRETE_MAX_AGENTS = 4
LOVASZ_MAX_AGENTS = 3


# ---------------------------------------------------------------------------
# oracles


class UtilityOracle:
    """Value queries ``u_i(S)`` for whole-item sets, with per-agent call counts.

    Subclasses implement :meth:`_evaluate`. The counter is a plain list and is
    not locked; concurrent callers may see slightly low counts.
    """

    def __init__(self, n: int, m: int):
        if n < 1:
            raise ValueError("an oracle needs at least one agent")
        if m < 0:
            raise ValueError("item count must be nonnegative")
        self.n = n
        self.m = m
        self.calls = [0] * n

    def value(self, agent: int, items: Iterable[int]) -> Fraction:
        if not 0 <= agent < self.n:
            raise DimensionError(f"agent {agent} out of range for n={self.n}")
        s = frozenset(items)
        if any(not 0 <= j < self.m for j in s):
            raise DimensionError(f"set {sorted(s)} has items outside 0..{self.m - 1}")
        self.calls[agent] += 1
        return self._evaluate(agent, s)

    __call__ = value

    def reset_calls(self) -> None:
        self.calls = [0] * self.n

    def _evaluate(self, agent: int, items: frozenset) -> Fraction:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no JSON form")


class AdditiveOracle(UtilityOracle):
    def __init__(self, inst: Instance):
        super().__init__(inst.n, inst.m)
        self.instance = inst

    def _evaluate(self, agent, items):
        row = self.instance.utilities[agent]
        return sum((row[j] for j in items), Fraction(0))

    def to_json(self):
        return {"kind": "additive", **self.instance.to_json()}


@dataclass(frozen=True)
class SymmetricThresholdUtility:
    """Additive base values with a per-(agent, item) cap ``c`` in [0, 1/2).

    A fraction x of item j is worth ``f(x) * u_i(j)`` where f is 0 up to c,
    1 from 1 - c on, and linear in between.
    """

    base: Instance
    caps: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        caps = tuple(tuple(to_rational(c) for c in row) for row in self.caps)
        object.__setattr__(self, "caps", caps)
        if len(caps) != self.base.n or any(len(row) != self.base.m for row in caps):
            raise DimensionError("caps must be an n x m matrix matching the base instance")
        if any(not 0 <= c < Fraction(1, 2) for row in caps for c in row):
            raise ValueError("caps must lie in [0, 1/2)")


def _threshold_response(x: Fraction, c: Fraction) -> Fraction:
    if x <= c:
        return Fraction(0)
    if x >= 1 - c:
        return Fraction(1)
    return (x - c) / (1 - 2 * c)


def eval_symmetric_threshold(u: SymmetricThresholdUtility, agent: int, x: Sequence) -> Fraction:
    """Value of the fractional set x for ``agent``."""
    if len(x) != u.base.m:
        raise DimensionError(f"x has length {len(x)}, expected m={u.base.m}")
    x = [to_rational(v) for v in x]
    if any(not 0 <= v <= 1 for v in x):
        raise ValueError("fractions must lie in [0, 1]")
    row, caps = u.base.utilities[agent], u.caps[agent]
    return sum((_threshold_response(v, c) * w for v, c, w in zip(x, caps, row)), Fraction(0))


class SymmetricThresholdOracle(UtilityOracle):
    """Whole-item view of a symmetric-threshold utility (additive on sets)."""

    def __init__(self, utility: SymmetricThresholdUtility):
        super().__init__(utility.base.n, utility.base.m)
        self.utility = utility

    def _evaluate(self, agent, items):
        row = self.utility.base.utilities[agent]
        return sum((row[j] for j in items), Fraction(0))

    def fractional(self, agent: int, x: Sequence) -> Fraction:
        return eval_symmetric_threshold(self.utility, agent, x)

    def to_json(self):
        return {
            "kind": "symmetric-threshold",
            **self.utility.base.to_json(),
            "caps": [[str(c) for c in row] for row in self.utility.caps],
        }


class CoverageOracle(UtilityOracle):
    """Weighted coverage: item j covers a set of ground elements for each agent.

    ``u_i(S)`` is the total weight of ground elements covered by some item of S.
    Coverage functions are monotone and submodular.
    """

    def __init__(self, weights: Sequence[Sequence], covers: Sequence[Sequence[Iterable[int]]]):
        n = len(weights)
        if len(covers) != n:
            raise DimensionError("weights and covers disagree on the number of agents")
        m = len(covers[0]) if n else 0
        if any(len(c) != m for c in covers):
            raise DimensionError("every agent needs one cover per item")
        super().__init__(n, m)
        self.weights = tuple(tuple(to_rational(w) for w in row) for row in weights)
        if any(w < 0 for row in self.weights for w in row):
            raise ValueError("coverage weights must be nonnegative")
        self.covers = tuple(tuple(frozenset(c) for c in row) for row in covers)
        for i, row in enumerate(self.covers):
            for c in row:
                if any(not 0 <= e < len(self.weights[i]) for e in c):
                    raise DimensionError(f"agent {i} covers an unknown ground element")

    def _evaluate(self, agent, items):
        covered = frozenset().union(*(self.covers[agent][j] for j in items)) if items else frozenset()
        w = self.weights[agent]
        return sum((w[e] for e in covered), Fraction(0))

    def to_json(self):
        return {
            "kind": "coverage",
            "n": self.n,
            "m": self.m,
            "weights": [[str(w) for w in row] for row in self.weights],
            "covers": [[sorted(c) for c in row] for row in self.covers],
        }


def _table_key(items: Iterable[int]) -> str:
    return ",".join(str(j) for j in sorted(items))


class TableOracle(UtilityOracle):
    """Explicit value table per agent, keyed by frozenset. Missing sets raise."""

    def __init__(self, m: int, tables: Sequence[dict]):
        super().__init__(len(tables), m)
        self.tables = tuple({frozenset(k): to_rational(v) for k, v in t.items()} for t in tables)

    def _evaluate(self, agent, items):
        try:
            return self.tables[agent][items]
        except KeyError:
            raise KeyError(f"agent {agent} has no table entry for {sorted(items)}") from None

    def to_json(self):
        return {
            "kind": "table",
            "n": self.n,
            "m": self.m,
            "tables": [{_table_key(s): str(v) for s, v in sorted(t.items(), key=lambda kv: sorted(kv[0]))} for t in self.tables],
        }


class FunctionOracle(UtilityOracle):
    """Wraps ``fn(agent, frozenset) -> value``."""

    def __init__(self, n: int, m: int, fn: Callable[[int, frozenset], object]):
        super().__init__(n, m)
        self.fn = fn

    def _evaluate(self, agent, items):
        return to_rational(self.fn(agent, items))


def oracle_from_json(data: dict) -> UtilityOracle:
    kind = data.get("kind", "additive")
    if kind == "additive":
        return AdditiveOracle(Instance.from_json(data))
    if kind == "symmetric-threshold":
        base = Instance.from_json(data)
        return SymmetricThresholdOracle(SymmetricThresholdUtility(base, tuple(tuple(r) for r in data["caps"])))
    if kind == "coverage":
        oracle = CoverageOracle(data["weights"], data["covers"])
        if "m" in data and data["m"] != oracle.m:
            raise DimensionError(f"declared m={data['m']} but covers have length {oracle.m}")
        return oracle
    if kind == "table":
        tables = [
            {frozenset(int(t) for t in key.split(",") if t.strip()): v for key, v in table.items()}
            for table in data["tables"]
        ]
        return TableOracle(int(data["m"]), tables)
    raise ValueError(f"unknown oracle kind {kind!r}")


# ---------------------------------------------------------------------------
# extensions


def _unit_vector(x: Sequence, m: int) -> list[Fraction]:
    if len(x) != m:
        raise DimensionError(f"x has length {len(x)}, expected m={m}")
    x = [to_rational(v) for v in x]
    if any(not 0 <= v <= 1 for v in x):
        raise ValueError("extension points must lie in [0, 1]^m")
    return x


def lovasz_extension(f: UtilityOracle, agent: int, x: Sequence) -> Fraction:
    """Chain-based extension: sum of lambda_k * f(S_k) over the level sets of x.

    Coordinates are sorted in decreasing order, equal values by item index.
    Terms with a zero coefficient are skipped, so at most m + 1 queries.
    """
    x = _unit_vector(x, f.m)
    order = sorted(range(f.m), key=lambda j: (-x[j], j))
    total = Fraction(0)
    top = x[order[0]] if order else Fraction(0)
    if top < 1:
        total += (1 - top) * f.value(agent, ())
    for k, j in enumerate(order):
        nxt = x[order[k + 1]] if k + 1 < len(order) else Fraction(0)
        lam = x[j] - nxt
        if lam:
            total += lam * f.value(agent, order[: k + 1])
    return total


def multilinear_extension(f: UtilityOracle, agent: int, x: Sequence) -> Fraction:
    """Expected value of f when item j is included independently with prob x_j."""
    if f.m > MULTILINEAR_MAX_ITEMS:
        raise GuardError(f"multilinear extension enumerates 2^m sets; m={f.m} exceeds {MULTILINEAR_MAX_ITEMS}")
    x = _unit_vector(x, f.m)
    ones = [j for j in range(f.m) if x[j] == 1]
    frac = [j for j in range(f.m) if 0 < x[j] < 1]
    total = Fraction(0)
    for mask in range(1 << len(frac)):
        weight = Fraction(1)
        chosen = list(ones)
        for b, j in enumerate(frac):
            if mask >> b & 1:
                weight *= x[j]
                chosen.append(j)
            else:
                weight *= 1 - x[j]
        total += weight * f.value(agent, chosen)
    return total


# ---------------------------------------------------------------------------
# discrete consensus halving


def check_discrete_halving(f: UtilityOracle, m0: Iterable[int], m1: Iterable[int], m2: Iterable[int]) -> bool:
    """u_i(M0 + M1) >= u_i(M2) and u_i(M0 + M2) >= u_i(M1) for every agent."""
    m0, m1, m2 = frozenset(m0), frozenset(m1), frozenset(m2)
    if m0 & m1 or m0 & m2 or m1 & m2 or (m0 | m1 | m2) != frozenset(range(f.m)):
        raise ValueError("M0, M1, M2 must partition the items")
    return all(
        f.value(i, m0 | m1) >= f.value(i, m2) and f.value(i, m0 | m2) >= f.value(i, m1)
        for i in range(f.n)
    )


def _line_layouts(m: int, max_cut: int):
    """Yield (M0, blocks, labels) for layouts with at most ``max_cut`` cuts on the line 0..m-1.

    A cut either goes through an item, which then belongs to M0, or sits in
    the gap before item j (1 <= j < m) and only separates blocks. Gaps next to
    a cut item are skipped as redundant. Each block of whole items between
    consecutive cuts goes wholly to part 1 or part 2. Layouts come ordered by
    |M0|, then by the number of gap cuts, then lexicographically, so the first
    valid layout has the smallest M0.
    """
    for r in range(min(max_cut, m) + 1):
        for m0 in itertools.combinations(range(m), r):
            cut = set(m0)
            gaps = [j for j in range(1, m) if j not in cut and j - 1 not in cut]
            for g in range(min(max_cut - r, len(gaps)) + 1):
                for chosen in itertools.combinations(gaps, g):
                    starts = set(chosen)
                    blocks, current = [], []
                    for j in range(m):
                        if j in cut or j in starts:
                            if current:
                                blocks.append(range(current[0], current[-1] + 1))
                            current = []
                        if j not in cut:
                            current.append(j)
                    if current:
                        blocks.append(range(current[0], current[-1] + 1))
                    for labels in itertools.product((1, 2), repeat=len(blocks)):
                        yield m0, blocks, labels


def solve_discrete_halving(f: UtilityOracle) -> tuple[frozenset, frozenset, frozenset]:
    """Discrete consensus halving (M0, M1, M2) with |M0| <= min(n, m)."""
    if f.n > DISCRETE_MAX_AGENTS:
        raise GuardError(f"discrete halving brute force is limited to n <= {DISCRETE_MAX_AGENTS}, got {f.n}")
    if f.n >= f.m:
        return frozenset(range(f.m)), frozenset(), frozenset()
    for m0, blocks, labels in _line_layouts(f.m, f.n):
        m1 = frozenset(j for blk, lab in zip(blocks, labels) if lab == 1 for j in blk)
        m2 = frozenset(j for blk, lab in zip(blocks, labels) if lab == 2 for j in blk)
        if check_discrete_halving(f, m0, m1, m2):
            return frozenset(m0), m1, m2
    raise TheoremViolation("no discrete consensus halving with at most n items in M0 was found")


# ---------------------------------------------------------------------------
# Exact1 on a circle


@dataclass
class CircleState:
    """Two knives on a circle of items.

    ``order`` lists the items clockwise. Knife positions are gap indices where
    gap g sits just before ``order[g % m]``; they are stored unwrapped so a
    knife that went all the way round is distinguishable from one that never
    moved. Part 2 is the arc from knife 1 clockwise to knife 2, part 1 the rest.
    """

    order: tuple[int, ...]
    knife1: int
    knife2: int
    initial1: int
    initial2: int

    @property
    def m(self) -> int:
        return len(self.order)

    def arcs(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        m = self.m
        part2 = tuple(self.order[g % m] for g in range(self.knife1, self.knife2))
        part1 = tuple(self.order[g % m] for g in range(self.knife2, self.knife1 + m))
        return part1, part2


@dataclass
class Exact1Result:
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    calls: list[int]
    moves: list[str] = field(default_factory=list)


def _ef1_end(value, mine: Sequence[int], other: Sequence[int]) -> bool:
    """``mine`` is worth at least ``other`` minus one of its end items."""
    if not other:
        return True
    mine_v = value(mine)
    return any(mine_v >= value(tuple(j for j in other if j != end)) for end in {other[0], other[-1]})


def _exact1_for(value, part1: Sequence[int], part2: Sequence[int]) -> bool:
    return _ef1_end(value, part1, part2) and _ef1_end(value, part2, part1)


def _memo(f: UtilityOracle, agent: int):
    cache: dict[frozenset, Fraction] = {}

    def value(items):
        key = frozenset(items)
        if key not in cache:
            cache[key] = f.value(agent, key)
        return cache[key]

    return value


def _arcs_of(order: Sequence[int], arcs) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Validate that two item lists are complementary arcs of the circle, in circle order."""
    m = len(order)
    a, b = (tuple(p) for p in arcs)
    if sorted(a + b) != sorted(order):
        raise ValueError("arcs must partition the items")
    pos = {j: p for p, j in enumerate(order)}
    for arc in (a, b):
        if not arc:
            continue
        start = pos[arc[0]]
        if any(pos[j] != (start + t) % m for t, j in enumerate(arc)):
            raise ValueError(f"arc {arc} is not contiguous in clockwise order")
    return a, b


def check_exact1(f: UtilityOracle, arcs, order: Sequence[int] | None = None) -> bool:
    """Strong circle Exact1 for every agent: the removable item is an arc end."""
    order = tuple(range(f.m)) if order is None else tuple(order)
    a, b = _arcs_of(order, arcs)
    return all(_exact1_for(_memo(f, i), a, b) for i in range(f.n))


def austin_exact1(f: UtilityOracle, order: Sequence[int] | None = None) -> Exact1Result:
    """Exact1 partition into two arcs for two agents, with O(m) oracle calls.

    Knife 1 starts at gap 0 and knife 2 at the first gap that makes the
    partition Exact1 for agent 0. Each round returns if agent 1 is also
    satisfied; otherwise one or both knives move one step clockwise, trying
    knife 1 alone, then knife 2 alone, then both, keeping agent 0 satisfied.
    Once a knife reaches the other's starting gap only the other one moves.
    """
    if f.n != 2:
        raise ValueError(f"the moving-knife procedure needs exactly 2 agents, got {f.n}")
    order = tuple(range(f.m)) if order is None else tuple(order)
    if sorted(order) != list(range(f.m)):
        raise ValueError("order must be a permutation of the items")
    m = f.m
    before = list(f.calls)
    v0, v1 = _memo(f, 0), _memo(f, 1)

    def calls():
        return [c - b for c, b in zip(f.calls, before)]

    if m <= 1:
        return Exact1Result(tuple(order), (), calls())

    def state(k1, k2):
        return CircleState(order, k1, k2, k1, k2).arcs()

    b0 = next((b for b in range(1, m) if _exact1_for(v0, *state(0, b))), None)
    if b0 is None:
        raise TheoremViolation("no starting position for the second knife is Exact1 for agent 0")
    circle = CircleState(order, 0, b0, 0, b0)
    moves: list[str] = []
    while True:
        part1, part2 = circle.arcs()
        if _exact1_for(v1, part1, part2):
            return Exact1Result(part1, part2, calls(), moves)
        k1, k2 = circle.knife1, circle.knife2
        if k1 == circle.initial2 and k2 == circle.initial1 + m:
            raise TheoremViolation("both knives completed their sweep without an Exact1 partition for agent 1")
        if k1 == circle.initial2:
            step, nxt = "b", (k1, k2 + 1)
        elif k2 == circle.initial1 + m:
            step, nxt = "a", (k1 + 1, k2)
        else:
            step, nxt = None, None
            for name, cand in (("a", (k1 + 1, k2)), ("b", (k1, k2 + 1)), ("c", (k1 + 1, k2 + 1))):
                if _exact1_for(v0, *state(*cand)):
                    step, nxt = name, cand
                    break
            if step is None:
                raise TheoremViolation("none of the three knife moves keeps the partition Exact1 for agent 0")
        circle.knife1, circle.knife2 = nxt
        moves.append(step)
        if circle.knife1 > circle.initial2 or circle.knife2 > circle.initial1 + m:
            raise TheoremViolation("a knife moved past the other knife's starting gap")
        if not _exact1_for(v0, *circle.arcs()):
            raise TheoremViolation(f"move {step} broke Exact1 for agent 0")


def exact1_to_discrete(f: UtilityOracle, arcs, order: Sequence[int] | None = None) -> tuple[frozenset, frozenset, frozenset]:
    """Each agent that strictly prefers one arc proposes an end item of it for M0."""
    order = tuple(range(f.m)) if order is None else tuple(order)
    a, b = _arcs_of(order, arcs)
    m0: set[int] = set()
    for i in range(f.n):
        value = _memo(f, i)
        va, vb = value(a), value(b)
        if va == vb:
            continue
        mine, other = (a, b) if va < vb else (b, a)
        end = next((j for j in dict.fromkeys((other[0], other[-1])) if value(mine) >= value(tuple(x for x in other if x != j))), None)
        if end is None:
            raise ValueError(f"arcs are not Exact1 for agent {i}")
        m0.add(end)
    m0f = frozenset(m0)
    return m0f, frozenset(a) - m0f, frozenset(b) - m0f


# ---------------------------------------------------------------------------
# exact halving for Lovasz-extended utilities


def _lovasz_linear(f: UtilityOracle, agent: int, whole: frozenset, chain: Sequence[int], complement: bool, var_of: dict[int, int]):
    """Lovasz value of a part as an affine form ``(const, coeffs)`` in the cut fractions.

    The part holds ``whole`` entirely and a fraction z_j of each cut item j,
    where z_j = x_j, or 1 - x_j when ``complement`` is set. ``chain`` lists the
    cut items by decreasing z. Telescoping the chain sum gives
    f(W) + sum_k z_k * (f(W + first k) - f(W + first k-1)).
    """
    coeffs = [Fraction(0)] * len(var_of)
    prev = f.value(agent, whole)
    const = prev
    prefix = set(whole)
    for j in chain:
        prefix.add(j)
        cur = f.value(agent, prefix)
        delta = cur - prev
        if complement:
            const += delta
            coeffs[var_of[j]] -= delta
        else:
            coeffs[var_of[j]] += delta
        prev = cur
    return const, coeffs


def solve_lovasz_halving(f: UtilityOracle) -> FractionalSplit:
    """Exact consensus halving for utilities given by Lovasz extensions.

    Enumerates line layouts as in :func:`solve_discrete_halving`, treating M0
    as the cut items. For every ordering of their fractions the halving
    conditions are linear; each (layout, ordering) pair is decided exactly by
    :func:`box_feasible` with the ordering chain as extra inequalities.
    """
    if f.n > LOVASZ_MAX_AGENTS:
        raise GuardError(f"Lovasz halving brute force is limited to n <= {LOVASZ_MAX_AGENTS}, got {f.n}")
    m = f.m
    if f.n >= m:
        return FractionalSplit.from_first_part([Fraction(1, 2)] * m)
    for m0, blocks, labels in _line_layouts(m, f.n):
        w1 = frozenset(j for blk, lab in zip(blocks, labels) if lab == 1 for j in blk)
        w2 = frozenset(j for blk, lab in zip(blocks, labels) if lab == 2 for j in blk)
        r = len(m0)
        var_of = {j: s for s, j in enumerate(m0)}
        for perm in itertools.permutations(m0):
            # part 1 fractions decrease along perm, so part 2 fractions increase
            system = AffineSystem(r)
            for i in range(f.n):
                c1, a1 = _lovasz_linear(f, i, w1, perm, False, var_of)
                c2, a2 = _lovasz_linear(f, i, w2, perm[::-1], True, var_of)
                system.add([p - q for p, q in zip(a1, a2)], c2 - c1)
            chain = []
            for hi, lo in zip(perm, perm[1:]):
                row = [Fraction(0)] * r
                row[var_of[lo]] += 1
                row[var_of[hi]] -= 1
                chain.append((row, Fraction(0)))
            y = box_feasible(system, [0] * r, [1] * r, chain)
            if y is not None:
                x = [Fraction(1) if j in w1 else Fraction(0) for j in range(m)]
                for j in m0:
                    x[j] = y[var_of[j]]
                return FractionalSplit.from_first_part(x)
    raise TheoremViolation("no layout and ordering admits a Lovasz consensus halving")


# ---------------------------------------------------------------------------
# the three-item instance with irrational halvings


TABLE1_VALUES = (
    # items 0, 1, 2 ; the second agent swaps the roles of items 1 and 2
    {(): 0, (0,): 1, (1,): 10, (2,): 2, (0, 1): 12, (0, 2): 3, (1, 2): 14, (0, 1, 2): 20},
    {(): 0, (0,): 1, (1,): 2, (2,): 10, (0, 1): 3, (0, 2): 12, (1, 2): 14, (0, 1, 2): 20},
)


def table1_oracle() -> TableOracle:
    return TableOracle(3, [{frozenset(k): v for k, v in t.items()} for t in TABLE1_VALUES])


@dataclass(frozen=True)
class Table1Result:
    """Approximate halving of the three-item instance.

    Item 0 goes wholly to part 1; items 1 and 2 each put ``x`` into part 1.
    ``residuals`` are the exact multilinear u_i(part 1) - u_i(part 2) at ``x``.
    """

    x: Fraction
    bracket: tuple[Fraction, Fraction]
    residuals: tuple[Fraction, Fraction]

    @property
    def x2(self) -> Fraction:
        return self.x

    @property
    def x3(self) -> Fraction:
        return self.x

    def decimal(self, digits: int = 15) -> str:
        scaled = self.x * 10**digits
        q = scaled.numerator * 2 // scaled.denominator
        q = (q + 1) // 2  # round half up
        s = str(q).rjust(digits + 1, "0")
        return f"{s[:-digits]}.{s[-digits:]}"


def _quadratic(x: Fraction) -> Fraction:
    return 4 * x * x + 29 * x - 13


def solve_table1_instance(tol: Fraction = Fraction(1, 10**12)) -> Table1Result:
    """Bisect 4x^2 + 29x - 13 on [0, 1] with exact rationals to width ``tol``."""
    lo, hi = Fraction(0), Fraction(1)
    if not (_quadratic(lo) < 0 < _quadratic(hi)):
        raise TheoremViolation("the quadratic does not change sign on [0, 1]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _quadratic(mid) <= 0:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    f = table1_oracle()
    part1 = (Fraction(1), x, x)
    part2 = (Fraction(0), 1 - x, 1 - x)
    residuals = tuple(multilinear_extension(f, i, part1) - multilinear_extension(f, i, part2) for i in range(2))
    return Table1Result(x, (lo, hi), residuals)  # type: ignore[arg-type]
