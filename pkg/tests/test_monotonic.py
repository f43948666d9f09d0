import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from consensus_halving.core import GuardError, Instance, additive_value
from consensus_halving.monotonic import (
    AdditiveOracle,
    CircleState,
    CoverageOracle,
    FunctionOracle,
    SymmetricThresholdOracle,
    SymmetricThresholdUtility,
    TableOracle,
    austin_exact1,
    check_discrete_halving,
    check_exact1,
    eval_symmetric_threshold,
    exact1_to_discrete,
    lovasz_extension,
    multilinear_extension,
    oracle_from_json,
    solve_discrete_halving,
    solve_lovasz_halving,
    solve_table1_instance,
    table1_oracle,
)
from strategies import instances


class Recorder(FunctionOracle):
    """Distinct power-of-two value per set, so a weighted sum pins down its terms."""

    def __init__(self, m):
        self.table = {frozenset(s): F(2) ** (len(s) * m + sum(s)) for r in range(m + 1) for s in itertools.combinations(range(m), r)}
        super().__init__(1, m, lambda i, s: self.table[s])

    def f(self, *items):
        return self.table[frozenset(items)]


def test_lovasz_worked_example():
    # [PUBLISHED] x = (1, 0.1, 0.3): 0.7 f({1}) + 0.2 f({1,3}) + 0.1 f({1,2,3}) (1-based labels)
    rec = Recorder(3)
    x = (F(1), F(1, 10), F(3, 10))
    expected = F(7, 10) * rec.f(0) + F(2, 10) * rec.f(0, 2) + F(1, 10) * rec.f(0, 1, 2)
    assert lovasz_extension(rec, 0, x) == expected
    assert rec.calls[0] <= 4


def test_multilinear_worked_example():
    # [PUBLISHED] 0.63 f({1}) + 0.07 f({1,2}) + 0.27 f({1,3}) + 0.03 f({1,2,3})
    rec = Recorder(3)
    x = (F(1), F(1, 10), F(3, 10))
    expected = F(63, 100) * rec.f(0) + F(7, 100) * rec.f(0, 1) + F(27, 100) * rec.f(0, 2) + F(3, 100) * rec.f(0, 1, 2)
    assert multilinear_extension(rec, 0, x) == expected


@given(st.integers(1, 6).flatmap(lambda m: st.lists(st.booleans(), min_size=m, max_size=m)))
def test_extensions_agree_with_f_on_integral_points(bits):
    rec = Recorder(len(bits))
    x = [F(int(b)) for b in bits]
    support = [j for j, b in enumerate(bits) if b]
    assert lovasz_extension(rec, 0, x) == rec.f(*support)
    assert multilinear_extension(rec, 0, x) == rec.f(*support)


@st.composite
def additive_point(draw):
    inst = draw(instances(max_n=2, max_m=7))
    x = [F(draw(st.integers(0, 10)), 10) for _ in range(inst.m)]
    return inst, x


@given(additive_point())
def test_extensions_of_additive_functions(pair):
    # [DERIVED] both extensions of an additive set function are the linear form
    inst, x = pair
    f = AdditiveOracle(inst)
    for i in range(inst.n):
        assert lovasz_extension(f, i, x) == additive_value(inst, i, x)
        assert multilinear_extension(f, i, x) == additive_value(inst, i, x)


def random_coverage(rng, n, m, ground=6):
    weights = [[rng.randint(0, 4) for _ in range(ground)] for _ in range(n)]
    covers = [[rng.sample(range(ground), rng.randint(0, 3)) for _ in range(m)] for _ in range(n)]
    return CoverageOracle(weights, covers)


@given(st.integers(0, 10**6), st.integers(1, 6), st.data())
def test_extensions_are_monotone(seed, m, data):
    rng = random.Random(seed)
    f = random_coverage(rng, 1, m)
    x = [F(data.draw(st.integers(0, 8)), 8) for _ in range(m)]
    j = data.draw(st.integers(0, m - 1))
    y = list(x)
    y[j] = x[j] + (1 - x[j]) * F(data.draw(st.integers(0, 4)), 4)
    assert lovasz_extension(f, 0, y) >= lovasz_extension(f, 0, x)
    assert multilinear_extension(f, 0, y) >= multilinear_extension(f, 0, x)


def test_multilinear_guard():
    f = FunctionOracle(1, 21, lambda i, s: len(s))
    with pytest.raises(GuardError):
        multilinear_extension(f, 0, [0] * 21)


def test_symmetric_threshold_examples():
    base = Instance.from_rows([[3, 5]])
    flat = SymmetricThresholdUtility(base, ((0, 0),))
    x = (F(1, 4), F(2, 3))
    assert eval_symmetric_threshold(flat, 0, x) == additive_value(base, 0, x)
    capped = SymmetricThresholdUtility(Instance.from_rows([[1]]), ((F(1, 3),),))
    # [PUBLISHED] breakpoints at c and 1 - c
    assert eval_symmetric_threshold(capped, 0, [F(1, 3)]) == 0
    assert eval_symmetric_threshold(capped, 0, [F(2, 3)]) == 1
    assert eval_symmetric_threshold(capped, 0, [F(1, 2)]) == F(1, 2)
    with pytest.raises(ValueError):
        SymmetricThresholdUtility(Instance.from_rows([[1]]), ((F(1, 2),),))
    with pytest.raises(ValueError):
        eval_symmetric_threshold(capped, 0, [F(3, 2)])


@given(st.integers(0, 8), st.integers(0, 5))
def test_threshold_response_is_symmetric(num, cap):
    c = F(cap, 11)
    u = SymmetricThresholdUtility(Instance.from_rows([[1]]), ((c,),))
    x = F(num, 8)
    assert eval_symmetric_threshold(u, 0, [x]) + eval_symmetric_threshold(u, 0, [1 - x]) == 1


def test_oracle_json_round_trips():
    rng = random.Random(0)
    cov = random_coverage(rng, 2, 4)
    thr = SymmetricThresholdOracle(SymmetricThresholdUtility(Instance.from_rows([[1, 2]]), ((F(1, 4), 0),)))
    add = AdditiveOracle(Instance.from_rows([[1, 2], [3, 4]]))
    for oracle in (cov, thr, add, table1_oracle()):
        clone = oracle_from_json(oracle.to_json())
        for i in range(oracle.n):
            for r in range(oracle.m + 1):
                for s in itertools.combinations(range(oracle.m), r):
                    assert clone.value(i, s) == oracle.value(i, s)
    with pytest.raises(ValueError):
        oracle_from_json({"kind": "mystery"})


def test_call_counter():
    f = AdditiveOracle(Instance.from_rows([[1, 2]]))
    f.value(0, [0])
    f.value(0, [])
    assert f.calls == [2]
    f.reset_calls()
    assert f.calls == [0]


def brute_force_discrete(f):
    """Smallest |M0| over all 3^m labelings (independent of the line layout)."""
    best = None
    for labels in itertools.product(range(3), repeat=f.m):
        parts = [frozenset(j for j in range(f.m) if labels[j] == t) for t in range(3)]
        ok = all(
            f.value(i, parts[0] | parts[1]) >= f.value(i, parts[2]) and f.value(i, parts[0] | parts[2]) >= f.value(i, parts[1])
            for i in range(f.n)
        )
        if ok and (best is None or len(parts[0]) < best):
            best = len(parts[0])
    return best


def test_discrete_halving_examples():
    f = AdditiveOracle(Instance.from_rows([[1, 1]]))
    m0, m1, m2 = solve_discrete_halving(f)
    assert m0 == frozenset() and check_discrete_halving(f, m0, m1, m2)
    # [PUBLISHED] single distinct valued items all land in M0
    g = AdditiveOracle(Instance.from_rows([[1, 0, 0], [0, 1, 0]]))
    m0, _, _ = solve_discrete_halving(g)
    assert {0, 1} <= m0
    # [DERIVED] exhaustive 3^3 check
    h = AdditiveOracle(Instance.from_rows([[3, 1, 1], [1, 1, 3]]))
    m0, m1, m2 = solve_discrete_halving(h)
    assert len(m0) <= 2 and check_discrete_halving(h, m0, m1, m2)
    assert brute_force_discrete(h) <= len(m0)


def test_discrete_halving_guard():
    with pytest.raises(GuardError):
        solve_discrete_halving(AdditiveOracle(Instance.from_rows([[1] * 6] * 5)))


@given(st.integers(0, 10**6))
def test_discrete_halving_random_coverage(seed):
    rng = random.Random(seed)
    f = random_coverage(rng, rng.randint(1, 3), rng.randint(1, 7))
    m0, m1, m2 = solve_discrete_halving(f)
    assert len(m0) <= min(f.n, f.m)
    assert check_discrete_halving(f, m0, m1, m2)


def all_arc_pairs(m):
    for a in range(m):
        for length in range(m + 1):
            part2 = tuple((a + t) % m for t in range(length))
            part1 = tuple((a + length + t) % m for t in range(m - length))
            yield part1, part2


def test_exact1_identical_agents():
    f = AdditiveOracle(Instance.from_rows([[1, 1, 1, 1]] * 2))
    res = austin_exact1(f)
    assert check_exact1(f, (res.part1, res.part2))
    assert check_exact1(f, ((0, 1), (2, 3)))


def test_exact1_single_valued_agents():
    f = AdditiveOracle(Instance.from_rows([[1, 0, 0, 0], [0, 0, 1, 0]]))
    res = austin_exact1(f)
    assert check_exact1(f, (res.part1, res.part2))
    # [DERIVED] an exhaustive scan finds valid pairs and the checker agrees with the definition
    valid = [pair for pair in all_arc_pairs(4) if check_exact1(f, pair)]
    assert valid
    assert (res.part1, res.part2) in valid


def test_check_exact1_rejects_non_arcs():
    f = AdditiveOracle(Instance.from_rows([[1, 1, 1, 1]] * 2))
    with pytest.raises(ValueError):
        check_exact1(f, ((0, 2), (1, 3)))
    with pytest.raises(ValueError):
        check_exact1(f, ((0, 1), (2,)))


def test_exact1_only_end_items_count():
    # removing the middle item of (0, 1, 2) would help, removing an end does not
    f = AdditiveOracle(Instance.from_rows([[0, 5, 0, 1], [0, 5, 0, 1]]))
    assert not check_exact1(f, ((3,), (0, 1, 2)))


def test_circle_state_arcs():
    s = CircleState((0, 1, 2, 3), 1, 3, 1, 3)
    assert s.arcs() == ((3, 0), (1, 2))
    s.knife1 = 3
    assert s.arcs() == ((3, 0, 1, 2), ())


@given(st.integers(0, 10**6))
def test_austin_on_random_monotone_oracles(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 10)
    kind = rng.choice(["additive", "threshold", "coverage"])
    if kind == "coverage":
        f = random_coverage(rng, 2, m)
    else:
        inst = Instance.from_rows([[rng.randint(0, 6) for _ in range(m)] for _ in range(2)])
        if kind == "additive":
            f = AdditiveOracle(inst)
        else:
            caps = tuple(tuple(F(rng.randint(0, 4), 10) for _ in range(m)) for _ in range(2))
            f = SymmetricThresholdOracle(SymmetricThresholdUtility(inst, caps))
    res = austin_exact1(f)
    assert check_exact1(f, (res.part1, res.part2))
    assert max(res.calls) <= 40 * m
    assert res.moves.count("a") + res.moves.count("c") <= m
    assert res.moves.count("b") + res.moves.count("c") <= m
    m0, m1, m2 = exact1_to_discrete(f, (res.part1, res.part2))
    assert len(m0) <= 2 and check_discrete_halving(f, m0, m1, m2)


def test_austin_needs_two_agents():
    with pytest.raises(ValueError):
        austin_exact1(AdditiveOracle(Instance.from_rows([[1, 2]])))


def test_exact1_to_discrete_examples():
    f = AdditiveOracle(Instance.from_rows([[1, 1, 1, 1], [1, 1, 1, 1]]))
    assert exact1_to_discrete(f, ((0, 1), (2, 3))) == (frozenset(), frozenset({0, 1}), frozenset({2, 3}))
    g = AdditiveOracle(Instance.from_rows([[1, 1, 1, 0], [1, 1, 1, 0]]))
    m0, m1, m2 = exact1_to_discrete(g, ((3, 0), (1, 2)))
    assert m0 == {2} or m0 == {1}
    with pytest.raises(ValueError):
        exact1_to_discrete(AdditiveOracle(Instance.from_rows([[1, 1, 1, 0], [0, 0, 0, 0]])), ((3,), (0, 1, 2)))


def halving_values(f, split):
    return [(lovasz_extension(f, i, split.column(0)), lovasz_extension(f, i, split.column(1))) for i in range(f.n)]


def test_lovasz_halving_examples():
    f = AdditiveOracle(Instance.from_rows([[1, 1, 1]]))
    split = solve_lovasz_halving(f)
    assert all(a == b for a, b in halving_values(f, split))
    assert sum(1 for x in split.column(0) if 0 < x < 1) <= 1
    one = solve_lovasz_halving(AdditiveOracle(Instance.from_rows([[4]])))
    assert one.column(0) == (F(1, 2),)
    g = FunctionOracle(2, 4, lambda i, s: min(len(s), 2))
    split = solve_lovasz_halving(g)
    assert all(a == b for a, b in halving_values(g, split))


@given(st.integers(0, 10**6))
def test_lovasz_halving_random_coverage(seed):
    rng = random.Random(seed)
    f = random_coverage(rng, rng.randint(1, 2), rng.randint(1, 5))
    split = solve_lovasz_halving(f)
    assert all(a == b for a, b in halving_values(f, split))
    assert sum(1 for x in split.column(0) if 0 < x < 1) <= min(f.n, f.m)


def test_lovasz_halving_guard():
    with pytest.raises(GuardError):
        solve_lovasz_halving(AdditiveOracle(Instance.from_rows([[1] * 5] * 4)))


def test_table1_instance():
    res = solve_table1_instance()
    # [PUBLISHED] x2 = x3 ~ 0.4235
    assert F(4234, 10000) <= res.x <= F(4236, 10000)
    assert res.x2 == res.x3
    assert abs(4 * res.x**2 + 29 * res.x - 13) <= F(1, 10**9)
    # [PUBLISHED] agent 1 equation -13 + 23 x2 + 6 x3 + 4 x2 x3 = 0
    assert abs(-13 + 23 * res.x2 + 6 * res.x3 + 4 * res.x2 * res.x3) <= F(1, 10**9)
    assert all(abs(r) <= F(1, 10**9) for r in res.residuals)
    assert res.decimal(4) == "0.4235"


def test_table1_oracle_matches_swap_symmetry():
    f = table1_oracle()
    swap = {0: 0, 1: 2, 2: 1}
    for r in range(4):
        for s in itertools.combinations(range(3), r):
            assert f.value(1, s) == f.value(0, [swap[j] for j in s])


def test_table_oracle_missing_entry():
    f = TableOracle(2, [{frozenset(): 0}])
    with pytest.raises(KeyError):
        f.value(0, [1])
