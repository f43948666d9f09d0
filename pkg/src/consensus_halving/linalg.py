"""Exact rational linear algebra.

Gaussian elimination over Fractions, a "second solution" finder for affine
systems, and a Fourier-Motzkin feasibility test for small box-constrained
systems. Variable counts in this package are tiny (at most a handful of
free variables), so nothing here tries to be clever about fill-in.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

try:
    from gmpy2 import gcd as _multi_gcd
except ImportError:  # pragma: no cover
    _multi_gcd = gcd
from typing import Sequence

from .core import DimensionError

__all__ = [
    "AffineSystem",
    "InconsistentSystem",
    "rref",
    "rank",
    "solve_or_second",
    "box_feasible",
    "first_dependent_column",
    "integer_rows",
    "ColumnBasis",
]


class InconsistentSystem(ArithmeticError):
    """The affine system has no solution at all."""


@dataclass
class AffineSystem:
    """Rows ``(coefficients, rhs)`` meaning ``sum_j coefficients[j] * y_j == rhs``."""

    num_vars: int
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = field(default_factory=list)

    def __post_init__(self):
        self.rows = [self._coerce(c, b) for c, b in self.rows]

    def _coerce(self, coeffs, rhs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.num_vars:
            raise DimensionError(f"row has {len(coeffs)} coefficients, expected {self.num_vars}")
        return coeffs, Fraction(rhs)

    def add(self, coeffs: Sequence, rhs) -> None:
        self.rows.append(self._coerce(coeffs, rhs))

    def pin(self, var: int, value) -> None:
        """Append the unit row ``y_var == value``."""
        coeffs = [Fraction(0)] * self.num_vars
        coeffs[var] = Fraction(1)
        self.add(coeffs, value)

    def residuals(self, y: Sequence) -> list[Fraction]:
        if len(y) != self.num_vars:
            raise DimensionError(f"vector has length {len(y)}, expected {self.num_vars}")
        return [sum((c * v for c, v in zip(coeffs, y)), Fraction(0)) - rhs for coeffs, rhs in self.rows]

    def is_solution(self, y: Sequence) -> bool:
        return all(r == 0 for r in self.residuals(y))


def rref(matrix: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of ``matrix`` restricted to its first ``ncols`` columns.

    Extra columns (e.g. a right-hand side) are carried along. The pivot in each
    column is the first remaining row with a nonzero entry. Returns the reduced
    rows and the list of pivot columns; rows past ``len(pivots)`` are zero on the
    first ``ncols`` columns.
    """
    rows = [list(r) for r in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(coefficients: Sequence[Sequence]) -> int:
    if not coefficients:
        return 0
    ncols = len(coefficients[0])
    _, pivots = rref([[Fraction(v) for v in row] for row in coefficients], ncols)
    return len(pivots)


def _augmented(system: AffineSystem) -> list[list[Fraction]]:
    return [list(coeffs) + [rhs] for coeffs, rhs in system.rows]


def solve_or_second(system: AffineSystem, current: Sequence) -> tuple[Fraction, ...] | None:
    """Decide whether ``current`` is the only solution of ``system``.

    Returns ``None`` when the solution is unique. Otherwise returns another
    solution, built by setting the lowest-index free variable to
    ``current[j] + 1``, keeping the other free variables at their current
    values, and back-substituting for the pivots.

    Raises :class:`InconsistentSystem` if the system has no solution, which can
    only happen when the precondition (``current`` solves it) is violated.
    """
    n = system.num_vars
    if len(current) != n:
        raise DimensionError(f"current has length {len(current)}, expected {n}")
    current = tuple(Fraction(v) for v in current)
    rows, pivots = rref(_augmented(system), n)
    if any(row[n] != 0 for row in rows[len(pivots):]):
        raise InconsistentSystem("affine system has no solution")
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return None
    y = list(current)
    y[free[0]] = current[free[0]] + 1
    for r, p in enumerate(pivots):
        row = rows[r]
        y[p] = row[n] - sum((row[c] * y[c] for c in free), Fraction(0))
    return tuple(y)


class ColumnBasis:
    """Incremental fraction-free elimination over integer column vectors.

    Columns are pushed one at a time under a caller-chosen key. Each accepted
    column is stored reduced, together with its expression in the original
    columns, so that a dependent column immediately yields a null-space
    combination. Entries depend only on earlier columns, which makes
    :meth:`truncate` cheap and exact.
    """

    def __init__(self):
        # (reduced column, pivot row, coefficients on the original columns at
        # basis positions 0..t for the entry at position t)
        self.entries: list[tuple[list[int], int, list[int]]] = []
        self.keys: list = []

    def __len__(self) -> int:
        return len(self.entries)

    def push(self, key, col: Sequence[int]) -> dict | None:
        """Add a column; if it depends on the basis return the integer combination."""
        vec = list(col)
        # the combination is ``head`` on basis positions plus ``last`` on the new column
        head: list = []
        last = 1
        for t, (bvec, prow, bcombo) in enumerate(self.entries):
            a = vec[prow]
            if a == 0:
                continue
            b = bvec[prow]
            # vec <- b*vec - a*bvec cancels the pivot row entry
            vec = [b * x - a * y for x, y in zip(vec, bvec)]
            if len(head) <= t:
                head.extend([0] * (t + 1 - len(head)))
            head = [b * c - a * v for c, v in zip(head, bcombo)]
            last *= b
        head.extend([0] * (len(self.entries) - len(head)))
        g = _multi_gcd(*vec, *head, last)
        if g > 1:
            vec = [x // g for x in vec]
            head = [c // g for c in head]
            last //= g
        prow = next((i for i, x in enumerate(vec) if x != 0), None)
        if prow is None:
            combo = {k: c for k, c in zip(self.keys, head) if c != 0}
            combo[key] = last
            return combo
        head.append(last)
        self.entries.append((vec, prow, head))
        self.keys.append(key)
        return None

    def truncate(self, size: int) -> None:
        del self.entries[size:]
        del self.keys[size:]


def _int_null_combination(cols: Sequence[Sequence[int]]) -> tuple[int, dict[int, int]] | None:
    """First column that is a rational combination of earlier ones, with the combination."""
    basis = ColumnBasis()
    for t, col in enumerate(cols):
        combo = basis.push(t, col)
        if combo is not None:
            return t, combo
    return None


def integer_rows(matrix: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; the null space is unchanged."""
    out = []
    for row in matrix:
        denom = 1
        for v in row:
            q = v.denominator
            denom = denom * q // gcd(denom, q)
        out.append([v.numerator * (denom // v.denominator) for v in row])
    return out


def first_dependent_column(columns: Sequence[Sequence]) -> tuple[int, dict[int, Fraction]] | None:
    """Null-space direction attached to the first linearly dependent column.

    For columns ``c_0, c_1, ...`` let ``f`` be the first one lying in the span
    of its predecessors. Returns ``(f, d)`` with ``d[f] == 1`` and
    ``sum_s d[s] * c_s == 0``; ``d`` is supported on columns ``<= f``. This is
    exactly the direction that back-substitution from the reduced row echelon
    form produces when the lowest free variable is bumped by one, so callers
    may use it in place of a full :func:`solve_or_second` call. Returns
    ``None`` if the columns are independent.

    Columns may hold ints (used as-is) or Fractions (each row is scaled to
    integers first). The elimination itself is fraction-free.
    """
    if not columns:
        return None
    if all(isinstance(v, int) for col in columns for v in col):
        int_cols = columns
    else:
        rows = integer_rows([[Fraction(col[i]) for col in columns] for i in range(len(columns[0]))])
        int_cols = [[row[s] for row in rows] for s in range(len(columns))]
    found = _int_null_combination(int_cols)
    if found is None:
        return None
    f, combo = found
    lead = combo[f]
    return f, {s: Fraction(v, lead) for s, v in combo.items()}


# ---------------------------------------------------------------------------
# Fourier-Motzkin

_Ineq = tuple[tuple[Fraction, ...], Fraction]  # coeffs . z <= bound


def _normalize(coeffs: tuple[Fraction, ...], bound: Fraction) -> _Ineq:
    lead = next((abs(c) for c in coeffs if c != 0), None)
    if lead is None or lead == 1:
        return coeffs, bound
    return tuple(c / lead for c in coeffs), bound / lead


def _eliminate(ineqs: list[_Ineq], var: int) -> list[_Ineq]:
    pos, neg, out = [], [], set()
    for coeffs, bound in ineqs:
        a = coeffs[var]
        if a > 0:
            pos.append((coeffs, bound))
        elif a < 0:
            neg.append((coeffs, bound))
        else:
            out.add((coeffs, bound))
    for pc, pb in pos:
        ap = pc[var]
        for nc, nb in neg:
            an = -nc[var]
            coeffs = tuple(x / ap + y / an for x, y in zip(pc, nc))
            bound = pb / ap + nb / an
            out.add(_normalize(coeffs, bound))
    return sorted(out)


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return Fraction(0)


def _fm_solve(ineqs: list[_Ineq], nvars: int) -> tuple[Fraction, ...] | None:
    stages = [ineqs]
    for var in range(nvars):
        stages.append(_eliminate(stages[-1], var))
    if any(bound < 0 for _, bound in stages[-1]):
        return None
    z: list[Fraction] = [Fraction(0)] * nvars
    for var in reversed(range(nvars)):
        lo = hi = None
        for coeffs, bound in stages[var]:
            a = coeffs[var]
            if a == 0:
                continue
            rest = bound - sum((coeffs[w] * z[w] for w in range(var + 1, nvars)), Fraction(0))
            limit = rest / a
            if a > 0:
                hi = limit if hi is None else min(hi, limit)
            else:
                lo = limit if lo is None else max(lo, limit)
        if lo is not None and hi is not None and lo > hi:
            return None  # cannot happen for a consistent projection; defensive
        z[var] = _pick(lo, hi)
    return tuple(z)


def box_feasible(
    system: AffineSystem,
    lower: Sequence,
    upper: Sequence,
    inequalities: Sequence[tuple[Sequence, object]] = (),
) -> tuple[Fraction, ...] | None:
    """Exactly decide ``{A y = b, lower <= y <= upper, G y <= h}``.

    Equalities are eliminated first; the remaining inequalities over the free
    variables are decided by Fourier-Motzkin. Returns a witness vector or
    ``None`` when infeasible.
    """
    n = system.num_vars
    if len(lower) != n or len(upper) != n:
        raise DimensionError("bounds must have one entry per variable")
    lower = [Fraction(v) for v in lower]
    upper = [Fraction(v) for v in upper]
    if any(lo > hi for lo, hi in zip(lower, upper)):
        return None
    for coeffs, _ in inequalities:
        if len(coeffs) != n:
            raise DimensionError("inequality has the wrong number of coefficients")

    rows, pivots = rref(_augmented(system), n)
    if any(row[n] != 0 for row in rows[len(pivots):]):
        return None
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    index = {c: t for t, c in enumerate(free)}
    nf = len(free)

    # every variable as an affine form in the free ones: const + coeffs . z
    forms: list[tuple[Fraction, tuple[Fraction, ...]]] = [None] * n  # type: ignore[list-item]
    for c in free:
        unit = [Fraction(0)] * nf
        unit[index[c]] = Fraction(1)
        forms[c] = (Fraction(0), tuple(unit))
    for r, p in enumerate(pivots):
        row = rows[r]
        forms[p] = (row[n], tuple(-row[c] for c in free))

    ineqs: set[_Ineq] = set()

    def add(coeffs: tuple[Fraction, ...], bound: Fraction) -> None:
        ineqs.add(_normalize(coeffs, bound))

    for v in range(n):
        const, coeffs = forms[v]
        add(coeffs, upper[v] - const)
        add(tuple(-c for c in coeffs), const - lower[v])
    for gcoeffs, h in inequalities:
        const = Fraction(0)
        acc = [Fraction(0)] * nf
        for v, g in enumerate(gcoeffs):
            g = Fraction(g)
            if g == 0:
                continue
            fc, fco = forms[v]
            const += g * fc
            for t in range(nf):
                acc[t] += g * fco[t]
        add(tuple(acc), Fraction(h) - const)

    z = _fm_solve(sorted(ineqs), nf)
    if z is None:
        return None
    y = tuple(const + sum((a * b for a, b in zip(coeffs, z)), Fraction(0)) for const, coeffs in forms)
    # the witness is re-checked rather than trusted
    if not system.is_solution(y) or any(not lo <= v <= hi for v, lo, hi in zip(y, lower, upper)):
        raise ArithmeticError("Fourier-Motzkin produced an invalid witness")
    for gcoeffs, h in inequalities:
        if sum((Fraction(g) * v for g, v in zip(gcoeffs, y)), Fraction(0)) > Fraction(h):
            raise ArithmeticError("Fourier-Motzkin witness violates an inequality")
    return y
