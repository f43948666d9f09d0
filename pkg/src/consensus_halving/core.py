"""Shared domain types: exact rationals, instances, fractional splits and ratios.

All arithmetic on the additive path is done with :class:`fractions.Fraction`,
so a fraction that should be exactly 0 or 1 is never misread as a cut.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not line up."""


class GuardError(ValueError):
    """Raised when an input exceeds the size guard of an exponential routine."""


class TheoremViolation(RuntimeError):
    """An object whose existence is guaranteed was not found (an implementation bug)."""


def to_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, ints or Fractions into a Fraction.

    Floats are rejected: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Instance:
    """n agents, m items, additive utilities ``utilities[i][j] = u_i(j)``."""

    utilities: tuple[tuple[Fraction, ...], ...]
    allow_negative: bool = False

    def __post_init__(self):
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.utilities)
        object.__setattr__(self, "utilities", rows)
        if len(rows) < 1:
            raise ValueError("an instance needs at least one agent")
        m = len(rows[0])
        if any(len(row) != m for row in rows):
            raise DimensionError("utility rows have different lengths")
        if not self.allow_negative and any(v < 0 for row in rows for v in row):
            raise ValueError("negative utility in an instance without allow_negative")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], allow_negative: bool = False) -> "Instance":
        return cls(tuple(tuple(row) for row in rows), allow_negative)

    @property
    def n(self) -> int:
        return len(self.utilities)

    @property
    def m(self) -> int:
        return len(self.utilities[0])

    def total(self, agent: int) -> Fraction:
        return sum(self.utilities[agent], Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "utilities": [[format_rational(v) for v in row] for row in self.utilities],
            "allow_negative": self.allow_negative,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Instance":
        rows = data["utilities"]
        inst = cls.from_rows(rows, bool(data.get("allow_negative", False)))
        if "n" in data and data["n"] != inst.n:
            raise DimensionError(f"declared n={data['n']} but {inst.n} utility rows")
        if "m" in data and data["m"] != inst.m:
            raise DimensionError(f"declared m={data['m']} but rows have length {inst.m}")
        return inst


@dataclass(frozen=True)
class FractionalSplit:
    """Partition of the items into k fractional sets.

    ``fractions[j][l]`` is the fraction of item j that goes to part l.
    """

    fractions: tuple[tuple[Fraction, ...], ...]
    k: int = 2

    def __post_init__(self):
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.fractions)
        object.__setattr__(self, "fractions", rows)
        if self.k < 1:
            raise ValueError("a split needs at least one part")
        for j, row in enumerate(rows):
            if len(row) != self.k:
                raise DimensionError(f"item {j} has {len(row)} entries, expected {self.k}")
            if any(v < 0 or v > 1 for v in row):
                raise ValueError(f"item {j} has a fraction outside [0, 1]: {row}")
            if sum(row) != 1:
                raise ValueError(f"fractions of item {j} sum to {sum(row)}, not 1")

    @classmethod
    def from_first_part(cls, x: Sequence) -> "FractionalSplit":
        """Two-part split where ``x[j]`` is the fraction of item j in part 1."""
        return cls(tuple((to_rational(v), 1 - to_rational(v)) for v in x), 2)

    @property
    def m(self) -> int:
        return len(self.fractions)

    def column(self, part: int) -> tuple[Fraction, ...]:
        return tuple(row[part] for row in self.fractions)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "fractions": [[format_rational(v) for v in row] for row in self.fractions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FractionalSplit":
        return cls(tuple(tuple(row) for row in data["fractions"]), int(data["k"]))


@dataclass(frozen=True)
class Ratios:
    """Target ratios alpha_1..alpha_k: strictly positive, summing to exactly 1."""

    alphas: tuple[Fraction, ...]

    def __post_init__(self):
        alphas = tuple(to_rational(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise ValueError("ratios must be non-empty")
        if any(a <= 0 for a in alphas):
            raise ValueError(f"ratios must be positive: {alphas}")
        if sum(alphas) != 1:
            raise ValueError(f"ratios sum to {sum(alphas)}, not 1")

    @classmethod
    def uniform(cls, k: int) -> "Ratios":
        return cls(tuple(Fraction(1, k) for _ in range(k)))

    @classmethod
    def parse(cls, text: str) -> "Ratios":
        """Parse a comma separated list such as ``"1/3,2/3"``."""
        return cls(tuple(Fraction(part.strip()) for part in text.split(",") if part.strip()))

    @property
    def k(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def __getitem__(self, index):
        return self.alphas[index]

    def __str__(self) -> str:
        return ",".join(format_rational(a) for a in self.alphas)


HALVING = Ratios((Fraction(1, 2), Fraction(1, 2)))


def cut_items(split: FractionalSplit) -> set[int]:
    """Items with a strictly positive fraction in at least two parts."""
    return {j for j, row in enumerate(split.fractions) if sum(1 for v in row if v > 0) >= 2}


def cut_count(split: FractionalSplit) -> int:
    """Number of cuts: an item present in p parts needs p - 1 cuts."""
    return sum(max(0, sum(1 for v in row if v > 0) - 1) for row in split.fractions)


def additive_value(inst: Instance, agent: int, part_column: Sequence) -> Fraction:
    """Value of a fractional set (one fraction per item) to ``agent``."""
    if not 0 <= agent < inst.n:
        raise DimensionError(f"agent {agent} out of range for n={inst.n}")
    if len(part_column) != inst.m:
        raise DimensionError(f"column has length {len(part_column)}, expected m={inst.m}")
    return sum((u * to_rational(x) for u, x in zip(inst.utilities[agent], part_column)), Fraction(0))
