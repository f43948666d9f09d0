"""Consensus halving and k-splitting of divisible items with exact arithmetic."""
from .additive import (
    HalvingTrace,
    check_eps_halving,
    greedy_one_cut,
    halving_residuals,
    solve_halving,
    solve_k_splitting,
    solve_two_splitting,
)
from .agreeable import AgreeableResult, agreeable_additive, agreeable_monotonic, check_agreeable
from .core import (
    HALVING,
    DimensionError,
    FractionalSplit,
    GuardError,
    Instance,
    Ratios,
    TheoremViolation,
    additive_value,
    cut_count,
    cut_items,
    to_rational,
)

from .oracles import verify_split

__version__ = "0.1.0"
