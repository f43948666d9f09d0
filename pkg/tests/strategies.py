"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from consensus_halving.core import Instance


def rationals(max_num=20, max_den=8, min_value=0):
    return st.builds(
        Fraction,
        st.integers(min_value=min_value * max_den, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


@st.composite
def instances(draw, max_n=5, max_m=8, negative=False):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    lo = -1 if negative else 0
    rows = [[draw(rationals(min_value=lo)) for _ in range(m)] for _ in range(n)]
    return Instance.from_rows(rows, allow_negative=negative)
