"""
Testing Strategies Module
Hypothesis strategies for matrices, vectors and problem instances over {0, .1, ..., 1}
"""
from fractions import Fraction
from typing import List

from hypothesis import strategies as st

from src.algebra import MaxMinMatrix

TENTHS: List[Fraction] = [Fraction(k, 10) for k in range(11)]
QUARTERS: List[Fraction] = [Fraction(k, 4) for k in range(5)]

scalars = st.sampled_from(TENTHS)


@st.composite
def matrices(draw, rows: int, cols: int, values=scalars) -> MaxMinMatrix:
    return MaxMinMatrix.from_rows([[draw(values) for _ in range(cols)] for _ in range(rows)])


@st.composite
def square_matrices(draw, min_n: int = 1, max_n: int = 3, values=scalars) -> MaxMinMatrix:
    n = draw(st.integers(min_n, max_n))
    return draw(matrices(n, n, values))


@st.composite
def vectors(draw, n: int, values=scalars) -> MaxMinMatrix:
    return MaxMinMatrix.vector([draw(values) for _ in range(n)])


@st.composite
def eigen_instances(draw, min_n: int = 2, max_n: int = 3):
    """(A, lambda) with entries and lambda drawn from the tenths"""
    a = draw(square_matrices(min_n, max_n))
    return a, draw(scalars)


@st.composite
def bellman_instances(draw, max_n: int = 3):
    a = draw(square_matrices(1, max_n))
    return a, draw(vectors(a.rows))


@st.composite
def cover_instances(draw, max_m: int = 3, max_n: int = 3):
    """(A, b, lambda) with every entry of A and b at most lambda"""
    lam = draw(scalars)
    bounded = st.sampled_from([v for v in TENTHS if v <= lam])
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    return draw(matrices(m, n, bounded)), draw(vectors(m, bounded)), lam
