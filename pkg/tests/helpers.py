from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from leibniz.algebra import LinearMap

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def invertible_maps(draw, n: int):
    """Random invertible rational maps built as lower * upper unitriangular * diagonal."""
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            lower[i][j] = draw(st.integers(-2, 2))
            upper[j][i] = draw(st.integers(-2, 2))
    diag = [draw(st.sampled_from([1, -1, 2, Fraction(1, 2), 3])) for _ in range(n)]
    prod = [[sum(lower[i][k] * upper[k][j] for k in range(n)) * diag[j] for j in range(n)] for i in range(n)]
    return LinearMap.from_rows(prod)
