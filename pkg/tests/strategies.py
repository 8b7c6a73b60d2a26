"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def unipolys(draw, max_degree=5):
    from geiser.exact import UniPoly

    return UniPoly(draw(st.lists(small_ints, max_size=max_degree + 1)))


@st.composite
def hompolys(draw, max_degree=4):
    from geiser.exact import HomPoly3, monomials_of_degree

    d = draw(st.integers(min_value=0, max_value=max_degree))
    monos = monomials_of_degree(d)
    coeffs = draw(st.lists(rationals, min_size=len(monos), max_size=len(monos)))
    return HomPoly3(d, {m: Fraction(c) for m, c in zip(monos, coeffs)})


profiles_pq = st.tuples(st.integers(1, 40), st.integers(1, 40))
degrees = st.integers(4, 9)
