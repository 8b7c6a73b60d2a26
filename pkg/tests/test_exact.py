from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from geiser.exact import (
    AtLeast,
    InhomogeneousError,
    ParseError,
    PreconditionError,
    QuadraticNumber,
    TruncSeries,
    TruncationError,
    UniPoly,
    determinant,
    factor_hompoly,
    factor_over_q,
    finite_order,
    lagrange_interpolate,
    matvec,
    parse_hompoly,
    rational_roots,
    series_order,
    solve_linear,
    squarefree_kernel,
)

from strategies import hompolys, rationals, unipolys

F = Fraction


@given(rationals, rationals, rationals)
def test_rationals_form_a_field(a, b, c):
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * (1 / a) == 1


def test_solve_identity():
    sol = solve_linear([[1, 0], [0, 1]], [1, 2])
    assert sol.particular == (1, 2)
    assert sol.kernel == ()


def test_solve_single_row_has_line_kernel():
    sol = solve_linear([[1, 1]], [0])
    assert sol.dimension == 1


def test_inconsistent_system_carries_certificate():
    rows, rhs = [[1, 1], [2, 2]], [1, 3]
    sol = solve_linear(rows, rhs)
    assert not sol.consistent
    y = sol.certificate
    assert all(sum(y[i] * rows[i][j] for i in range(2)) == 0 for j in range(2))
    assert sum(a * b for a, b in zip(y, rhs)) != 0


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_solve_linear_round_trip(m, n, data):
    rows = [data.draw(st.lists(rationals, min_size=n, max_size=n)) for _ in range(m)]
    x = data.draw(st.lists(rationals, min_size=n, max_size=n))
    rhs = matvec(rows, x)
    sol = solve_linear(rows, rhs)
    assert sol.consistent
    assert matvec(rows, sol.particular) == rhs
    for v in sol.kernel:
        assert all(c == 0 for c in matvec(rows, v))


def test_series_order_examples():
    assert series_order(TruncSeries([0, 0, 1, 0, 0, 1], 10)) == 2
    assert series_order(TruncSeries([], 10)) == AtLeast(10)
    x = TruncSeries([0, 1], 20) / TruncSeries([1, 0, 0, 1], 20)
    assert series_order(x) == 1


def test_finite_order_raises_at_truncation():
    with pytest.raises(TruncationError):
        finite_order(TruncSeries([], 8))


@given(st.lists(rationals, max_size=6), st.lists(rationals, max_size=6))
def test_series_order_is_additive(a, b):
    s, t = TruncSeries(a, 16), TruncSeries(b, 16)
    os_, ot = series_order(s), series_order(t)
    assume(isinstance(os_, int) and isinstance(ot, int) and os_ + ot < 16)
    assert series_order(s * t) == os_ + ot


@given(st.lists(rationals, min_size=1, max_size=6))
def test_series_inverse(a):
    assume(a[0] != 0)
    s = TruncSeries(a, 12)
    assert s * s.inverse() == TruncSeries([1], 12)


def test_parse_examples():
    cubic = parse_hompoly("x*y*z - x^3 - y^3")
    assert cubic.degree == 3 and len(cubic.terms) == 3
    assert parse_hompoly("x").degree == 1
    with pytest.raises(InhomogeneousError):
        parse_hompoly("x^2 + y")


@pytest.mark.parametrize("text", ["x*", "x^", "2x", "x + + y", "(x", "w", "x^-1"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse_hompoly(text)
    assert 0 <= info.value.position <= len(text)


@given(hompolys())
def test_parse_round_trip(poly):
    assume(not poly.is_zero())  # zero text carries no degree
    assert parse_hompoly(str(poly)) == poly


@given(unipolys(), unipolys(), unipolys())
def test_unipoly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(unipolys(), unipolys())
def test_unipoly_division(a, b):
    assume(not b.is_zero())
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(unipolys(max_degree=3), unipolys(max_degree=3))
def test_squarefree_decomposition_rebuilds(a, b):
    p = a * a * b
    assume(not p.is_zero())
    rebuilt = UniPoly([p.lead()])
    for f, k in p.squarefree_decomposition():
        rebuilt = rebuilt * f ** k
    assert rebuilt == p


def test_factor_over_q_and_roots():
    t = UniPoly.x()
    f = (t + 1) ** 2 * (t * t - 2)
    factors = dict((str(g), k) for g, k in factor_over_q(f))
    assert factors[str(t + 1)] == 2
    assert rational_roots(f) == [(F(-1), 2)]


@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=5, unique_by=lambda p: p[0]))
def test_lagrange_interpolation(points):
    poly = lagrange_interpolate(points)
    assert all(poly(x) == y for x, y in points)


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0], [0, 3, 0], [1, 1, 5]]) == 30


@given(rationals, rationals, rationals, rationals)
def test_quadratic_field_arithmetic(a, b, c, e):
    x = QuadraticNumber(a, b, 5)
    y = QuadraticNumber(c, e, 5)
    assert x * y == y * x
    if x != 0:
        assert x * x.inverse() == 1


def test_quadratic_fields_do_not_mix():
    with pytest.raises(PreconditionError):
        QuadraticNumber(F(1), F(1), 2) + QuadraticNumber(F(1), F(1), 3)


@pytest.mark.parametrize("r,expected", [(12, (2, 3)), (F(-8, 9), (F(2, 3), -2)), (F(1, 2), (F(1, 2), 2))])
def test_squarefree_kernel(r, expected):
    s, D = squarefree_kernel(r)
    assert (s, D) == expected
    assert s * s * D == r


def test_factor_hompoly_finds_line_and_conic():
    const, factors = factor_hompoly(parse_hompoly("x*y*z - y^3"))
    degrees = sorted(f.degree for f, _ in factors)
    assert degrees == [1, 2]
