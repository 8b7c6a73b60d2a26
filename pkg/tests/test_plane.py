import pytest
from hypothesis import assume, given, settings

from geiser.cusp import AtNode, AtSmoothPoint
from geiser.exact import PreconditionError, TruncSeries, UniPoly, parse_hompoly, series_order
from geiser.nodal_group import division_points
from geiser.plane import (
    N_CUBIC,
    ContainsNError,
    branch_contact_order,
    contact_linear_system,
    contact_profile_of,
    fiber_report,
    find_flex_tangents,
    find_six_tangent_conics,
    in_span,
    is_irreducible,
    meets_only,
    node_branch_series,
    profile_linear_system,
    solve_tangent,
    tangency_condition,
)
from geiser.singularity import delta_at_point

from strategies import hompolys

P = parse_hompoly
CONIC_6 = "21*x^2 - 22*x*y + 21*y^2 - 6*x*z - 6*y*z + z^2"
t = UniPoly.x()


def test_line_through_node():
    report = contact_profile_of(P("x"))
    assert (report.order_at_zero, report.order_at_infinity, report.roots) == (1, 2, ())
    assert report.profile() == AtNode(2, 1)


def test_flex_line():
    report = contact_profile_of(P("3*x + 3*y + z"))
    assert report.f == (t + 1) ** 3
    assert report.profile() == AtSmoothPoint(3)


def test_six_tangent_conic_contact():
    report = contact_profile_of(P(CONIC_6))
    assert report.f == (t - 1) ** 6
    assert report.single_point() == (1, (1, 1, 2))


def test_conic_through_node():
    report = contact_profile_of(P("x*z - y^2"))
    assert (report.order_at_zero, report.order_at_infinity) == (1, 5)
    assert report.profile() == AtNode(5, 1)


def test_curve_containing_boundary_is_rejected():
    with pytest.raises(ContainsNError):
        contact_profile_of(P("x*y*z - x^3 - y^3"))


def test_meets_only():
    assert meets_only(P("x")) == AtNode(2, 1)
    with pytest.raises(PreconditionError):
        meets_only(P("y - z"))


def test_branch_series():
    x, y = node_branch_series("t0", 7)
    assert x == TruncSeries([0, 1, 0, 0, -1, 0, 0, 1], 8)
    assert y == TruncSeries([0, 0, 1, 0, 0, -1, 0, 0], 8)
    xi, _ = node_branch_series("tinf", 7)
    assert series_order(xi) == 2
    xs, ys = node_branch_series("t0", 63)
    residual = N_CUBIC.equation.substitute_series(xs, ys, TruncSeries([1], 64))
    assert series_order(residual).bound >= 60


@settings(max_examples=60, deadline=None)
@given(hompolys(max_degree=4))
def test_bezout_and_branch_consistency(curve):
    assume(curve.degree >= 1 and not N_CUBIC.pullback(curve).is_zero())
    report = contact_profile_of(curve)
    assert report.total == 3 * curve.degree
    assert branch_contact_order(curve, "t0") == report.order_at_zero
    assert branch_contact_order(curve, "tinf") == report.order_at_infinity


def test_flex_tangents():
    report = find_flex_tangents()
    assert report.condition == t**3 + 1
    assert report.closure_count == 3
    (sol,) = report.solutions
    assert sol.t0 == -1 and sol.curve == P("3*x + 3*y + z")
    assert not solve_tangent(1, 3, 1).consistent


def test_six_tangent_conics():
    report = find_six_tangent_conics()
    assert report.condition == t**6 - 1
    by_root = {s.t0: s for s in report.solutions}
    assert by_root[1].curve == P(CONIC_6) and not by_root[1].degenerate
    assert by_root[-1].degenerate
    assert by_root[-1].curve == P("3*x + 3*y + z") ** 2
    assert report.nondegenerate_closure_count == 3


def test_tangency_conditions_match_division_points():
    assert tangency_condition(1, 3) == division_points(3).condition
    assert tangency_condition(2, 6) == division_points(6).condition


def test_contact_linear_systems():
    pencil = contact_linear_system(8, "t0", 3)
    assert len(pencil) == 2
    assert in_span(P("x*y*z - x^3 - y^3"), pencil)
    assert in_span(P("-x*y^2 - x^2*z + y*z^2"), pencil)
    net = contact_linear_system(7, "t0", 3)
    assert len(net) == 3
    assert in_span(P("-x^2*y + y^2*z"), net)
    (line,) = contact_linear_system(2, "tinf", 1)
    assert in_span(P("x"), [line])


def test_profile_linear_system():
    assert len(profile_linear_system(1, 8)) == 2
    with pytest.raises(PreconditionError):
        profile_linear_system(1, 3)


@pytest.mark.parametrize("text", ["x", "x*z - y^2", "y^2*z - x^3", CONIC_6])
def test_rational_fixtures_have_genus_zero(text):
    curve = P(text)
    report = contact_profile_of(curve)
    singular = {(0, 0, 1)} if curve.degree == 3 else set()
    deltas = sum(delta_at_point(curve, pt) for pt in singular)
    e = curve.degree
    assert (e - 1) * (e - 2) // 2 - deltas == 0
    assert report.total == 3 * e


def test_fiber_line_through_node():
    report = fiber_report(P("x"))
    assert (report.fiber_degree, report.delta_at_base, report.geometric_genus) == (3, 1, 0)
    assert report.oracles_agree
    assert not all(s.irreducible for s in report.samples)


def test_fiber_flex_line():
    report = fiber_report(P("3*x + 3*y + z"))
    assert (report.fiber_degree, report.delta_at_base, report.geometric_genus) == (3, 0, 1)


def test_fiber_six_tangent_conic():
    report = fiber_report(P(CONIC_6))
    assert report.fiber_degree == 6
    assert report.oracles_agree and report.generic_certified
    assert (report.delta_at_base, report.geometric_genus) == (9, 1)
    assert report.compare(7, 3) == {
        "reference_delta": 7,
        "reference_genus": 3,
        "delta_agrees": False,
        "genus_agrees": False,
    }
    assert all(s.irreducible for s in report.samples)


def test_fiber_rejects_zero_weights():
    with pytest.raises(PreconditionError):
        fiber_report(P("x"), samples=((1, 0),))


def test_irreducibility():
    assert is_irreducible(P(CONIC_6))
    assert not is_irreducible(P("x*y"))
