from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from geiser.cusp import delta_invariant, euclid_sequence
from geiser.exact import PreconditionError, parse_hompoly
from geiser.singularity import (
    UnsupportedClusterError,
    delta_at_point,
    delta_of_local,
    local_equation,
    multiplicity_at_point,
    newton_delta_at_point,
    newton_delta_of_local,
)

ORIGIN = (0, 0, 1)


def _mul(F, G):
    out = {}
    for (a, b), c in F.items():
        for (e, f), g in G.items():
            out[(a + e, b + f)] = out.get((a + e, b + f), 0) + c * g
    return {k: v for k, v in out.items() if v != 0}


def _cusp(p, q):
    """u^p - v^q homogenized with z."""
    d = max(p, q)
    return parse_hompoly(f"x^{p}*z^{d - p} - y^{q}*z^{d - q}")


@pytest.mark.parametrize(
    "text,delta",
    [("y^2*z - x^3", 1), ("x*y*z - x^3 - y^3", 1), ("x^2*z^13 + y^15", 7), ("x*z - y^2", 0)],
)
def test_delta_examples(text, delta):
    curve = parse_hompoly(text)
    assert delta_at_point(curve, ORIGIN) == delta
    assert newton_delta_at_point(curve, ORIGIN) == delta


def test_multiplicity():
    assert multiplicity_at_point(parse_hompoly("x*y*z - x^3 - y^3"), ORIGIN) == 2


def test_point_must_lie_on_curve():
    with pytest.raises(PreconditionError):
        local_equation(parse_hompoly("x*z - y^2"), (1, 0, 1))


def test_local_equation_recentres():
    F = local_equation(parse_hompoly("x*z - y^2"), (1, 1, 1))
    assert (0, 0) not in F


@pytest.mark.parametrize("p", range(1, 16))
def test_cusp_fixtures_match_euclid(p):
    for q in range(1, 16):
        if gcd(p, q) != 1:
            continue
        expected = delta_invariant(euclid_sequence((p, q)))
        curve = _cusp(p, q)
        assert delta_at_point(curve, ORIGIN) == expected
        assert newton_delta_at_point(curve, ORIGIN) == expected


def test_conjugate_tangents_over_quadratic_field():
    # y^2 - 2x^2 splits only over Q(sqrt 2); y^2 - 2x^2 + x^4 keeps a cluster there
    F = {(0, 2): 1, (2, 0): -2, (4, 0): 1}
    assert delta_of_local(F) == newton_delta_of_local(F) == 1
    G = _mul({(0, 2): 1, (2, 0): -2}, {(0, 2): 1, (2, 0): -2, (5, 0): 1})
    assert delta_of_local(G) == newton_delta_of_local(G)


def test_cubic_cluster_is_unsupported():
    F = _mul(_mul({(0, 3): 1, (3, 0): -2}, {(0, 3): 1, (3, 0): -2, (7, 0): 1}), {(0, 1): 1, (9, 0): 1})
    with pytest.raises(UnsupportedClusterError):
        delta_of_local(F)


branch = st.tuples(st.integers(1, 5), st.integers(1, 6), st.sampled_from([1, 2, 3, -1, -2]))


@settings(max_examples=150, deadline=None)
@given(st.lists(branch, min_size=1, max_size=3, unique_by=lambda b: Fraction(b[1], b[0])))
def test_oracles_agree_on_random_germs(branches):
    F = {(0, 0): 1}
    for a, b, c in branches:
        F = _mul(F, {(0, a): 1, (b, 0): -c})
    assume((0, 0) not in F)
    try:
        one = delta_of_local(F)
        two = newton_delta_of_local(F)
    except UnsupportedClusterError:
        assume(False)
    assert one == two
