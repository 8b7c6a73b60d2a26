from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geiser.cusp import (
    AtNode,
    AtSmoothPoint,
    Attachment,
    DualGraphChain,
    blow_up_step,
    canonical_class,
    chain_after_r_blowups,
    classify_ledger,
    contract_last,
    delta_invariant,
    euclid_sequence,
    ledger,
    node_ledger,
    predicted_attachment,
    shortcut_class,
    tau_swap,
)
from geiser.exact import PreconditionError

orders = st.integers(1, 60)


def test_blow_up_step_examples():
    assert blow_up_step(AtNode(5, 1)) == AtNode(4, 1)
    assert blow_up_step(AtNode(1, 7)) == AtNode(1, 6)
    assert blow_up_step(AtNode(2, 2)) == AtSmoothPoint(2)


@given(orders, orders)
def test_blow_up_keeps_total_intersection(p, q):
    image = blow_up_step(AtNode(p, q))
    assert image.total + min(p, q) == p + q


@pytest.mark.parametrize(
    "p,q,r,expected",
    [
        (3, 1, 7, Attachment("edge", 0, (2, 1))),
        (1, 9, 7, Attachment("edge", 7, (1, 2))),
        (2, 3, 7, Attachment("edge", 1, (1, 1))),
    ],
)
def test_chain_examples(p, q, r, expected):
    chain = chain_after_r_blowups(p, q, r)
    assert chain.germ == expected
    assert chain.self_intersections == (-2,) * (r - 1) + (-1,)


@settings(max_examples=300)
@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 7))
def test_chain_matches_closed_form(p, q, r):
    assert chain_after_r_blowups(p, q, r).germ == predicted_attachment(p, q, r)


def test_full_contraction_after_swap():
    chain = tau_swap(chain_after_r_blowups(1, 5, 7))
    while chain.length:
        chain = contract_last(chain)
    assert chain.germ_profile() == AtNode(1, 2)


def test_contraction_leaves_distant_germ_alone():
    chain = DualGraphChain((-2, -1), Attachment("edge", 0, (3, 2)))
    assert contract_last(chain).germ == chain.germ


def test_contraction_needs_minus_one_curve():
    with pytest.raises(PreconditionError):
        contract_last(DualGraphChain((-1, -2), Attachment("disjoint")))


@pytest.mark.parametrize(
    "pq,expected",
    [((2, 3), [2, 1, 1]), ((2, 15), [2] * 7 + [1, 1]), ((1, 11), [1])],
)
def test_euclid_sequence(pq, expected):
    assert list(euclid_sequence(pq)) == expected


@pytest.mark.parametrize("pq,delta", [((2, 3), 1), ((2, 15), 7), ((1, 4), 0)])
def test_delta_examples(pq, delta):
    assert delta_invariant(euclid_sequence(pq)) == delta


@given(orders, orders)
def test_delta_lower_bound_sharp_iff_coprime(p, q):
    delta = delta_invariant(euclid_sequence((p, q)))
    assert 2 * delta >= (p - 1) * (q - 1)
    assert (2 * delta == (p - 1) * (q - 1)) == (gcd(p, q) == 1)
    assert 2 * delta == (p - 1) * (q - 1) + gcd(p, q) - 1


def test_ledger_examples():
    assert ledger(2, 3, Fraction(1, 2)).coefficients[0] == 0
    assert all(e > 0 for e in ledger(2, 3, Fraction(1, 3)).coefficients)
    node = node_ledger(1, extra=4)
    assert node.coefficients[0] == -1
    assert all(e >= -1 for e in node.coefficients)


def test_canonical_class_examples():
    assert canonical_class(2, 3, Fraction(1, 2)) == "canonical"
    assert canonical_class(2, 3, Fraction(1, 4)) == "terminal"
    assert canonical_class(1, 1, 1, node=True) == "log-canonical"


@given(st.integers(1, 30), st.integers(1, 30), st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_ledger_agrees_with_shortcut(p, q, c):
    if c == 0:
        c = Fraction(1, 13)
    full = classify_ledger(ledger(p, q, c, extra=3))
    short = shortcut_class(p, q, c)
    if short == "not canonical":
        assert full in ("log-canonical", "worse")
    else:
        assert full == short


@pytest.mark.parametrize("c", [0, Fraction(3, 2), -1])
def test_ledger_rejects_bad_weight(c):
    with pytest.raises(PreconditionError):
        ledger(2, 3, c)


@given(st.integers(1, 20), st.integers(1, 20), st.integers(2, 7))
def test_tau_swap_is_an_involution(p, q, r):
    chain = chain_after_r_blowups(p, q, r)
    assert tau_swap(tau_swap(chain)) == chain
