from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geiser.action import (
    CurveClass,
    GeiserWord,
    LeftNodeError,
    SurfaceContext,
    apply_letter,
    apply_word,
    class_group_of_complement,
    formula_readings,
    lowering_letter,
    ndeg_after,
    raising_letter,
    sigma_images,
    sigma_minus_profile,
    sigma_plus_profile,
    simulate_geiser,
    trace_word,
    unordered_images,
)
from geiser.cusp import AtNode, AtSmoothPoint
from geiser.exact import PreconditionError

F = Fraction
D9 = SurfaceContext(9)
ds = st.integers(4, 9)
pq = st.integers(1, 40)


@pytest.mark.parametrize(
    "profile,image",
    [
        (AtNode(1, 5), AtNode(1, 2)),
        (AtNode(5, 1), AtNode(5, 34)),
        (AtNode(1, 7), AtSmoothPoint(1)),
        (AtNode(1, 8), AtNode(1, 8)),
        (AtNode(2, 3), AtNode(2, 11)),
    ],
)
def test_sigma_plus_examples(profile, image):
    assert sigma_plus_profile(D9, profile) == image


@pytest.mark.parametrize(
    "profile,image",
    [
        (AtNode(5, 1), AtNode(2, 1)),
        (AtNode(8, 1), AtNode(8, 1)),
        (AtNode(7, 1), AtSmoothPoint(1)),
    ],
)
def test_sigma_minus_examples(profile, image):
    assert sigma_minus_profile(D9, profile) == image


def test_sigma_rejects_smooth_point():
    with pytest.raises(PreconditionError):
        sigma_plus_profile(D9, AtSmoothPoint(1))


def test_ndeg_after_examples():
    conic = CurveClass(D9, F(2, 3), AtNode(1, 5))
    assert ndeg_after(D9, conic, raising_letter(conic)) == F(13, 3)
    assert ndeg_after(D9, conic, lowering_letter(conic)) == F(1, 3)
    fixed = CurveClass.at_node(9, 1, 8)
    assert ndeg_after(D9, fixed, lowering_letter(fixed)) == 1
    d5 = CurveClass.at_node(5, 2, 3)
    assert ndeg_after(d5.ctx, d5, lowering_letter(d5)) == 1


def test_global_consistency_is_enforced():
    with pytest.raises(PreconditionError):
        apply_letter(CurveClass(D9, F(1), AtNode(1, 5)), "+")


def test_word_examples():
    line = CurveClass.at_node(9, 1, 1)
    assert apply_word(line, "") == line
    assert apply_word(line, GeiserWord("++")) == line
    assert apply_word(line, "+-+-+-").n > apply_word(line, "+-+-").n


def test_word_leaving_node_is_reported():
    with pytest.raises(LeftNodeError) as info:
        apply_word(CurveClass.at_node(9, 1, 7), "+-")
    assert str(info.value.prefix) == "+"
    assert info.value.profile == AtSmoothPoint(1)


def test_trace_word_lists_prefixes():
    line = CurveClass.at_node(9, 1, 1)
    trace = trace_word(line, "+-")
    assert len(trace) == 3 and trace[0] == line


@given(st.lists(st.sampled_from("+-"), max_size=12))
def test_geiser_word_is_reduced(letters):
    w = GeiserWord(letters)
    assert all(a != b for a, b in zip(w, w[1:]))
    assert GeiserWord.parse(str(w) if w else "") == w
    assert w * w.inverse() == GeiserWord()


def test_simulation_examples():
    assert simulate_geiser(D9, AtNode(5, 1), "-") == AtNode(2, 1)
    d4 = SurfaceContext(4)
    assert simulate_geiser(d4, AtNode(2, 2), "+") == AtNode(2, 2)
    assert simulate_geiser(d4, AtNode(2, 2), "-") == AtNode(2, 2)
    assert simulate_geiser(D9, AtNode(2, 3), "+") == AtNode(2, 11)


@settings(max_examples=400)
@given(ds, pq, pq, st.sampled_from("+-"))
def test_oracle_equivalence(d, p, q, letter):
    ctx = SurfaceContext(d)
    profile = AtNode(p, q)
    assert simulate_geiser(ctx, profile, letter) == sigma_images(ctx, profile)[letter]


@given(ds, pq, pq, st.sampled_from("+-"))
def test_involution(d, p, q, letter):
    ctx = SurfaceContext(d)
    cls = CurveClass.at_node(d, p, q)
    image = apply_letter(cls, letter)
    if isinstance(image.profile, AtNode):
        assert apply_letter(image, letter) == cls
    assert ctx.d * image.n == image.profile.total


@given(ds, pq, pq)
def test_degree_growth(d, p, q):
    cls = CurveClass.at_node(d, p, q)
    grown = apply_letter(cls, raising_letter(cls)).n
    if d == 4 and cls.mult == 2 * cls.n:
        assert grown == cls.n
    else:
        assert grown > cls.n


@given(ds, pq, pq)
def test_degree_decrease(d, p, q):
    cls = CurveClass.at_node(d, p, q)
    if cls.n < cls.mult < 2 * cls.n:
        assert apply_letter(cls, lowering_letter(cls)).n < cls.n


@given(ds, pq, pq)
def test_high_ratio_reading_always_holds(d, p, q):
    assert formula_readings(CurveClass.at_node(d, p, q)).high_ratio_holds


def test_low_ratio_reading_fails_on_conic_example():
    readings = formula_readings(CurveClass(D9, F(2, 3), AtNode(1, 5)))
    assert not readings.low_ratio_holds
    assert readings.low_ratio == F(-5, 3)
    assert readings.observed == {F(1, 3), F(13, 3)}


def test_unordered_images_forget_labels():
    a = unordered_images(D9, AtNode(1, 5))
    b = unordered_images(D9, AtNode(5, 1))
    assert {x.swapped() for x in a if isinstance(x, AtNode)} == {x for x in b if isinstance(x, AtNode)}


def test_pair_needs_degree_four():
    with pytest.raises(PreconditionError):
        simulate_geiser(SurfaceContext(3), AtNode(1, 2), "+")


@pytest.mark.parametrize(
    "surface,d,group",
    [("P2", None, "Z/3"), ("P1xP1", None, "Z + Z/2"), ("blown_up", 5, "Z^4"), ("blown_up", 8, "Z")],
)
def test_class_groups(surface, d, group):
    assert class_group_of_complement(surface, d) == group
