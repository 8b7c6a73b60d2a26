from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from geiser.action import CurveClass, apply_word
from geiser.cusp import AtNode
from geiser.exact import PreconditionError
from geiser.reduction import (
    AdmissibilityQuery,
    admissible,
    analyze,
    greedy_word,
    multiplicity_bound,
    reduce,
    reduced_words,
    search_minimizers,
)

F = Fraction
pq = st.integers(1, 30)


def _sharp_ok(d, p, q):
    cls = CurveClass.at_node(d, p, q)
    return admissible(AdmissibilityQuery(d, cls.n, p, q)).sharp_admissible


@pytest.mark.parametrize(
    "d,m,p,q,ok,equal",
    [(9, F(1, 3), 1, 2, True, True), (5, 1, 2, 3, True, True), (9, 1, 4, 5, False, False)],
)
def test_admissible_examples(d, m, p, q, ok, equal):
    cert = admissible(AdmissibilityQuery(d, m, p, q))
    assert cert.admissible is ok
    assert cert.equality is equal


def test_sharp_bound_is_stricter_off_the_coprime_locus():
    cert = admissible(AdmissibilityQuery(5, 1, 2, 2))
    assert cert.lhs == 1 and cert.sharp_lhs == 2


@pytest.mark.parametrize(
    "d,m,p,q,outcome",
    [
        (9, F(2, 3), 1, 5, "below_2n"),
        (4, 1, 2, 2, "exceptional"),
        (6, 1, 3, 3, "violates"),
        (9, F(1, 3), 1, 2, "smooth_germ"),
    ],
)
def test_multiplicity_bound_examples(d, m, p, q, outcome):
    assert multiplicity_bound(d, m, p, q) == outcome


def test_multiplicity_bound_needs_global_profile():
    with pytest.raises(PreconditionError):
        multiplicity_bound(9, 1, 1, 2)


@pytest.mark.parametrize(
    "d,p,q,word,final,outcome",
    [
        (9, 1, 5, "+", AtNode(1, 2), "stalled"),
        (9, 2, 13, "+", AtNode(2, 1), "stalled"),
        (9, 1, 8, "1", AtNode(1, 8), "tie"),
        (5, 2, 3, "1", AtNode(2, 3), "exceptional_d45"),
        (9, 1, 2, "1", AtNode(1, 2), "stalled"),
    ],
)
def test_reduce_examples(d, p, q, word, final, outcome):
    cls = CurveClass.at_node(d, p, q)
    report = reduce(cls.ctx, cls)
    assert str(report.word) == word
    assert report.final.profile == final
    assert report.outcome == outcome


def test_tie_has_two_minimizers():
    cls = CurveClass.at_node(9, 1, 8)
    assert [str(w) for w in reduce(cls.ctx, cls).minimizers] == ["1", "+"]


def test_reduce_refuses_inadmissible_and_small_degree():
    cls = CurveClass.at_node(9, 4, 5)
    with pytest.raises(PreconditionError):
        reduce(cls.ctx, cls)
    d3 = CurveClass.at_node(3, 1, 2)
    with pytest.raises(PreconditionError):
        reduce(d3.ctx, d3)


def test_reduced_words_count():
    words = list(reduced_words(8))
    assert len(words) == 17 == len(set(words))


@settings(max_examples=300)
@given(st.integers(4, 9), pq, pq)
def test_greedy_terminates_and_decreases(d, p, q):
    cls = CurveClass.at_node(d, p, q)
    word, trace = greedy_word(cls)
    assert len(word) <= p + q
    assert all(b.n < a.n for a, b in zip(trace, trace[1:]))
    assert apply_word(cls, word) == trace[-1]


@settings(max_examples=300)
@given(st.integers(6, 9), pq, pq)
def test_dichotomy(d, p, q):
    assume(admissible(AdmissibilityQuery(d, F(p + q, d), p, q)).admissible)
    report = analyze(CurveClass.at_node(d, p, q))
    best, words = search_minimizers(report.start)
    assert best == report.final.n
    if report.outcome == "strict":
        assert len(words) == 1
    elif report.outcome == "tie":
        assert len(words) == 2


def test_exceptional_set():
    exceptional = set()
    for d in range(4, 10):
        for p in range(2, 31):
            for q in range(2, 31):
                if not _sharp_ok(d, p, q):
                    continue
                report = analyze(CurveClass.at_node(d, p, q), search_depth=0)
                if report.outcome == "stalled":
                    assert report.final.mult == 1  # ends on a line or conic through the node
                if report.outcome == "exceptional_d45":
                    exceptional.add((d, report.final.profile.p, report.final.profile.q))
    assert exceptional == {(4, 2, 2), (5, 2, 3), (5, 3, 2)}
