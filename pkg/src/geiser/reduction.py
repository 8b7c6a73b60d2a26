"""Degree reduction under the Geiser pair, and genus-bound filters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Literal

from .action import (
    CurveClass,
    GeiserWord,
    LeftNodeError,
    SurfaceContext,
    apply_letter,
    apply_word,
    lowering_letter,
)
from .cusp import AtNode
from .exact import PreconditionError, rational_to_json

Outcome = Literal["strict", "tie", "exceptional_d45", "stalled"]
BoundOutcome = Literal["below_2n", "exceptional", "violates", "smooth_germ"]

SEARCH_DEPTH = 8


@dataclass(frozen=True)
class AdmissibilityQuery:
    d: int
    m: Fraction
    p: int
    q: int
    F_self: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        if not 3 <= self.d <= 9:
            raise PreconditionError(f"d must be in 3..9, got {self.d}")
        if self.p < 1 or self.q < 1:
            raise PreconditionError("contact orders must be positive")
        if self.F_self > 0:
            raise PreconditionError("F_self must be <= 0")

    @property
    def meets_only_at_node(self) -> bool:
        return self.p + self.q == self.d * self.m


@dataclass(frozen=True)
class GenusCertificate:
    query: AdmissibilityQuery
    lhs: Fraction
    rhs: Fraction

    @property
    def admissible(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    @property
    def coprime(self) -> bool:
        return gcd(self.query.p, self.query.q) == 1

    @property
    def sharp_lhs(self) -> int:
        """2*delta of the mildest germ with these orders."""
        p, q = self.query.p, self.query.q
        return (p - 1) * (q - 1) + gcd(p, q) - 1

    @property
    def sharp_admissible(self) -> bool:
        return self.sharp_lhs <= self.rhs

    def __bool__(self):
        return self.admissible

    def to_json(self) -> dict:
        q = self.query
        return {
            "d": q.d,
            "m": rational_to_json(q.m),
            "p": q.p,
            "q": q.q,
            "F_self": q.F_self,
            "lhs": rational_to_json(self.lhs),
            "rhs": rational_to_json(self.rhs),
            "admissible": self.admissible,
            "equality": self.equality,
            "sharp_lhs": self.sharp_lhs,
            "sharp_admissible": self.sharp_admissible,
            "coprime": self.coprime,
            "meets_only_at_node": q.meets_only_at_node,
        }


def admissible(query: AdmissibilityQuery) -> GenusCertificate:
    """Check (p-1)(q-1) <= d m (m-1) + 2 + F^2 exactly."""
    lhs = Fraction((query.p - 1) * (query.q - 1))
    rhs = query.d * query.m * (query.m - 1) + 2 + query.F_self
    return GenusCertificate(query, lhs, rhs)


def is_exceptional_d45(d: int, m, p: int, q: int) -> bool:
    m = Fraction(m)
    if m != 1:
        return False
    return (d == 5 and sorted((p, q)) == [2, 3]) or (d == 4 and (p, q) == (2, 2))


def multiplicity_bound(d: int, m, p: int, q: int) -> BoundOutcome:
    """Which alternative of the mult < 2 ndeg dichotomy holds.

    The bound is applied with 2*delta of the mildest germ with orders
    (p, q); for p = q that is (p-1)p, as for a (p, p+1) cusp.  A germ of
    multiplicity one can sit at or above 2n on lines and conics; it is
    reported as ``smooth_germ``.
    """
    m = Fraction(m)
    if p + q != d * m:
        raise PreconditionError(f"p + q = {p + q} but d*m = {d * m}")
    if not admissible(AdmissibilityQuery(d, m, p, q)).sharp_admissible:
        return "violates"
    if is_exceptional_d45(d, m, p, q):
        return "exceptional"
    mu = min(p, q)
    if mu < 2 * m:
        return "below_2n"
    if mu == 1:
        return "smooth_germ"
    raise AssertionError(f"no alternative applies to d={d}, m={m}, ({p},{q})")


@dataclass(frozen=True)
class ReductionReport:
    word: GeiserWord
    start: CurveClass
    final: CurveClass
    outcome: Outcome
    trace: tuple[CurveClass, ...]
    minimizers: tuple[GeiserWord, ...] = field(default=())
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d": self.start.ctx.d,
            "start": self.start.to_json(),
            "word": str(self.word),
            "final": self.final.to_json(),
            "outcome": self.outcome,
            "trace": [c.to_json() for c in self.trace],
            "minimizers": [str(w) for w in self.minimizers],
            "flags": list(self.flags),
        }


def _classify(cls: CurveClass) -> Outcome:
    mu, n = cls.mult, cls.n
    if mu < n:
        return "strict"
    if mu == n:
        return "tie"
    p, q = cls.profile.p, cls.profile.q
    if cls.ctx.d in (4, 5) and (is_exceptional_d45(cls.ctx.d, n, p, q) or (cls.ctx.d == 4 and mu == 2 * n)):
        return "exceptional_d45"
    return "stalled"


def greedy_word(cls: CurveClass) -> tuple[GeiserWord, list[CurveClass]]:
    """Apply the lowering letter while mu > n and it lowers ndeg."""
    word: list[str] = []
    trace = [cls]
    current = cls
    limit = current.profile.total + 1
    while isinstance(current.profile, AtNode) and current.mult > current.n:
        letter = lowering_letter(current)
        image = apply_letter(current, letter)
        if image.n >= current.n:
            break
        word.append(letter)
        trace.append(image)
        current = image
        if len(word) > limit:
            raise AssertionError("reduction failed to terminate")
    return GeiserWord(word), trace


def reduced_words(depth: int):
    """All reduced words of length <= depth (2*depth + 1 of them)."""
    yield GeiserWord()
    for length in range(1, depth + 1):
        for first in "+-":
            letters = [first]
            while len(letters) < length:
                letters.append("-" if letters[-1] == "+" else "+")
            yield GeiserWord(letters)


def search_minimizers(cls: CurveClass, depth: int = SEARCH_DEPTH) -> tuple[Fraction, tuple[GeiserWord, ...]]:
    """Minimal final ndeg over valid words of length <= depth, and its words.

    A word is valid if every proper prefix keeps the germ at the node; the
    full word may end at a smooth point.
    """
    best = None
    words: list[GeiserWord] = []
    for word in reduced_words(depth):
        try:
            image = apply_word(cls, word)
        except LeftNodeError:
            continue
        if best is None or image.n < best:
            best, words = image.n, [word]
        elif image.n == best:
            words.append(word)
    return best, tuple(words)


def reduce(ctx: SurfaceContext, cls: CurveClass, search_depth: int = SEARCH_DEPTH) -> ReductionReport:
    ctx.require_pair()
    if cls.ctx != ctx:
        raise PreconditionError("class lives on a different surface")
    if not isinstance(cls.profile, AtNode):
        raise PreconditionError("reduction starts from a germ at the node")
    p, q = cls.profile.p, cls.profile.q
    cert = admissible(AdmissibilityQuery(ctx.d, cls.n, p, q))
    if not cert.sharp_admissible:
        raise PreconditionError(
            f"inadmissible: 2*delta >= {cert.sharp_lhs} > {cert.rhs} = d m (m-1) + 2"
        )
    return analyze(cls, search_depth)


def analyze(cls: CurveClass, search_depth: int = SEARCH_DEPTH) -> ReductionReport:
    """Greedy reduction plus exhaustive minimizer search, without the genus filter."""
    p, q = cls.profile.p, cls.profile.q
    word, trace = greedy_word(cls)
    final = trace[-1]
    outcome: Outcome = "strict" if not isinstance(final.profile, AtNode) else _classify(final)
    flags = []
    if gcd(p, q) != 1:
        flags.append("non-coprime profile")
    if outcome == "stalled":
        flags.append("no word reaches mult <= ndeg")
    _, minimizers = search_minimizers(cls, search_depth)
    return ReductionReport(word, cls, final, outcome, tuple(trace), minimizers, tuple(flags))
