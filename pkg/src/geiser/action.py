"""The two Geiser involutions acting on contact profiles and normalized degrees.

Closed forms on (p, q) are the normative definition.  ``simulate_geiser``
recomputes them from scratch by blowing up r = d - 2 times along one branch,
applying the covering involution to the chain and contracting back; the two
routes are compared exhaustively in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .cusp import (
    AtNode,
    AtSmoothPoint,
    ContactProfile,
    chain_after_r_blowups,
    contract_last,
    tau_swap,
)
from .exact import PreconditionError, rational_to_json

Letter = Literal["+", "-"]


class LeftNodeError(PreconditionError):
    """A word moved the curve off the node, where the action is undefined."""

    def __init__(self, prefix: "GeiserWord", profile: ContactProfile):
        super().__init__(f"prefix {prefix} left the node (profile {profile})")
        self.prefix = prefix
        self.profile = profile


@dataclass(frozen=True)
class SurfaceContext:
    d: int

    def __post_init__(self):
        if not 3 <= self.d <= 9:
            raise PreconditionError(f"Del Pezzo degree must be in 3..9, got {self.d}")

    @property
    def r(self) -> int:
        return self.d - 2

    @property
    def has_geiser_pair(self) -> bool:
        return self.d >= 4

    def require_pair(self):
        if not self.has_geiser_pair:
            raise PreconditionError("the two involutions coincide unless d >= 4")


@dataclass(frozen=True)
class CurveClass:
    ctx: SurfaceContext
    n: Fraction
    profile: ContactProfile

    @classmethod
    def at_node(cls, d: int, p: int, q: int) -> "CurveClass":
        """Class of a curve meeting the boundary only at the node."""
        return cls(SurfaceContext(d), Fraction(p + q, d), AtNode(p, q))

    @property
    def mult(self) -> int:
        return self.profile.mult

    def to_json(self) -> dict:
        return {"d": self.ctx.d, "ndeg": rational_to_json(self.n), "profile": self.profile.to_json()}


class GeiserWord(tuple):
    """Reduced word in the two involutions, read left to right."""

    def __new__(cls, letters: Iterable[str] = ()):
        out: list[str] = []
        for ch in letters:
            if ch not in "+-":
                raise PreconditionError(f"letters are '+' and '-', got {ch!r}")
            if out and out[-1] == ch:
                out.pop()
            else:
                out.append(ch)
        return super().__new__(cls, out)

    @classmethod
    def parse(cls, text: str) -> "GeiserWord":
        return cls(ch for ch in text if not ch.isspace())

    def __mul__(self, other) -> "GeiserWord":
        return GeiserWord(tuple(self) + tuple(other))

    def inverse(self) -> "GeiserWord":
        return GeiserWord(reversed(self))

    def __str__(self):
        return "".join(self) or "1"


def other_letter(letter: Letter) -> Letter:
    return "-" if letter == "+" else "+"


def sigma_plus_profile(ctx: SurfaceContext, profile: ContactProfile) -> ContactProfile:
    ctx.require_pair()
    if not isinstance(profile, AtNode):
        raise PreconditionError("the involutions are only defined on germs at the node")
    p, q, r = profile.p, profile.q, ctx.r
    if q < r * p:
        return AtNode(p, r * p - q)
    if q > r * p:
        return AtNode(q - r * p, p + r * (q - r * p))
    return AtSmoothPoint(p)


def sigma_minus_profile(ctx: SurfaceContext, profile: ContactProfile) -> ContactProfile:
    if not isinstance(profile, AtNode):
        raise PreconditionError("the involutions are only defined on germs at the node")
    image = sigma_plus_profile(ctx, profile.swapped())
    return image.swapped() if isinstance(image, AtNode) else image


def sigma_profile(ctx: SurfaceContext, profile: ContactProfile, letter: Letter) -> ContactProfile:
    if letter == "+":
        return sigma_plus_profile(ctx, profile)
    if letter == "-":
        return sigma_minus_profile(ctx, profile)
    raise PreconditionError(f"unknown letter {letter!r}")


def sigma_images(ctx: SurfaceContext, profile: ContactProfile) -> dict[str, ContactProfile]:
    return {"+": sigma_plus_profile(ctx, profile), "-": sigma_minus_profile(ctx, profile)}


def unordered_images(ctx: SurfaceContext, profile: ContactProfile) -> frozenset:
    return frozenset(sigma_images(ctx, profile).values())


def _check_global(cls: CurveClass):
    if cls.ctx.d * cls.n != cls.profile.total:
        raise PreconditionError(
            f"d*ndeg = {cls.ctx.d * cls.n} does not match total contact {cls.profile.total}"
        )


def apply_letter(cls: CurveClass, letter: Letter) -> CurveClass:
    _check_global(cls)
    image = sigma_profile(cls.ctx, cls.profile, letter)
    return CurveClass(cls.ctx, Fraction(image.total, cls.ctx.d), image)


def ndeg_after(ctx: SurfaceContext, cls: CurveClass, letter: Letter) -> Fraction:
    """Normalized degree of the image, read off from the image profile."""
    if cls.ctx != ctx:
        raise PreconditionError("class lives on a different surface")
    return apply_letter(cls, letter).n


def lowering_letter(cls: CurveClass) -> Letter:
    """The letter with the smaller image degree ('+' on ties)."""
    plus = ndeg_after(cls.ctx, cls, "+")
    minus = ndeg_after(cls.ctx, cls, "-")
    return "-" if minus < plus else "+"


def raising_letter(cls: CurveClass) -> Letter:
    return other_letter(lowering_letter(cls))


def apply_word(cls: CurveClass, word: GeiserWord | str) -> CurveClass:
    if isinstance(word, str):
        word = GeiserWord.parse(word)
    current = cls
    for i, letter in enumerate(word):
        if not isinstance(current.profile, AtNode):
            raise LeftNodeError(GeiserWord(word[:i]), current.profile)
        current = apply_letter(current, letter)
    return current


def trace_word(cls: CurveClass, word: GeiserWord | str) -> list[CurveClass]:
    """Classes after each prefix of the word (the input included)."""
    if isinstance(word, str):
        word = GeiserWord.parse(word)
    out = [cls]
    for i in range(len(word)):
        out.append(apply_word(cls, GeiserWord(word[: i + 1])))
    return out


def simulate_geiser(ctx: SurfaceContext, profile: ContactProfile, branch: Letter) -> ContactProfile:
    """Blow up r times along a branch, swap by the involution, contract back."""
    ctx.require_pair()
    if not isinstance(profile, AtNode):
        raise PreconditionError("simulation starts from a germ at the node")
    if branch == "-":
        image = simulate_geiser(ctx, profile.swapped(), "+")
        return image.swapped() if isinstance(image, AtNode) else image
    if branch != "+":
        raise PreconditionError(f"unknown branch {branch!r}")
    chain = tau_swap(chain_after_r_blowups(profile.p, profile.q, ctx.r))
    for _ in range(ctx.r):
        chain = contract_last(chain)
    return chain.germ_profile()


@dataclass(frozen=True)
class FormulaReadings:
    """Both readings of the case condition in the degree-change formula."""

    raise_value: Fraction
    low_ratio: Fraction
    high_ratio: Fraction
    observed: frozenset

    @property
    def low_ratio_holds(self) -> bool:
        return frozenset({self.raise_value, self.low_ratio}) == self.observed

    @property
    def high_ratio_holds(self) -> bool:
        return frozenset({self.raise_value, self.high_ratio}) == self.observed

    def to_json(self) -> dict:
        return {
            "raising": rational_to_json(self.raise_value),
            "low_ratio_value": rational_to_json(self.low_ratio),
            "high_ratio_value": rational_to_json(self.high_ratio),
            "observed": sorted(rational_to_json(x) for x in self.observed),
            "low_ratio_holds": self.low_ratio_holds,
            "high_ratio_holds": self.high_ratio_holds,
        }


def formula_readings(cls: CurveClass) -> FormulaReadings:
    """Compare the mult/ndeg formulas against the closed-form images.

    The raising image always has ndeg (d-1)n - mu.  The other image is
    either mu - n or (d-1)n - (d-2)mu.  The low-ratio reading picks mu - n
    when mu/n <= d/(d-1), the high-ratio reading when mu/n >= d/(d-1); only
    the latter matches the images on every profile.
    """
    d, n, mu = cls.ctx.d, cls.n, Fraction(cls.mult)
    threshold = Fraction(d, d - 1)
    first = mu - n
    second = (d - 1) * n - (d - 2) * mu
    low = first if threshold >= mu / n else second
    high = first if mu / n >= threshold else second
    observed = frozenset({ndeg_after(cls.ctx, cls, "+"), ndeg_after(cls.ctx, cls, "-")})
    return FormulaReadings((d - 1) * n - mu, low, high, observed)


CLASS_GROUPS = {"P2": "Z/3", "P1xP1": "Z + Z/2"}


def class_group_of_complement(surface: str, d: int | None = None) -> str:
    """Class group of S minus N over an algebraically closed field, S smooth."""
    if surface in CLASS_GROUPS:
        return CLASS_GROUPS[surface]
    if surface == "blown_up":
        if d is None or not 1 <= d <= 8:
            raise PreconditionError("a blown-up plane has degree 1..8")
        rank = 9 - d
        return "Z" if rank == 1 else f"Z^{rank}"
    raise PreconditionError(f"unknown surface {surface!r}")
