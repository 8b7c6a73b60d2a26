"""Plane curves against the nodal cubic N = (xyz = x^3 + y^3).

N is parametrized by t -> (t : t^2 : 1 + t^3).  Both t = 0 and t = oo land
on the node (0:0:1); t = 0 is the branch tangent to y = 0 and t = oo the
branch tangent to x = 0.  A curve g of degree e meets N along
f(t) = g(t, t^2, 1 + t^3), a polynomial of degree <= 3e, and its orders at
the node are ord_0 f and 3e - deg f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .cusp import AtNode, AtSmoothPoint, ContactProfile, Disjoint
from .exact import (
    HomPoly3,
    PreconditionError,
    SolutionSpace,
    TruncSeries,
    UniPoly,
    determinant,
    factor_hompoly,
    factor_over_q,
    finite_order,
    from_coefficients,
    lagrange_interpolate,
    monomials_of_degree,
    parse_hompoly,
    rational_to_json,
    solve_linear,
    truncation_order,
)
from .singularity import delta_at_point, newton_delta_at_point

Branch = Literal["t0", "tinf"]


class ContainsNError(PreconditionError):
    def __init__(self, curve: HomPoly3):
        super().__init__(f"curve {curve} contains N")
        self.curve = curve


@dataclass(frozen=True)
class NodalCubic:
    equation: HomPoly3 = field(default_factory=lambda: parse_hompoly("x*y*z - x^3 - y^3"))
    param: tuple[UniPoly, UniPoly, UniPoly] = field(
        default_factory=lambda: (UniPoly([0, 1]), UniPoly([0, 0, 1]), UniPoly([1, 0, 0, 1]))
    )

    node = (Fraction(0), Fraction(0), Fraction(1))

    def point_at(self, t0) -> tuple[Fraction, Fraction, Fraction]:
        if t0 is None:
            return self.node
        t0 = Fraction(t0)
        return (t0, t0 * t0, 1 + t0**3)

    def pullback(self, curve: HomPoly3) -> UniPoly:
        return curve.substitute(*self.param)


N_CUBIC = NodalCubic()


@dataclass(frozen=True)
class RootFactor:
    """A finite nonzero intersection parameter, as an irreducible factor over Q."""

    factor: UniPoly
    multiplicity: int

    @property
    def rational_root(self) -> Fraction | None:
        return -self.factor[0] if self.factor.degree == 1 else None

    def to_json(self) -> dict:
        out = {"factor": self.factor.to_text("t"), "multiplicity": self.multiplicity}
        if self.rational_root is not None:
            out["root"] = rational_to_json(self.rational_root)
        return out


@dataclass(frozen=True)
class PlaneContactReport:
    curve: HomPoly3
    f: UniPoly
    order_at_zero: int
    order_at_infinity: int
    roots: tuple[RootFactor, ...]

    @property
    def total(self) -> int:
        return (
            self.order_at_zero
            + self.order_at_infinity
            + sum(r.multiplicity * r.factor.degree for r in self.roots)
        )

    @property
    def node_profile(self) -> AtNode | None:
        if self.order_at_zero and self.order_at_infinity:
            return AtNode(self.order_at_infinity, self.order_at_zero)
        return None

    def profile(self) -> ContactProfile:
        """Boundary profile when the curve meets N in a single point."""
        if not self.roots:
            if self.node_profile is not None:
                return self.node_profile
            raise PreconditionError("curve meets the node along one branch only")
        if self.order_at_zero or self.order_at_infinity or len(self.roots) > 1:
            raise PreconditionError("curve meets N in more than one point")
        (root,) = self.roots
        if root.rational_root is None:
            raise PreconditionError("single intersection point is not rational")
        return AtSmoothPoint(root.multiplicity)

    def single_point(self):
        """(t0, projective point) for a curve meeting N once; t0 None at the node."""
        prof = self.profile()
        if isinstance(prof, AtNode):
            return None, N_CUBIC.node
        t0 = self.roots[0].rational_root
        return t0, N_CUBIC.point_at(t0)

    def to_json(self) -> dict:
        prof = None
        try:
            prof = self.profile().to_json()
        except PreconditionError:
            pass
        return {
            "schema": 1,
            "curve": str(self.curve),
            "degree": self.curve.degree,
            "f": self.f.to_text("t"),
            "order_at_zero": self.order_at_zero,
            "order_at_infinity": self.order_at_infinity,
            "roots": [r.to_json() for r in self.roots],
            "total": self.total,
            "single_point_profile": prof,
        }


def contact_profile_of(curve: HomPoly3) -> PlaneContactReport:
    f = N_CUBIC.pullback(curve)
    if f.is_zero():
        raise ContainsNError(curve)
    ord0 = f.order()
    ordinf = 3 * curve.degree - f.degree
    rest = UniPoly(f.coeffs[ord0:])
    roots = tuple(RootFactor(fac, m) for fac, m in factor_over_q(rest)) if rest.degree > 0 else ()
    return PlaneContactReport(curve, f, ord0, ordinf, roots)


# ---------------------------------------------------------------------------
# branch series at the node


def node_branch_series(branch: Branch, order: int | None = None) -> tuple[TruncSeries, TruncSeries]:
    """Affine (x(s), y(s)) of a node branch in the chart z = 1, mod s^(order+1)."""
    N = truncation_order() if order is None else order + 1
    denom = TruncSeries([1, 0, 0, 1], N)
    a = TruncSeries([0, 1], N) / denom
    b = TruncSeries([0, 0, 1], N) / denom
    if branch == "t0":
        return a, b
    if branch == "tinf":
        return b, a
    raise PreconditionError(f"unknown branch {branch!r}")


def branch_contact_order(curve: HomPoly3, branch: Branch, order: int | None = None) -> int:
    xs, ys = node_branch_series(branch, order)
    one = TruncSeries([1], xs.N)
    return finite_order(curve.substitute_series(xs, ys, one))


# ---------------------------------------------------------------------------
# linear conditions on f(t)


def pullback_matrix(curve_degree: int) -> tuple[list[tuple[int, int, int]], list[list[Fraction]]]:
    """Rows indexed by t^k (k = 0..3e), columns by monomials of degree e."""
    monos = monomials_of_degree(curve_degree)
    cols = [N_CUBIC.pullback(HomPoly3(curve_degree, {m: 1})) for m in monos]
    size = 3 * curve_degree + 1
    rows = [[col[k] for col in cols] for k in range(size)]
    return monos, rows


def _shifted_rows(curve_degree: int, t0: Fraction) -> list[list[Fraction]]:
    """Same as pullback_matrix, expanded around t = t0."""
    monos = monomials_of_degree(curve_degree)
    shift = UniPoly([t0, 1])
    cols = [N_CUBIC.pullback(HomPoly3(curve_degree, {m: 1})).compose(shift) for m in monos]
    return [[col[k] for col in cols] for k in range(3 * curve_degree + 1)]


def _basis(space: SolutionSpace, curve_degree: int) -> list[HomPoly3]:
    return [from_coefficients(curve_degree, v) for v in space.kernel]


def contact_linear_system(target_order: int, at, curve_degree: int) -> list[HomPoly3]:
    """Basis of degree-e forms whose pullback vanishes to target_order at ``at``.

    ``at`` is "t0" or "tinf" for a node branch, or a rational parameter of a
    smooth point of N.
    """
    if target_order < 0:
        raise PreconditionError("target order must be nonnegative")
    size = 3 * curve_degree + 1
    if at == "t0":
        _, rows = pullback_matrix(curve_degree)
        cond = rows[:target_order]
    elif at == "tinf":
        _, rows = pullback_matrix(curve_degree)
        cond = rows[max(size - target_order, 0):]
    else:
        cond = _shifted_rows(curve_degree, Fraction(at))[:target_order]
    ncols = len(monomials_of_degree(curve_degree))
    if not cond:
        cond = [[Fraction(0)] * ncols]
    space = solve_linear(cond, [Fraction(0)] * len(cond))
    return _basis(space, curve_degree)


def profile_linear_system(p: int, q: int, curve_degree: int | None = None) -> list[HomPoly3]:
    """Forms with order >= p along t = oo and >= q along t = 0."""
    if curve_degree is None:
        if (p + q) % 3:
            raise PreconditionError(f"p + q = {p + q} is not 3*degree; pass the degree")
        curve_degree = (p + q) // 3
    size = 3 * curve_degree + 1
    _, rows = pullback_matrix(curve_degree)
    cond = rows[:q] + rows[max(size - p, q):]
    if not cond:
        return [from_coefficients(curve_degree, v) for v in _identity(curve_degree)]
    return _basis(solve_linear(cond, [Fraction(0)] * len(cond)), curve_degree)


def _identity(curve_degree: int):
    n = len(monomials_of_degree(curve_degree))
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def in_span(poly: HomPoly3, basis: Sequence[HomPoly3]) -> bool:
    if not basis:
        return poly.is_zero()
    monos = monomials_of_degree(poly.degree)
    cols = [b.coefficient_vector(monos) for b in basis]
    rows = [[col[k] for col in cols] for k in range(len(monos))]
    return solve_linear(rows, poly.coefficient_vector(monos)).consistent


# ---------------------------------------------------------------------------
# tangency solvers


@dataclass(frozen=True)
class TangentSolution:
    t0: Fraction
    curve: HomPoly3
    degenerate: bool = False

    def to_json(self) -> dict:
        return {"t0": rational_to_json(self.t0), "curve": str(self.curve), "degenerate": self.degenerate}


@dataclass(frozen=True)
class TangencyReport:
    curve_degree: int
    order: int
    condition: UniPoly
    solutions: tuple[TangentSolution, ...]
    closure_count: int
    nondegenerate_closure_count: int

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "curve_degree": self.curve_degree,
            "contact_order": self.order,
            "condition": self.condition.to_text("t"),
            "condition_factors": [
                {"factor": f.to_text("t"), "multiplicity": m} for f, m in factor_over_q(self.condition)
            ],
            "rational_solutions": [s.to_json() for s in self.solutions],
            "closure_count": self.closure_count,
            "nondegenerate_closure_count": self.nondegenerate_closure_count,
        }


def _target_vector(k: int, size: int, t0: Fraction) -> list[Fraction]:
    target = UniPoly([-t0, 1]) ** k
    return [target[i] for i in range(size)]


def tangency_condition(curve_degree: int, k: int) -> UniPoly:
    """Monic polynomial in t0 vanishing iff some form has f proportional to (t - t0)^k.

    The pullback map is injective below degree 3, so the condition is the
    determinant of [M | (t - t0)^k], a polynomial of degree <= k in t0.
    """
    monos, rows = pullback_matrix(curve_degree)
    if len(rows) != len(monos) + 1:
        raise PreconditionError("determinant condition needs 3e + 1 = dim + 1")
    size = len(rows)

    def det_at(t0: Fraction) -> Fraction:
        target = _target_vector(k, size, t0)
        return determinant([row + [target[i]] for i, row in enumerate(rows)])

    pts = [(Fraction(i), det_at(Fraction(i))) for i in range(k + 1)]
    return lagrange_interpolate(pts).monic()


def solve_tangent(curve_degree: int, k: int, t0) -> SolutionSpace:
    _, rows = pullback_matrix(curve_degree)
    return solve_linear(rows, _target_vector(k, len(rows), Fraction(t0)))


def _normalize(curve: HomPoly3) -> HomPoly3:
    lead_mono = (0, 0, curve.degree)
    lead = curve.terms.get(lead_mono) or curve.terms[max(curve.terms)]
    return curve * (1 / lead)


def _conic_matrix(conic: HomPoly3) -> list[list[Fraction]]:
    c = lambda e: conic.terms.get(e, Fraction(0))  # noqa: E731
    return [
        [c((2, 0, 0)), c((1, 1, 0)) / 2, c((1, 0, 1)) / 2],
        [c((1, 1, 0)) / 2, c((0, 2, 0)), c((0, 1, 1)) / 2],
        [c((1, 0, 1)) / 2, c((0, 1, 1)) / 2, c((0, 0, 2))],
    ]


def _is_degenerate(curve: HomPoly3) -> bool:
    if curve.degree == 1:
        return False
    if curve.degree == 2:
        return determinant(_conic_matrix(curve)) == 0
    raise PreconditionError("degeneracy test is for lines and conics")


def _tangency(curve_degree: int, k: int, degenerate_locus: UniPoly | None) -> TangencyReport:
    cond = tangency_condition(curve_degree, k)
    solutions = []
    for fac, _ in factor_over_q(cond):
        if fac.degree != 1:
            continue
        t0 = -fac[0]
        space = solve_tangent(curve_degree, k, t0)
        curve = _normalize(from_coefficients(curve_degree, space.particular))
        solutions.append(TangentSolution(t0, curve, _is_degenerate(curve)))
    bad = 0 if degenerate_locus is None else cond.gcd(degenerate_locus).degree
    return TangencyReport(curve_degree, k, cond, tuple(solutions), cond.degree, cond.degree - bad)


def find_flex_tangents() -> TangencyReport:
    return _tangency(1, 3, None)


def find_six_tangent_conics() -> TangencyReport:
    """Conics with f proportional to (t - t0)^6.

    The solution is unique when it exists, so it degenerates exactly when it
    is the square of a flex tangent, i.e. on the flex locus.
    """
    return _tangency(2, 6, tangency_condition(1, 3))


# ---------------------------------------------------------------------------
# unit pencils


@dataclass(frozen=True)
class FiberSample:
    lambda_mu: tuple[Fraction, Fraction]
    fiber: HomPoly3
    delta_blowup: int
    delta_newton: int
    irreducible: bool

    @property
    def degree(self) -> int:
        return self.fiber.degree

    @property
    def genus(self) -> int:
        return (self.degree - 1) * (self.degree - 2) // 2 - self.delta_blowup

    @property
    def oracles_agree(self) -> bool:
        return self.delta_blowup == self.delta_newton

    def to_json(self) -> dict:
        return {
            "lambda_mu": [rational_to_json(c) for c in self.lambda_mu],
            "fiber_degree": self.degree,
            "delta_blowup": self.delta_blowup,
            "delta_newton": self.delta_newton,
            "oracles_agree": self.oracles_agree,
            "geometric_genus": self.genus,
            "irreducible_over_Q": self.irreducible,
        }


DEFAULT_SAMPLES = ((1, -1), (1, 1), (2, -3))


@dataclass(frozen=True)
class PencilFiberReport:
    curve: HomPoly3
    base_point: tuple[Fraction, Fraction, Fraction]
    base_parameter: Fraction | None
    samples: tuple[FiberSample, ...]

    @property
    def primary(self) -> FiberSample:
        return self.samples[0]

    @property
    def fiber_degree(self) -> int:
        return self.primary.degree

    @property
    def delta_at_base(self) -> int:
        return self.primary.delta_blowup

    @property
    def geometric_genus(self) -> int:
        return self.primary.genus

    @property
    def oracles_agree(self) -> bool:
        return all(s.oracles_agree for s in self.samples)

    @property
    def generic_certified(self) -> bool:
        """Every sample gives the same (delta, genus) by both oracles."""
        values = {(s.delta_blowup, s.delta_newton, s.genus) for s in self.samples}
        return len(values) == 1

    def compare(self, delta, genus) -> dict:
        return {
            "reference_delta": delta,
            "reference_genus": genus,
            "delta_agrees": self.delta_at_base == delta,
            "genus_agrees": self.geometric_genus == genus,
        }

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "curve": str(self.curve),
            "base_point": [rational_to_json(c) for c in self.base_point],
            "base_parameter": None if self.base_parameter is None else rational_to_json(self.base_parameter),
            "fiber_degree": self.fiber_degree,
            "delta_at_base": self.delta_at_base,
            "geometric_genus": self.geometric_genus,
            "oracles_agree": self.oracles_agree,
            "generic_certified": self.generic_certified,
            "reducible_samples": [
                [rational_to_json(c) for c in s.lambda_mu] for s in self.samples if not s.irreducible
            ],
            "samples": [s.to_json() for s in self.samples],
        }


def unit_pencil_fiber(curve: HomPoly3, lam, mu) -> HomPoly3:
    """lam N^e + mu g^3 if 3 does not divide e, else lam N^(e/3) + mu g."""
    e = curve.degree
    lam, mu = Fraction(lam), Fraction(mu)
    if e % 3:
        return N_CUBIC.equation**e * lam + curve**3 * mu
    return N_CUBIC.equation ** (e // 3) * lam + curve * mu


def is_irreducible(poly: HomPoly3) -> bool:
    _, factors = factor_hompoly(poly)
    return len(factors) == 1 and factors[0][1] == 1


def fiber_report(curve: HomPoly3, samples=DEFAULT_SAMPLES) -> PencilFiberReport:
    report = contact_profile_of(curve)
    t0, point = report.single_point()
    out = []
    for lam, mu in samples:
        lam, mu = Fraction(lam), Fraction(mu)
        if lam == 0 or mu == 0:
            raise PreconditionError("lambda and mu must be nonzero")
        fiber = unit_pencil_fiber(curve, lam, mu)
        out.append(
            FiberSample(
                (lam, mu),
                fiber,
                delta_at_point(fiber, point),
                newton_delta_at_point(fiber, point),
                is_irreducible(fiber),
            )
        )
    return PencilFiberReport(curve, point, t0, tuple(out))


def meets_only(curve: HomPoly3) -> ContactProfile:
    """Profile of a curve meeting N in one point, or Disjoint if it misses N."""
    report = contact_profile_of(curve)
    if report.total == 0:
        return Disjoint()
    return report.profile()
