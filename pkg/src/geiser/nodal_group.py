"""The group law on the smooth locus of N, read through t -> (t : t^2 : 1 + t^3).

A point of N minus the node is a nonzero parameter t.  Line sections have
parameter product equal to a constant gamma, which is derived here by
factoring a determinant rather than assumed.  Divisor classes on the smooth
locus are then pairs (degree, unit) with componentwise arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import HomPoly3, PreconditionError, UniPoly, determinant, rational_to_json
from .plane import N_CUBIC


def _row(t: Fraction) -> list[Fraction]:
    return list(N_CUBIC.point_at(t))


@dataclass(frozen=True)
class CollinearityCertificate:
    params: tuple[Fraction, Fraction, Fraction]
    det: Fraction

    @property
    def collinear(self) -> bool:
        return self.det == 0

    def __bool__(self):
        return self.collinear

    def to_json(self) -> dict:
        return {
            "params": [rational_to_json(t) for t in self.params],
            "determinant": rational_to_json(self.det),
            "collinear": self.collinear,
        }


def collinear(t1, t2, t3) -> CollinearityCertificate:
    ts = tuple(Fraction(t) for t in (t1, t2, t3))
    if any(t == 0 for t in ts):
        raise PreconditionError("parameter 0 is the node, not a smooth point")
    if len(set(ts)) < 3:
        raise PreconditionError("collinearity test needs three distinct points")
    return CollinearityCertificate(ts, determinant([_row(t) for t in ts]))


@lru_cache(maxsize=None)
def collinearity_constant() -> Fraction:
    """gamma with t1 t2 t3 = gamma on every line section of N.

    The determinant of the three parametrized points factors as a
    Vandermonde part times one more factor; that factor must be
    a + b t1 t2 t3, and gamma = -a/b.
    """
    import sympy

    t1, t2, t3 = sympy.symbols("t1 t2 t3")
    rows = [[t, t**2, 1 + t**3] for t in (t1, t2, t3)]
    det = sympy.Matrix(rows).det()
    _, factors = sympy.factor_list(sympy.expand(det), t1, t2, t3)
    vandermonde = {t1 - t2, t2 - t1, t1 - t3, t3 - t1, t2 - t3, t3 - t2}
    rest = [f for f, _ in factors if sympy.expand(f) not in vandermonde]
    if len(rest) != 1:
        raise AssertionError(f"unexpected determinant factorization: {factors}")
    poly = sympy.Poly(rest[0], t1, t2, t3)
    terms = dict(poly.terms())
    if set(terms) != {(0, 0, 0), (1, 1, 1)}:
        raise AssertionError(f"collinearity factor is not a + b*t1*t2*t3: {rest[0]}")
    a, b = terms[(0, 0, 0)], terms[(1, 1, 1)]
    gamma = -sympy.Rational(a) / sympy.Rational(b)
    return Fraction(int(gamma.p), int(gamma.q))


def line_through(t1, t2) -> HomPoly3:
    """The line through P(t1) and P(t2) (the tangent line when t1 = t2)."""
    t1, t2 = Fraction(t1), Fraction(t2)
    p = _row(t1)
    if t1 == t2:
        q = [Fraction(1), 2 * t1, 3 * t1 * t1]  # derivative of the parametrization
    else:
        q = _row(t2)
    a = p[1] * q[2] - p[2] * q[1]
    b = p[2] * q[0] - p[0] * q[2]
    c = p[0] * q[1] - p[1] * q[0]
    return HomPoly3(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def third_point(t1, t2) -> Fraction:
    """Third intersection of the line through P(t1), P(t2), by polynomial division."""
    t1, t2 = Fraction(t1), Fraction(t2)
    f = N_CUBIC.pullback(line_through(t1, t2))
    if f.degree != 3 or f[0] == 0:
        raise PreconditionError("the joining line passes through the node")
    q, r = f.divmod(UniPoly([-t1, 1]) * UniPoly([-t2, 1]))
    if not r.is_zero() or q.degree != 1:
        raise AssertionError("line section is not divisible by the two given points")
    return -q[0] / q[1]


@dataclass(frozen=True)
class DivClass:
    """A class on the smooth locus: degree and unit (the product of parameters)."""

    degree: int
    unit: Fraction

    def __post_init__(self):
        object.__setattr__(self, "unit", Fraction(self.unit))
        if self.unit == 0:
            raise PreconditionError("unit part must be nonzero")

    @classmethod
    def point(cls, t) -> "DivClass":
        return cls(1, Fraction(t))

    @classmethod
    def hyperplane(cls) -> "DivClass":
        return cls(3, collinearity_constant())

    def __add__(self, other: "DivClass") -> "DivClass":
        return DivClass(self.degree + other.degree, self.unit * other.unit)

    def __neg__(self) -> "DivClass":
        return DivClass(-self.degree, 1 / self.unit)

    def __sub__(self, other: "DivClass") -> "DivClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "DivClass":
        return DivClass(k * self.degree, self.unit**k)

    __mul__ = __rmul__

    def to_json(self) -> dict:
        return {"degree": self.degree, "unit": rational_to_json(self.unit)}


def _binomial_condition(d: int, unit: Fraction) -> UniPoly:
    """t^d - unit: d[t] equals the class (d, unit)."""
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[0] = -unit
    coeffs[d] = Fraction(1)
    return UniPoly(coeffs)


@dataclass(frozen=True)
class DivisionPoints:
    d: int
    target: DivClass
    condition: UniPoly
    count: int
    flex_multiples: int

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "target": self.target.to_json(),
            "condition": self.condition.to_text("t"),
            "count_over_closure": self.count,
            "flex_multiples": self.flex_multiples,
        }


def division_points(d: int, target: DivClass | None = None) -> DivisionPoints:
    """Points b with d[b] equal to target (default (d/3) H)."""
    if d < 1:
        raise PreconditionError("d must be positive")
    if target is None:
        if d % 3:
            raise PreconditionError(f"{d}[b] is comparable with a multiple of H only if 3 | d")
        target = (d // 3) * DivClass.hyperplane()
    if target.degree != d:
        raise PreconditionError(f"target class has degree {target.degree}, not {d}")
    cond = _binomial_condition(d, target.unit)
    flex = _binomial_condition(3, DivClass.hyperplane().unit)
    return DivisionPoints(d, target, cond, cond.squarefree_part().degree, cond.gcd(flex).degree)


@dataclass(frozen=True)
class F1Query:
    t_x: Fraction
    r: int

    def __post_init__(self):
        object.__setattr__(self, "t_x", Fraction(self.t_x))
        if self.t_x == 0:
            raise PreconditionError("t_x = 0 is the node")
        if self.r < 1:
            raise PreconditionError("r must be positive")

    @property
    def is_flex(self) -> bool:
        return self.t_x**3 == collinearity_constant()


@dataclass(frozen=True)
class F1OrbitResult:
    query: F1Query
    restriction: DivClass
    condition: UniPoly
    roots_over_closure: int
    reducible_witness: dict | None

    @property
    def count(self) -> int:
        return self.roots_over_closure - (1 if self.reducible_witness else 0)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "t_x": rational_to_json(self.query.t_x),
            "r": self.query.r,
            "flex": self.query.is_flex,
            "restriction": self.restriction.to_json(),
            "condition": self.condition.to_text("c"),
            "roots_over_closure": self.roots_over_closure,
            "reducible_witness": self.reducible_witness,
            "count": self.count,
        }


def f1_orbit_count(query: F1Query) -> F1OrbitResult:
    """Points c with (E + rF)|_N = (2r+1)[c] on the blow-up at P(t_x).

    E|_N is the point t_x and F = H - E.  The root c = t_x gives the
    reducible member E + r F_x (F_x the tangent line at x) exactly when that
    tangent meets N only at x, i.e. when x is a flex.
    """
    H = DivClass.hyperplane()
    E = DivClass.point(query.t_x)
    F = H - E
    L = E + query.r * F
    cond = _binomial_condition(L.degree, L.unit)
    roots = cond.squarefree_part().degree
    witness = None
    if cond(query.t_x) == 0 and third_point(query.t_x, query.t_x) == query.t_x:
        witness = {
            "c": rational_to_json(query.t_x),
            "members": ["E", f"{query.r}*F_x"],
            "tangent_line": str(line_through(query.t_x, query.t_x)),
        }
    return F1OrbitResult(query, L, cond, roots, witness)
