"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`. Everything else here (univariate
polynomials, truncated power series, ternary forms, quadratic number fields
and a dense rational linear solver) is built on top of it.  Nothing in the
package touches floating point.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Sequence

Rational = Fraction

DEFAULT_TRUNCATION = 64


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class InhomogeneousError(ParseError):
    def __init__(self, degrees: Sequence[int]):
        self.degrees = tuple(sorted(set(degrees)))
        ValueError.__init__(self, f"inhomogeneous polynomial: monomial degrees {list(self.degrees)}")
        self.position = 0


class TruncationError(ArithmeticError):
    """An order of vanishing reached the truncation order of a series."""


def truncation_order() -> int:
    value = os.environ.get("GEISER_TRUNC")
    return int(value) if value else DEFAULT_TRUNCATION


def rational_to_json(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(text: str) -> Fraction:
    return Fraction(text)


def _is_zero(c) -> bool:
    return c == 0


# ---------------------------------------------------------------------------
# Quadratic number fields Q(sqrt(D))


@dataclass(frozen=True)
class QuadraticNumber:
    """a + b*sqrt(D) with rational a, b and squarefree D != 1."""

    a: Fraction
    b: Fraction
    D: int

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise PreconditionError("mixing different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(Fraction(other), Fraction(0), self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a * o.a + self.D * self.b * o.b,
                               self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in quadratic field")
        return QuadraticNumber(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        result = QuadraticNumber(Fraction(1), Fraction(0), self.D)
        base = self
        if k < 0:
            base, k = base.inverse(), -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.D}))"


def sqrt_in_field(D: int) -> QuadraticNumber:
    return QuadraticNumber(Fraction(0), Fraction(1), D)


def squarefree_kernel(r: Fraction) -> tuple[Fraction, int]:
    """Write r = s^2 * D with D a squarefree integer; return (s, D)."""
    r = Fraction(r)
    if r == 0:
        return Fraction(0), 0
    sign = -1 if r < 0 else 1
    n = abs(r.numerator) * r.denominator
    s = Fraction(1, r.denominator)
    D = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            D *= p
        p += 1
    D *= n
    return s, sign * D


# ---------------------------------------------------------------------------
# Univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients indexed by exponent.

    Coefficients are normally Fractions but any exact field element type with
    the usual operators works (the delta oracles run over Q(sqrt D)).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        cs = [Fraction(c) if isinstance(c, int) else c for c in cs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def lead(self):
        return self.coeffs[-1]

    def order(self) -> int:
        """Exponent of the lowest nonzero term; the zero polynomial has none."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        raise PreconditionError("order of the zero polynomial")

    def _lift(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other):
        other = self._lift(other)
        return UniPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=Fraction(0)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 0)
        inv_lead = 1 / other.lead()
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            c = c * inv_lead
            quot[k - other.degree] = c
            for j, b in enumerate(other.coeffs):
                rem[k - other.degree + j] = rem[k - other.degree + j] - c * b
        return UniPoly(quot), UniPoly(rem[: other.degree] if other.degree > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead()
        return UniPoly(c * inv for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(c * k for k, c in enumerate(self.coeffs) if k > 0)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly([c])
        return acc

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return self.monic()
        return self.exact_div(self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: [(P_i, i)] with self = lead * prod P_i^i, P_i squarefree."""
        f = self.monic()
        out: list[tuple[UniPoly, int]] = []
        if f.degree <= 0:
            return out
        a = f.gcd(f.derivative())
        b = f.exact_div(a)
        c = f.derivative().exact_div(a)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if a.degree > 0:
                out.append((a, i))
            i += 1
        return out

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def to_text(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_format_term(c, mono))
        return _join_terms(parts)


def _format_term(c: Fraction, mono: str) -> tuple[bool, str]:
    neg = c < 0
    a = -c if neg else c
    if mono and a == 1:
        body = mono
    elif mono:
        body = f"{a}*{mono}"
    else:
        body = str(a)
    return neg, body


def _join_terms(parts: list[tuple[bool, str]]) -> str:
    out = ""
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> UniPoly:
    result = UniPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = UniPoly([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


def factor_over_q(poly: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors over Q with multiplicities (constant dropped)."""
    import sympy

    if poly.is_zero():
        raise PreconditionError("cannot factor the zero polynomial")
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(poly.coeffs))
    _, factors = sympy.factor_list(expr, t, domain="QQ")
    out = []
    for fac, mult in factors:
        coeffs = sympy.Poly(fac, t, domain="QQ").all_coeffs()[::-1]
        up = UniPoly(Fraction(int(c.p), int(c.q)) for c in coeffs).monic()
        out.append((up, int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))
    return out


def rational_roots(poly: UniPoly) -> list[tuple[Fraction, int]]:
    return [(-f[0], m) for f, m in factor_over_q(poly) if f.degree == 1]


# ---------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class AtLeast:
    """Sentinel order: the series vanishes up to its truncation order."""

    bound: int

    def __str__(self):
        return f"at least {self.bound}"


class TruncSeries:
    """Power series known modulo t^N.  Results keep the smaller N of the operands."""

    __slots__ = ("coeffs", "N")

    def __init__(self, coeffs: Iterable, N: int | None = None):
        N = truncation_order() if N is None else N
        if N < 1:
            raise PreconditionError("truncation order must be >= 1")
        cs = [Fraction(c) if isinstance(c, int) else c for c in list(coeffs)[:N]]
        cs += [Fraction(0)] * (N - len(cs))
        self.coeffs = tuple(cs)
        self.N = N

    @classmethod
    def from_poly(cls, p: UniPoly, N: int | None = None) -> "TruncSeries":
        return cls(p.coeffs, N)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries([other], self.N)

    def __add__(self, other):
        o = self._lift(other)
        N = min(self.N, o.N)
        return TruncSeries((a + b for a, b in zip(self.coeffs[:N], o.coeffs[:N])), N)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries((-c for c in self.coeffs), self.N)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        N = min(self.N, o.N)
        out = [Fraction(0)] * N
        for i in range(N):
            a = self.coeffs[i]
            if _is_zero(a):
                continue
            for j in range(N - i):
                b = o.coeffs[j]
                if not _is_zero(b):
                    out[i + j] += a * b
        return TruncSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncSeries([1], self.N)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "TruncSeries":
        if _is_zero(self.coeffs[0]):
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for k in range(1, self.N):
            acc = sum((self.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out.append(-acc * inv0)
        return TruncSeries(out, self.N)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.N == other.N and self.coeffs == other.coeffs

    def __repr__(self):
        shown = [str(c) for c in self.coeffs[:8]]
        return f"TruncSeries({shown}..., N={self.N})"


def series_order(s: TruncSeries) -> int | AtLeast:
    for i, c in enumerate(s.coeffs):
        if not _is_zero(c):
            return i
    return AtLeast(s.N)


def finite_order(s: TruncSeries) -> int:
    """series_order, raising when the answer is not strictly below truncation."""
    k = series_order(s)
    if isinstance(k, AtLeast):
        raise TruncationError(f"order is at least the truncation order {s.N}")
    return k


# ---------------------------------------------------------------------------
# Ternary forms

Exponent = tuple[int, int, int]
VARS = ("x", "y", "z")


class HomPoly3:
    """Homogeneous polynomial in x, y, z with rational coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[Exponent, Fraction] | None = None):
        if degree < 0:
            raise PreconditionError("degree must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if sum(e) != degree or min(e) < 0:
                raise PreconditionError(f"monomial {e} is not of degree {degree}")
            c = Fraction(c)
            if c != 0:
                clean[tuple(e)] = c
        self.degree = degree
        self.terms = clean

    @classmethod
    def variable(cls, name: str) -> "HomPoly3":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls(1, {tuple(e): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "HomPoly3":
        return cls(0, {(0, 0, 0): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomPoly3") -> "HomPoly3":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise PreconditionError("adding forms of different degrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomPoly3(self.degree, out)

    def __neg__(self):
        return HomPoly3(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomPoly3):
            return HomPoly3(self.degree, {e: c * other for e, c in self.terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HomPoly3(self.degree + other.degree, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = HomPoly3.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, HomPoly3) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def substitute(self, xs: UniPoly, ys: UniPoly, zs: UniPoly) -> UniPoly:
        powers = [[UniPoly([1])] for _ in range(3)]
        for k, base in enumerate((xs, ys, zs)):
            for _ in range(self.degree):
                powers[k].append(powers[k][-1] * base)
        acc = UniPoly()
        for (i, j, k), c in self.terms.items():
            acc = acc + powers[0][i] * powers[1][j] * powers[2][k] * c
        return acc

    def substitute_series(self, xs: TruncSeries, ys: TruncSeries, zs: TruncSeries) -> TruncSeries:
        N = min(xs.N, ys.N, zs.N)
        acc = TruncSeries([], N)
        for (i, j, k), c in self.terms.items():
            acc = acc + (xs**i) * (ys**j) * (zs**k) * c
        return acc

    def __call__(self, x, y, z):
        acc = Fraction(0)
        for (i, j, k), c in self.terms.items():
            acc = acc + c * (x**i) * (y**j) * (z**k)
        return acc

    def partial(self, var: str) -> "HomPoly3":
        idx = VARS.index(var)
        if self.degree == 0:
            return HomPoly3(0)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[idx]:
                ne = list(e)
                ne[idx] -= 1
                out[tuple(ne)] = out.get(tuple(ne), Fraction(0)) + c * e[idx]
        return HomPoly3(self.degree - 1, out)

    def coefficient_vector(self, monomials: Sequence[Exponent]) -> list[Fraction]:
        return [self.terms.get(m, Fraction(0)) for m in monomials]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k
            )
            parts.append(_format_term(self.terms[e], mono))
        return _join_terms(parts)

    def __repr__(self):
        return f"HomPoly3({self})"


def monomials_of_degree(d: int) -> list[Exponent]:
    """All exponent triples of total degree d, in descending lexicographic order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def from_coefficients(d: int, coeffs: Sequence[Fraction]) -> HomPoly3:
    return HomPoly3(d, dict(zip(monomials_of_degree(d), coeffs)))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xyz])|(?P<op>[-+*^/]))")


def parse_hompoly(text: str) -> HomPoly3:
    """Parse a sum of monomials like ``21*x^2 - 22*x*y + z^2``.

    Multiplication must be written with ``*``; coefficients may be integers
    or fractions ``p/q``.  Raises :class:`ParseError` (with position) on bad
    syntax and :class:`InhomogeneousError` if the monomial degrees differ.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take(kind, value=None):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2])
        i += 1
        return tok

    def factor():
        tok = peek()
        if tok[0] == "num":
            take("num")
            value = Fraction(int(tok[1]))
            if peek()[:2] == ("op", "/"):
                take("op", "/")
                den = take("num")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value /= int(den[1])
            return value, (0, 0, 0)
        if tok[0] == "var":
            take("var")
            k = 1
            if peek()[:2] == ("op", "^"):
                take("op", "^")
                k = int(take("num")[1])
            e = [0, 0, 0]
            e[VARS.index(tok[1])] = k
            return Fraction(1), tuple(e)
        raise ParseError(f"expected a number or variable, got {tok[1] or 'end of input'!r}", tok[2])

    def term():
        c, e = factor()
        while peek()[:2] == ("op", "*"):
            take("op", "*")
            c2, e2 = factor()
            c *= c2
            e = (e[0] + e2[0], e[1] + e2[1], e[2] + e2[2])
        return c, e

    monos: list[tuple[Fraction, Exponent]] = []
    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if take("op")[1] == "-" else 1
    c, e = term()
    monos.append((sign * c, e))
    while peek()[0] != "end":
        tok = peek()
        if tok[:2] not in (("op", "+"), ("op", "-")):
            raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2])
        take("op")
        c, e = term()
        monos.append(((-1 if tok[1] == "-" else 1) * c, e))

    degrees = {sum(e) for _, e in monos}
    if len(degrees) > 1:
        raise InhomogeneousError(list(degrees))
    d = degrees.pop()
    terms: dict[Exponent, Fraction] = {}
    for c, e in monos:
        terms[e] = terms.get(e, Fraction(0)) + c
    return HomPoly3(d, terms)


# ---------------------------------------------------------------------------
# Linear systems


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set of A v = b.

    ``particular`` is None when the system is inconsistent; ``certificate``
    then holds a row vector y with y A = 0 and y b != 0.
    """

    particular: tuple[Fraction, ...] | None
    kernel: tuple[tuple[Fraction, ...], ...] = ()
    certificate: tuple[Fraction, ...] | None = None

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.kernel) if self.consistent else -1


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q on the first ``ncols`` columns."""
    m = [[Fraction(c) for c in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> SolutionSpace:
    nrows = len(rows)
    if nrows != len(rhs):
        raise PreconditionError("matrix and right-hand side sizes differ")
    ncols = len(rows[0]) if nrows else 0
    if any(len(r) != ncols for r in rows):
        raise PreconditionError("matrix is not rectangular")
    aug = [
        list(row) + [rhs[i]] + [Fraction(int(i == j)) for j in range(nrows)]
        for i, row in enumerate(rows)
    ]
    m, pivots = rref(aug, ncols)
    for row in m[len(pivots):]:
        if row[ncols] != 0:
            return SolutionSpace(None, (), tuple(row[ncols + 1:]))
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = m[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        kernel.append(v)
    if kernel:
        kernel, _ = rref(kernel)
        kernel = [row for row in kernel if any(row)]
    return SolutionSpace(tuple(particular), tuple(tuple(v) for v in kernel))


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    if not rows:
        return tuple(tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols))
    return solve_linear(rows, [Fraction(0)] * len(rows)).kernel


def matvec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if m[k][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for k in range(c + 1, n):
            if m[k][c] != 0:
                f = m[k][c] * inv
                m[k] = [a - f * b for a, b in zip(m[k], m[c])]
    return det


def factor_hompoly(poly: HomPoly3) -> tuple[Fraction, list[tuple[HomPoly3, int]]]:
    """Irreducible factors over Q of a ternary form, with multiplicities."""
    import sympy

    if poly.is_zero():
        raise PreconditionError("cannot factor the zero polynomial")
    x, y, z = sympy.symbols("x y z")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * x**i * y**j * z**k
        for (i, j, k), c in poly.terms.items()
    )
    const, factors = sympy.factor_list(expr, x, y, z, domain="QQ")
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, x, y, z, domain="QQ")
        terms = {m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()}
        out.append((HomPoly3(p.total_degree(), terms), int(mult)))
    return Fraction(int(sympy.Rational(const).p), int(sympy.Rational(const).q)), out
