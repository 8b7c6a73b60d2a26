"""Delta invariants of plane curve points by two independent routes.

``delta_at_point`` follows the infinitely near points by ordinary blow-ups.
``newton_delta_at_point`` reads delta off the Newton polygon and only
descends (through a toric chart) where an edge polynomial has a repeated
root.  Local polynomials are dicts {(i, j): coefficient} with coefficients
in Q or in one quadratic field Q(sqrt D).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from .exact import (
    HomPoly3,
    PreconditionError,
    QuadraticNumber,
    UniPoly,
    factor_over_q,
    squarefree_kernel,
)

MAX_DEPTH = 400

BiPoly = dict  # {(i, j): coefficient}


class UnsupportedClusterError(PreconditionError):
    """An infinitely near cluster needs a field beyond Q(sqrt D)."""


# ---------------------------------------------------------------------------
# bivariate helpers


def _clean(F: BiPoly) -> BiPoly:
    out = {}
    for k, c in F.items():
        if isinstance(c, QuadraticNumber) and c.b == 0:
            c = c.a
        if c != 0:
            out[k] = c
    return out


def _bmul(F: BiPoly, G: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for (i1, j1), a in F.items():
        for (i2, j2), b in G.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + a * b
    return _clean(out)


def _bpow(F: BiPoly, k: int) -> BiPoly:
    out: BiPoly = {(0, 0): Fraction(1)}
    for _ in range(k):
        out = _bmul(out, F)
    return out


def local_equation(curve: HomPoly3, point) -> BiPoly:
    """Affine equation of the curve centred at a rational projective point."""
    pt = [Fraction(c) for c in point]
    if all(c == 0 for c in pt):
        raise PreconditionError("(0:0:0) is not a point")
    if curve(*pt) != 0:
        raise PreconditionError(f"point {tuple(str(c) for c in pt)} is not on the curve")
    chart = max(i for i in range(3) if pt[i] != 0)
    pt = [c / pt[chart] for c in pt]
    # affine coordinates (u, v) are the two remaining homogeneous coordinates
    free = [i for i in range(3) if i != chart]
    linear = []
    for i in range(3):
        if i == chart:
            linear.append({(0, 0): Fraction(1)})
        else:
            shift = (1, 0) if i == free[0] else (0, 1)
            linear.append(_clean({(0, 0): pt[i], shift: Fraction(1)}))
    powers = [[_bpow(lin, k) for k in range(curve.degree + 1)] for lin in linear]
    out: BiPoly = {}
    for (a, b, c), coeff in curve.terms.items():
        term = _bmul(_bmul(powers[0][a], powers[1][b]), powers[2][c])
        for key, val in term.items():
            out[key] = out.get(key, 0) + coeff * val
    return _clean(out)


def _order(F: BiPoly) -> int:
    return min(i + j for i, j in F) if F else -1


def _field(F: BiPoly) -> int | None:
    for c in F.values():
        if isinstance(c, QuadraticNumber):
            return c.D
    return None


def _shift_second(F: BiPoly, w0) -> BiPoly:
    """G(u, w) = F(u, w + w0)."""
    if w0 == 0:
        return dict(F)
    out: BiPoly = {}
    for (i, j), c in F.items():
        power = Fraction(1)
        for k in range(j, -1, -1):
            # coefficient of w^k is C(j, k) w0^(j-k)
            key = (i, k)
            out[key] = out.get(key, 0) + c * comb(j, k) * power
            power = power * w0
    return _clean(out)


def _swap(F: BiPoly) -> BiPoly:
    return {(j, i): c for (i, j), c in F.items()}


# ---------------------------------------------------------------------------
# repeated roots over Q or Q(sqrt D)


def _sqrt_in(x, D: int | None):
    """A square root of x inside Q or Q(sqrt D), or None."""
    if isinstance(x, QuadraticNumber) and x.b == 0:
        x = x.a
    if not isinstance(x, QuadraticNumber):
        s, k = squarefree_kernel(Fraction(x))
        if k in (0, 1):
            return s
        if D is not None and k == D:
            return QuadraticNumber(Fraction(0), s, D)
        return None
    n = x.norm()
    root_n = _sqrt_in(n, None)
    if root_n is None:
        return None
    for sign in (1, -1):
        c2 = (x.a + sign * root_n) / 2
        c = _sqrt_in(c2, None)
        if c not in (None, 0):
            return QuadraticNumber(c, x.b / (2 * c), x.D)
    return None


def _quadratic_roots(f: UniPoly, D: int | None):
    c, b = f[0], f[1]
    disc = b * b - 4 * c
    root = _sqrt_in(disc, D)
    if root is None:
        return None
    return [(-b + root) / 2, (-b - root) / 2]


def repeated_roots(poly: UniPoly, D: int | None) -> list[tuple[object, int, int | None]]:
    """Roots of multiplicity >= 2 as (root, weight, field).

    Over Q an irreducible repeated quadratic factor gives one root in
    Q(sqrt D') with weight 2 (its conjugate behaves identically because the
    curve is defined over Q).  Inside Q(sqrt D) every repeated root must lie
    in the field.
    """
    if poly.degree <= 1:
        return []
    out = []
    if D is None:
        for fac, mult in factor_over_q(poly):
            if mult < 2:
                continue
            if fac.degree == 1:
                out.append((-fac[0], 1, None))
            elif fac.degree == 2:
                disc = fac[1] * fac[1] - 4 * fac[0]
                s, Dn = squarefree_kernel(disc)
                root = -fac[1] / 2 + QuadraticNumber(Fraction(0), s / 2, Dn)
                out.append((root, 2, Dn))
            else:
                raise UnsupportedClusterError(
                    f"repeated irreducible factor of degree {fac.degree}: {fac.to_text('w')}"
                )
        return out
    for part, mult in poly.squarefree_decomposition():
        if mult < 2:
            continue
        part = part.monic()
        if part.degree == 1:
            out.append((-part[0], 1, D))
        elif part.degree == 2 and (roots := _quadratic_roots(part, D)) is not None:
            out.extend((r, 1, D) for r in roots)
        else:
            raise UnsupportedClusterError(
                f"repeated cluster of degree {part.degree} does not split over Q(sqrt {D})"
            )
    return out


def _to_field(F: BiPoly, D: int | None) -> BiPoly:
    if D is None or _field(F) == D:
        return F
    zero = Fraction(0)
    return {k: c if isinstance(c, QuadraticNumber) else QuadraticNumber(Fraction(c), zero, D)
            for k, c in F.items()}


# ---------------------------------------------------------------------------
# oracle 1: blow-ups


def _chart(F: BiPoly, m: int) -> BiPoly:
    """Strict transform in the chart v = u*w: F(u, u w) / u^m."""
    return {(i + j - m, j): c for (i, j), c in F.items()}


def _blowup_delta(F: BiPoly, depth: int) -> int:
    if depth > MAX_DEPTH:
        raise PreconditionError("blow-up recursion too deep; is the curve reduced?")
    m = _order(F)
    if m <= 1:
        return 0
    total = m * (m - 1) // 2
    cone = UniPoly([F.get((m - j, j), 0) for j in range(m + 1)])
    D = _field(F)
    strict = _chart(F, m)
    for root, weight, field in repeated_roots(cone, D):
        G = _shift_second(_to_field(strict, field), root)
        total += weight * _blowup_delta(G, depth + 1)
    if m - cone.degree >= 2:
        # the direction u = 0 is only visible in the other chart
        total += _blowup_delta(_chart(_swap(F), m), depth + 1)
    return total


def delta_of_local(F: BiPoly) -> int:
    F = _clean(F)
    if (0, 0) in F:
        raise PreconditionError("the origin is not on the curve")
    if not F:
        raise PreconditionError("zero polynomial")
    return _blowup_delta(F, 0)


def delta_at_point(curve: HomPoly3, point) -> int:
    """Sum of m(m-1)/2 over the infinitely near points, by recursive blow-up."""
    return delta_of_local(local_equation(curve, point))


# ---------------------------------------------------------------------------
# oracle 2: Newton polygon


def _lower_hull(F: BiPoly, X: int, Y: int) -> list[tuple[int, int]]:
    pts = sorted(F)
    hull = [(0, Y)]
    while hull[-1] != (X, 0):
        i0, j0 = hull[-1]
        best, best_slope = None, None
        for i, j in pts:
            if i <= i0:
                continue
            slope = Fraction(j - j0, i - i0)
            if best is None or slope < best_slope or (slope == best_slope and i > best[0]):
                best, best_slope = (i, j), slope
        hull.append(best)
    return hull


def _interior_count(hull: list[tuple[int, int]]) -> int:
    """Lattice points with i, j >= 1 strictly below the polygon."""
    count = 0
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        for i in range(max(i1, 1), i2):
            height = Fraction(j1) + Fraction(j2 - j1, i2 - i1) * (i - i1)
            count += max(0, -(-height.numerator // height.denominator) - 1)
    return count


def _toric_exponents(alpha: int, beta: int) -> tuple[int, int]:
    """(s, t) >= 0 with beta*t - alpha*s = 1."""
    for t in range(1, alpha + 1):
        if (beta * t - 1) % alpha == 0:
            return (beta * t - 1) // alpha, t
    raise AssertionError("edge direction is not primitive")


def _convenient_delta(G: BiPoly, depth: int) -> int:
    if depth > MAX_DEPTH:
        raise PreconditionError("Newton recursion too deep; is the curve reduced?")
    X = min(i for i, j in G if j == 0)
    Y = min(j for i, j in G if i == 0)
    hull = _lower_hull(G, X, Y)
    total = _interior_count(hull) - 1
    D = _field(G)
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        ell = gcd(i2 - i1, j1 - j2)
        total += ell
        alpha, beta = (i2 - i1) // ell, (j1 - j2) // ell
        edge = UniPoly([G.get((i1 + k * alpha, j1 - k * beta), 0) for k in range(ell + 1)][::-1])
        roots = repeated_roots(edge, D)
        if not roots:
            continue
        # u = A^beta B^s, v = A^alpha B^t; the edge becomes A = 0
        s, t = _toric_exponents(alpha, beta)
        low = beta * i1 + alpha * j1
        strict = {(beta * i + alpha * j - low, s * i + t * j): c for (i, j), c in G.items()}
        for root, weight, field in roots:
            H = _shift_second(_to_field(strict, field), root)
            total += weight * _newton_delta(H, depth + 1)
    return total


def _newton_delta(F: BiPoly, depth: int) -> int:
    F = _clean(F)
    if (0, 0) in F:
        return 0
    a = min(i for i, _ in F)
    b = min(j for _, j in F)
    if a >= 2 or b >= 2:
        raise PreconditionError("curve is not reduced at the point")
    G = {(i - a, j - b): c for (i, j), c in F.items()}
    if (0, 0) in G:
        return a * b
    X = min(i for i, j in G if j == 0)
    Y = min(j for i, j in G if i == 0)
    # delta(u^a v^b G) adds the pairwise intersection numbers
    return _convenient_delta(G, depth) + a * Y + b * X + a * b


def newton_delta_of_local(F: BiPoly) -> int:
    F = _clean(F)
    if (0, 0) in F:
        raise PreconditionError("the origin is not on the curve")
    if not F:
        raise PreconditionError("zero polynomial")
    return _newton_delta(F, 0)


def newton_delta_at_point(curve: HomPoly3, point) -> int:
    return newton_delta_of_local(local_equation(curve, point))


def multiplicity_at_point(curve: HomPoly3, point) -> int:
    return _order(local_equation(curve, point))
