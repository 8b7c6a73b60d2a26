"""Contact profiles at the boundary node and the blow-up calculus around them.

A curve germ at the node is recorded by its intersection orders with the two
branches.  Blowing up the node (or later, the point where the newest
exceptional curve meets the right-hand branch) transforms these orders by a
subtractive Euclid step; tracking the germ through a chain of blow-ups,
the covering-involution relabelling and the inverse contractions is what
realizes the Geiser involutions combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal

from .exact import PreconditionError, rational_to_json


@dataclass(frozen=True)
class AtNode:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise PreconditionError(f"contact orders must be positive, got ({self.p}, {self.q})")

    @property
    def total(self) -> int:
        return self.p + self.q

    @property
    def mult(self) -> int:
        return min(self.p, self.q)

    def swapped(self) -> "AtNode":
        return AtNode(self.q, self.p)

    def to_json(self) -> dict:
        return {"kind": "node", "p": self.p, "q": self.q}


@dataclass(frozen=True)
class AtSmoothPoint:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError("contact order must be positive")

    @property
    def total(self) -> int:
        return self.k

    @property
    def mult(self) -> int:
        return 0

    def to_json(self) -> dict:
        return {"kind": "smooth", "k": self.k}


@dataclass(frozen=True)
class Disjoint:
    total = 0
    mult = 0

    def to_json(self) -> dict:
        return {"kind": "disjoint"}


ContactProfile = AtNode | AtSmoothPoint | Disjoint


def blow_up_step(profile: AtNode) -> ContactProfile:
    """Orders of the germ against the two curves it sits between after one blow-up.

    With p > q the germ lies on the old left curve and the new exceptional
    curve; with q > p on the new exceptional curve and the right branch.  For
    p = q it meets the exceptional curve alone, which we report as a
    smooth-point contact of order p.
    """
    p, q = profile.p, profile.q
    if p > q:
        return AtNode(p - q, q)
    if q > p:
        return AtNode(p, q - p)
    return AtSmoothPoint(p)


# ---------------------------------------------------------------------------
# Dual graph chains


@dataclass(frozen=True)
class Attachment:
    """Where the tracked germ meets the chain.

    ``edge`` at position i: the germ passes through the intersection of
    vertices i and i+1 with ``orders`` against each.  ``vertex`` at i: it
    meets vertex i alone.  Vertex 0 is the left branch, vertex k+1 the right
    branch of the boundary; a germ attached to either of them alone meets the
    boundary at a smooth point.
    """

    kind: Literal["edge", "vertex", "disjoint"]
    position: int = 0
    orders: tuple[int, ...] = ()


@dataclass(frozen=True)
class DualGraphChain:
    """B- -- E1 -- ... -- Ek -- B+ with the tracked germ attached somewhere."""

    self_intersections: tuple[int, ...]
    germ: Attachment

    @property
    def length(self) -> int:
        return len(self.self_intersections)

    def vertex_names(self) -> list[str]:
        return ["B-"] + [f"E{i}" for i in range(1, self.length + 1)] + ["B+"]

    def germ_profile(self) -> ContactProfile:
        """Profile of the germ once every exceptional vertex is gone."""
        if self.length:
            raise PreconditionError("chain still has exceptional vertices")
        g = self.germ
        if g.kind == "edge":
            return AtNode(*g.orders)
        if g.kind == "vertex":
            return AtSmoothPoint(g.orders[0])
        return Disjoint()

    def to_json(self) -> dict:
        names = self.vertex_names()
        vertices = [{"name": "B-"}]
        vertices += [{"name": n, "self_intersection": s} for n, s in zip(names[1:-1], self.self_intersections)]
        vertices.append({"name": "B+"})
        g = self.germ
        if g.kind == "edge":
            germ = {"kind": "edge", "between": [names[g.position], names[g.position + 1]], "orders": list(g.orders)}
        elif g.kind == "vertex":
            germ = {"kind": "vertex", "on": names[g.position], "orders": list(g.orders)}
        else:
            germ = {"kind": "disjoint"}
        return {"vertices": vertices, "germ": germ}


def initial_chain(profile: ContactProfile) -> DualGraphChain:
    if isinstance(profile, AtNode):
        return DualGraphChain((), Attachment("edge", 0, (profile.p, profile.q)))
    if isinstance(profile, AtSmoothPoint):
        return DualGraphChain((), Attachment("vertex", 0, (profile.k,)))
    return DualGraphChain((), Attachment("disjoint"))


def blow_up_right(chain: DualGraphChain) -> DualGraphChain:
    """Blow up the point where the last exceptional curve (or B-) meets B+."""
    k = chain.length
    selfs = list(chain.self_intersections)
    if selfs:
        selfs[-1] -= 1
    selfs.append(-1)
    g = chain.germ
    if g.kind == "edge" and g.position == k:
        step = blow_up_step(AtNode(*g.orders))
        a, b = g.orders
        if a > b:
            germ = Attachment("edge", k, (step.p, step.q))
        elif b > a:
            germ = Attachment("edge", k + 1, (step.p, step.q))
        else:
            germ = Attachment("vertex", k + 1, (step.k,))
    elif g.kind == "vertex" and g.position == k + 1:
        germ = Attachment("vertex", k + 2, g.orders)
    else:
        germ = g
    return DualGraphChain(tuple(selfs), germ)


def chain_after_r_blowups(p: int, q: int, r: int) -> DualGraphChain:
    if r < 1:
        raise PreconditionError("r must be >= 1")
    chain = initial_chain(AtNode(p, q))
    for _ in range(r):
        chain = blow_up_right(chain)
    return chain


def predicted_attachment(p: int, q: int, r: int) -> Attachment:
    """Closed-form position of the germ after r blow-ups along B+."""
    if q < p:
        return Attachment("edge", 0, (p - q, q))
    if q == p:
        return Attachment("vertex", 1, (p,))
    if q >= r * p:
        if q == r * p:
            return Attachment("vertex", r, (p,))
        return Attachment("edge", r, (p, q - r * p))
    i = q // p
    if q == i * p:
        return Attachment("vertex", i, (p,))
    return Attachment("edge", i, ((i + 1) * p - q, q - i * p))


def tau_swap(chain: DualGraphChain) -> DualGraphChain:
    """Relabel by the covering involution: boundary <-> E_r, E_i <-> E_{r-i}.

    Viewing the configuration as the cycle N - E1 - ... - Er - N, the
    involution acts on cycle positions by i -> (r - i) mod (r + 1).
    """
    r = chain.length
    if r < 2:
        raise PreconditionError("the involution needs at least two exceptional curves")
    size = r + 1

    def tau(i: int) -> int:
        return (r - (i % size)) % size

    g = chain.germ
    if g.kind == "disjoint":
        return chain
    if g.kind == "vertex":
        return DualGraphChain(chain.self_intersections, Attachment("vertex", tau(g.position), g.orders))
    u, v = tau(g.position), tau(g.position + 1)
    orders = {u: g.orders[0], v: g.orders[1]}
    if {u, v} == {0, r}:
        germ = Attachment("edge", r, (orders[r], orders[0]))
    else:
        lo = min(u, v)
        germ = Attachment("edge", lo, (orders[lo], orders[lo + 1]))
    return DualGraphChain(chain.self_intersections, germ)


def contract_last(chain: DualGraphChain) -> DualGraphChain:
    k = chain.length
    if k == 0:
        raise PreconditionError("no exceptional vertex to contract")
    if chain.self_intersections[-1] != -1:
        raise PreconditionError(
            f"E{k} has self-intersection {chain.self_intersections[-1]}, not -1"
        )
    selfs = list(chain.self_intersections[:-1])
    if selfs:
        selfs[-1] += 1
    g = chain.germ
    if g.kind == "edge" and g.position == k - 1:
        a, b = g.orders
        germ = Attachment("edge", k - 1, (a + b, b))
    elif g.kind == "edge" and g.position == k:
        a, b = g.orders
        germ = Attachment("edge", k - 1, (a, a + b))
    elif g.kind == "vertex" and g.position == k:
        a = g.orders[0]
        germ = Attachment("edge", k - 1, (a, a))
    elif g.kind == "vertex" and g.position == k + 1:
        germ = Attachment("vertex", k, g.orders)
    else:
        germ = g
    return DualGraphChain(tuple(selfs), germ)


# ---------------------------------------------------------------------------
# Multiplicity sequences and delta


@dataclass(frozen=True)
class CuspType:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise PreconditionError("cusp exponents must be positive")

    @property
    def multiplicity(self) -> int:
        return min(self.p, self.q)

    @property
    def normalized(self) -> bool:
        a, b = sorted((self.p, self.q))
        return a == 1 or b % a != 0


@dataclass(frozen=True)
class MultiplicitySequence:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or min(self.entries) < 1:
            raise PreconditionError("multiplicity sequence needs positive entries")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def euclid_sequence(cusp: CuspType | tuple[int, int]) -> MultiplicitySequence:
    """Multiplicities of the successive centres when resolving x^q = y^p.

    Smooth germs (min = 1) give [1].  Otherwise subtractive Euclid runs until
    the two orders agree; that last blow-up separates the branches.
    """
    p, q = (cusp.p, cusp.q) if isinstance(cusp, CuspType) else cusp
    if p < 1 or q < 1:
        raise PreconditionError("cusp exponents must be positive")
    if min(p, q) == 1:
        return MultiplicitySequence((1,))
    out = []
    while p != q:
        out.append(min(p, q))
        if p > q:
            p -= q
        else:
            q -= p
    out.append(p)
    return MultiplicitySequence(tuple(out))


def delta_invariant(seq: MultiplicitySequence) -> int:
    return sum(m * (m - 1) // 2 for m in seq)


# ---------------------------------------------------------------------------
# Discrepancies


@dataclass(frozen=True)
class LedgerRow:
    index: int
    multiplicity: int
    coefficient: Fraction
    through: tuple[int, ...]  # earlier exceptional curves containing the centre


@dataclass(frozen=True)
class DiscrepancyLedger:
    c: Fraction
    rows: tuple[LedgerRow, ...]
    germ: str

    @property
    def coefficients(self) -> list[Fraction]:
        return [row.coefficient for row in self.rows]

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "c": rational_to_json(self.c),
            "rows": [
                {
                    "exceptional": f"E{row.index}",
                    "multiplicity": row.multiplicity,
                    "coefficient": rational_to_json(row.coefficient),
                    "through": [f"E{j}" for j in row.through],
                }
                for row in self.rows
            ],
        }


def _check_weight(c) -> Fraction:
    c = Fraction(c)
    if not 0 < c <= 1:
        raise PreconditionError(f"weight c must lie in (0, 1], got {c}")
    return c


def ledger(p: int, q: int, c, extra: int = 0) -> DiscrepancyLedger:
    """Exceptional coefficients of E - cD along the resolution of x^q = y^p.

    Each centre lies on at most two curves; only exceptional ones contribute.
    ``extra`` further blow-ups follow the germ past the resolution, always at
    its intersection with the newest exceptional curve.
    """
    c = _check_weight(c)
    if p < 1 or q < 1:
        raise PreconditionError("orders must be positive")
    coeff: dict[int, Fraction] = {}
    rows = []
    left, right = None, None  # exceptional indices of the curves through the centre
    a, b = p, q
    k = 0
    done = False
    while not done:
        k += 1
        m = min(a, b)
        through = tuple(j for j in (left, right) if j is not None)
        e = 1 + sum((coeff[j] for j in through), Fraction(0)) - c * m
        coeff[k] = e
        rows.append(LedgerRow(k, m, e, through))
        if a > b:
            a, right = a - b, k
        elif b > a:
            b, left = b - a, k
        else:
            done = True
    rows.extend(_follow(coeff, k, c, extra, mult=1))
    return DiscrepancyLedger(c, tuple(rows), f"({p},{q})")


def node_ledger(c, extra: int = 0) -> DiscrepancyLedger:
    """Ledger for a node xy = 0: one blow-up separates the branches."""
    c = _check_weight(c)
    e1 = 1 - 2 * c
    rows = [LedgerRow(1, 2, e1, ())]
    coeff = {1: e1}
    rows.extend(_follow(coeff, 1, c, extra, mult=1))
    return DiscrepancyLedger(c, tuple(rows), "node")


def _follow(coeff: dict[int, Fraction], k: int, c: Fraction, extra: int, mult: int) -> list[LedgerRow]:
    rows = []
    for _ in range(extra):
        e = 1 + coeff[k] - c * mult
        coeff[k + 1] = e
        rows.append(LedgerRow(k + 1, mult, e, (k,)))
        k += 1
    return rows


CLASSES = ("terminal", "canonical", "log-canonical", "worse")


def classify_ledger(book: DiscrepancyLedger) -> str:
    coeffs = book.coefficients
    if all(e > 0 for e in coeffs):
        return "terminal"
    if all(e >= 0 for e in coeffs):
        return "canonical"
    if all(e >= -1 for e in coeffs):
        return "log-canonical"
    return "worse"


def canonical_class(p: int, q: int, c, node: bool = False) -> str:
    """Classify (S, cC) at the germ from its resolution ledger."""
    book = node_ledger(c) if node else ledger(p, q, c)
    return classify_ledger(book)


def shortcut_class(p: int, q: int, c) -> str:
    """The multiplicity criterion: terminal iff c*mult < 1, canonical iff <= 1."""
    cm = Fraction(c) * min(p, q)
    if cm < 1:
        return "terminal"
    if cm == 1:
        return "canonical"
    return "not canonical"


def is_coprime(p: int, q: int) -> bool:
    return gcd(p, q) == 1
