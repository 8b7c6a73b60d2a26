"""The acceptance checks, shared by ``geiser verify-all`` and the test suite.

Each check returns a :class:`CriterionResult` carrying a pass flag and a
JSON-ready detail dict.  Reference values the code disagrees with are
reported in the detail, never used as expected answers.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Callable

from .action import (
    CurveClass,
    SurfaceContext,
    apply_word,
    class_group_of_complement,
    formula_readings,
    lowering_letter,
    apply_letter,
    sigma_profile,
    simulate_geiser,
)
from .cusp import (
    AtNode,
    canonical_class,
    classify_ledger,
    delta_invariant,
    euclid_sequence,
    ledger,
    node_ledger,
    shortcut_class,
)
from .exact import HomPoly3, UniPoly, parse_hompoly, rational_to_json
from .fixtures import load_fixture
from .nodal_group import F1Query, collinearity_constant, division_points, f1_orbit_count
from .plane import (
    contact_linear_system,
    contact_profile_of,
    fiber_report,
    find_flex_tangents,
    in_span,
)
from .reduction import (
    AdmissibilityQuery,
    admissible,
    analyze,
    multiplicity_bound,
    reduce,
)
from .singularity import delta_at_point, newton_delta_at_point


@dataclass(frozen=True)
class VerifyConfig:
    fixtures_dir: str | Path | None = None
    jobs: int = 1
    seed: int = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# 1-4: the involutions


def _sweep_one_d(args: tuple[int, int]) -> list[tuple]:
    d, bound = args
    ctx = SurfaceContext(d)
    bad = []
    for p in range(1, bound + 1):
        for q in range(1, bound + 1):
            for branch in "+-":
                closed = sigma_profile(ctx, AtNode(p, q), branch)
                sim = simulate_geiser(ctx, AtNode(p, q), branch)
                if closed != sim:
                    bad.append((d, p, q, branch, repr(closed), repr(sim)))
    return bad


def oracle_sweep(ds=range(4, 10), bound: int = 40, jobs: int = 1) -> dict:
    """Compare closed forms with the blow-up simulation; merge by input order."""
    tasks = [(d, bound) for d in ds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_one_d, tasks))
    else:
        chunks = [_sweep_one_d(t) for t in tasks]
    mismatches = [m for chunk in chunks for m in chunk]
    return {
        "degrees": list(ds),
        "bound": bound,
        "comparisons": len(tasks) * bound * bound * 2,
        "mismatches": [list(m) for m in mismatches],
    }


def check_oracle_equivalence(cfg: VerifyConfig) -> CriterionResult:
    start = time.perf_counter()
    report = oracle_sweep(bound=40, jobs=1)
    elapsed = time.perf_counter() - start
    report["single_thread_seconds"] = round(elapsed, 3)
    ok = not report["mismatches"] and elapsed < 10
    return CriterionResult(1, "oracle equivalence sweep", ok, report)


def check_witness(cfg: VerifyConfig) -> CriterionResult:
    conic = load_fixture("conic_51", cfg.fixtures_dir)
    profile = contact_profile_of(conic).profile()
    cls = CurveClass.at_node(9, profile.p, profile.q)
    letter = lowering_letter(cls)
    image = apply_letter(cls, letter)
    ok = (
        profile == AtNode(5, 1)
        and image.profile == AtNode(2, 1)
        and cls.n == Fraction(2, 3)
        and image.n == Fraction(1, 3)
    )
    detail = {
        "conic": str(conic),
        "profile": profile.to_json(),
        "letter": letter,
        "image": image.to_json(),
        "ndeg": [rational_to_json(cls.n), rational_to_json(image.n)],
    }
    return CriterionResult(2, "conic (5,1) lowers to the line (2,1)", ok, detail)


def check_formula_reconciliation(cfg: VerifyConfig) -> CriterionResult:
    high_failures, low_failures = [], 0
    for d in range(4, 10):
        for p in range(1, 41):
            for q in range(1, 41):
                readings = formula_readings(CurveClass.at_node(d, p, q))
                if not readings.high_ratio_holds:
                    high_failures.append((d, p, q))
                if not readings.low_ratio_holds:
                    low_failures += 1
    witness = formula_readings(CurveClass.at_node(9, 1, 5))
    ok = not high_failures and not witness.low_ratio_holds and witness.high_ratio_holds
    detail = {
        "high_ratio_failures": high_failures,
        "low_ratio_failures": low_failures,
        "witness_d9_profile_1_5": witness.to_json(),
    }
    return CriterionResult(3, "degree formula with the high-ratio case split", ok, detail)


def check_involution_and_growth(cfg: VerifyConfig) -> CriterionResult:
    rng = random.Random(cfg.seed)
    failures = []
    for _ in range(1000):
        d = rng.randint(4, 9)
        p, q = rng.randint(1, 200), rng.randint(1, 200)
        ctx = SurfaceContext(d)
        for letter in "+-":
            once = sigma_profile(ctx, AtNode(p, q), letter)
            if isinstance(once, AtNode) and sigma_profile(ctx, once, letter) != AtNode(p, q):
                failures.append((d, p, q, letter))
    start = CurveClass.at_node(9, 1, 1)
    ndegs = [apply_word(start, "+-" * k).n for k in range(0, 11)]
    increasing = all(a < b for a, b in zip(ndegs, ndegs[1:]))
    detail = {
        "involution_failures": failures,
        "ndeg_of_(+-)^k_for_k_0..10": [rational_to_json(n) for n in ndegs],
    }
    return CriterionResult(4, "involutions and infinite order", not failures and increasing, detail)


# ---------------------------------------------------------------------------
# 5-7: reduction and genus bounds


def check_dichotomy(cfg: VerifyConfig) -> CriterionResult:
    problems = []
    counts = {"strict": 0, "tie": 0, "stalled": 0, "exceptional_d45": 0}
    for d in range(6, 10):
        for p in range(1, 31):
            for q in range(1, 31):
                cls = CurveClass.at_node(d, p, q)
                if not admissible(AdmissibilityQuery(d, cls.n, p, q)):
                    continue
                rep = analyze(cls)
                counts[rep.outcome] += 1
                best = min(apply_word(cls, w).n for w in rep.minimizers)
                if rep.final.n != best or rep.word not in rep.minimizers:
                    problems.append(("greedy not minimal", d, p, q))
                if rep.outcome == "strict" and len(rep.minimizers) != 1:
                    problems.append(("strict with several minimizers", d, p, q))
                if rep.outcome == "tie" and len(set(rep.minimizers)) != 2:
                    problems.append(("tie without two minimizers", d, p, q))
                if rep.outcome == "exceptional_d45":
                    problems.append(("exceptional outcome for d >= 6", d, p, q))
    detail = {"outcomes": counts, "problems": [list(p) for p in problems]}
    return CriterionResult(5, "reduction dichotomy by exhaustive search", not problems, detail)


def check_exceptional(cfg: VerifyConfig) -> CriterionResult:
    r5 = reduce(SurfaceContext(5), CurveClass.at_node(5, 2, 3))
    r4 = reduce(SurfaceContext(4), CurveClass.at_node(4, 2, 2))
    ctx4 = SurfaceContext(4)
    fixed = all(sigma_profile(ctx4, AtNode(2, 2), s) == AtNode(2, 2) for s in "+-")
    ok = r5.outcome == "exceptional_d45" and r4.outcome == "exceptional_d45" and fixed
    detail = {"d5_2_3": r5.to_json(), "d4_2_2": r4.to_json(), "d4_2_2_fixed_by_both": fixed}
    return CriterionResult(6, "exceptional cases in degrees 4 and 5", ok, detail)


def check_genus_bounds(cfg: VerifyConfig) -> CriterionResult:
    c1 = admissible(AdmissibilityQuery(5, 1, 2, 3))
    c2 = admissible(AdmissibilityQuery(9, Fraction(1, 3), 1, 2))
    exceptional = []
    for d in range(4, 10):
        for p in range(1, 41):
            for q in range(1, 41):
                if multiplicity_bound(d, Fraction(p + q, d), p, q) == "exceptional":
                    exceptional.append((d, p, q))
    expected = [(4, 2, 2), (5, 2, 3), (5, 3, 2)]
    ok = c1.admissible and c1.equality and c2.admissible and c2.equality and exceptional == expected
    detail = {
        "d5_m1_2_3": c1.to_json(),
        "d9_m1/3_1_2": c2.to_json(),
        "exceptional_set": [list(e) for e in exceptional],
    }
    return CriterionResult(7, "genus bounds and the exceptional list", ok, detail)


# ---------------------------------------------------------------------------
# 8-10: singularities and plane curves


def _cusp_curve(p: int, q: int) -> HomPoly3:
    n = max(p, q)
    return parse_hompoly(f"x^{p}*z^{n - p} - y^{q}*z^{n - q}")


def check_deltas(cfg: VerifyConfig) -> CriterionResult:
    node = (0, 0, 1)
    problems = []
    for p, q, want in [(2, 3, 1), (2, 15, 7)]:
        got = (delta_invariant(euclid_sequence((p, q))), delta_at_point(_cusp_curve(p, q), node))
        if got != (want, want):
            problems.append((p, q, want, list(got)))
    checked = 0
    for p in range(1, 16):
        for q in range(1, 16):
            if gcd(p, q) != 1:
                continue
            want = (p - 1) * (q - 1) // 2
            curve = _cusp_curve(p, q)
            got = (
                delta_invariant(euclid_sequence((p, q))),
                delta_at_point(curve, node),
                newton_delta_at_point(curve, node),
            )
            checked += 1
            if got != (want,) * 3:
                problems.append((p, q, want, list(got)))
    detail = {"coprime_pairs_checked": checked, "problems": [list(p) for p in problems]}
    return CriterionResult(8, "delta invariants", not problems, detail)


def check_plane_fixtures(cfg: VerifyConfig) -> CriterionResult:
    fx = {name: load_fixture(name, cfg.fixtures_dir) for name in
          ("nodal_cubic", "flex_line", "six_tangent_conic", "pencil_18", "net_17")}
    expected = {
        "flex_line": UniPoly([1, 1]) ** 3,
        "six_tangent_conic": UniPoly([-1, 1]) ** 6,
        "pencil_18": UniPoly.monomial(8),
        "net_17": UniPoly.monomial(7),
    }
    expansions = {}
    ok = True
    for name, want in expected.items():
        f = contact_profile_of(fx[name]).f
        expansions[name] = f.to_text("t")
        ok &= f == want
    pencil = contact_linear_system(8, "t0", 3)
    net = contact_linear_system(7, "t0", 3)
    spans = {
        "pencil_contains_N": in_span(fx["nodal_cubic"], pencil),
        "pencil_contains_generator": in_span(fx["pencil_18"], pencil),
        "net_contains_generators": all(in_span(fx[k], net) for k in ("nodal_cubic", "pencil_18", "net_17")),
    }
    ok &= len(pencil) == 2 and len(net) == 3 and all(spans.values())
    detail = {"expansions": expansions, "pencil_dimension": len(pencil), "net_dimension": len(net), **spans}
    return CriterionResult(9, "plane-curve fixtures", bool(ok), detail)


REFERENCE_FIBER_VALUES = {"six_tangent_conic": (7, 3)}


def check_fibers(cfg: VerifyConfig) -> CriterionResult:
    reports = {name: fiber_report(load_fixture(name, cfg.fixtures_dir))
               for name in ("line_x", "flex_line", "six_tangent_conic")}
    c1, c2, c3 = reports["line_x"], reports["flex_line"], reports["six_tangent_conic"]
    ref = c3.compare(*REFERENCE_FIBER_VALUES["six_tangent_conic"])
    ok = (
        c1.geometric_genus == 0
        and c2.geometric_genus == 1
        and all(r.oracles_agree and r.generic_certified for r in reports.values())
    )
    detail = {name: r.to_json() for name, r in reports.items()}
    detail["six_tangent_conic_vs_reference"] = ref
    return CriterionResult(10, "unit pencil fibers", ok, detail)


# ---------------------------------------------------------------------------
# 11-14


def check_group_law(cfg: VerifyConfig) -> CriterionResult:
    gamma = collinearity_constant()
    d3 = division_points(3)
    d9 = division_points(9)
    flex = find_flex_tangents()
    ok = gamma == -1 and d3.condition == UniPoly([1, 0, 0, 1]) and d3.condition == flex.condition and d9.count == 9
    detail = {
        "gamma": rational_to_json(gamma),
        "division_3": d3.to_json(),
        "flex_condition": flex.condition.to_text("t"),
        "division_9": d9.to_json(),
    }
    return CriterionResult(11, "group law on the smooth locus", ok, detail)


def check_f1(cfg: VerifyConfig) -> CriterionResult:
    rows = []
    ok = True
    for r in range(1, 7):
        generic = f1_orbit_count(F1Query(2, r)).count
        flex = f1_orbit_count(F1Query(-1, r)).count
        rows.append({"r": r, "t_x=2": generic, "t_x=-1": flex})
        ok &= generic == 2 * r + 1 and flex == 2 * r
    return CriterionResult(12, "orbit counts on the blown-up plane", bool(ok), {"rows": rows})


WEIGHTS = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]


def check_ledger(cfg: VerifyConfig) -> CriterionResult:
    problems = []
    for p in range(1, 21):
        for q in range(1, 21):
            for c in WEIGHTS:
                from_ledger = classify_ledger(ledger(p, q, c, extra=2))
                closed = shortcut_class(p, q, c)
                agrees = from_ledger == closed or (
                    closed == "not canonical" and from_ledger in ("log-canonical", "worse")
                )
                if not agrees:
                    problems.append((p, q, str(c), from_ledger, closed))
    node = node_ledger(1, extra=5)
    node_ok = all(e >= -1 for e in node.coefficients)
    detail = {
        "problems": [list(p) for p in problems],
        "node_c1": node.to_json(),
        "cusp_2_3_at_5/6": canonical_class(2, 3, Fraction(5, 6)),
    }
    return CriterionResult(13, "discrepancy ledger", not problems and node_ok, detail)


def check_class_groups(cfg: VerifyConfig) -> CriterionResult:
    got = {
        "P2": class_group_of_complement("P2"),
        "P1xP1": class_group_of_complement("P1xP1"),
        "blown_up_5": class_group_of_complement("blown_up", 5),
    }
    want = {"P2": "Z/3", "P1xP1": "Z + Z/2", "blown_up_5": "Z^4"}
    return CriterionResult(14, "class group of the complement", got == want, got)


CRITERIA: dict[int, tuple[str, str, Callable[[VerifyConfig], CriterionResult]]] = {
    1: ("geiser", "oracle equivalence sweep", check_oracle_equivalence),
    2: ("geiser", "conic (5,1) lowers to the line (2,1)", check_witness),
    3: ("geiser", "degree formula with the high-ratio case split", check_formula_reconciliation),
    4: ("geiser", "involutions and infinite order", check_involution_and_growth),
    5: ("reduction", "reduction dichotomy by exhaustive search", check_dichotomy),
    6: ("reduction", "exceptional cases in degrees 4 and 5", check_exceptional),
    7: ("reduction", "genus bounds and the exceptional list", check_genus_bounds),
    8: ("cusp", "delta invariants", check_deltas),
    9: ("plane", "plane-curve fixtures", check_plane_fixtures),
    10: ("plane", "unit pencil fibers", check_fibers),
    11: ("group", "group law on the smooth locus", check_group_law),
    12: ("group", "orbit counts on the blown-up plane", check_f1),
    13: ("cusp", "discrepancy ledger", check_ledger),
    14: ("surface", "class group of the complement", check_class_groups),
}

GROUPS = sorted({group for group, _, _ in CRITERIA.values()})


def select(only: str | None) -> list[int]:
    """Criterion numbers for a comma list of numbers and group names."""
    if not only:
        return sorted(CRITERIA)
    chosen = set()
    for token in only.split(","):
        token = token.strip()
        if token.isdigit() and int(token) in CRITERIA:
            chosen.add(int(token))
        elif token in GROUPS:
            chosen.update(n for n, (g, _, _) in CRITERIA.items() if g == token)
        else:
            raise KeyError(token)
    return sorted(chosen)


def run_criterion(number: int, cfg: VerifyConfig | None = None) -> CriterionResult:
    cfg = cfg or VerifyConfig()
    _, name, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        result = fn(cfg)
    except Exception as exc:  # a broken fixture must fail its criterion, not the run
        result = CriterionResult(number, name, False, {"error": f"{type(exc).__name__}: {exc}"})
    result.seconds = time.perf_counter() - start
    return result


def verify_all(only: str | None = None, cfg: VerifyConfig | None = None) -> list[CriterionResult]:
    return [run_criterion(n, cfg) for n in select(only)]
