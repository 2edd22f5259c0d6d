"""Golden regression registry.

Every row pins a known optimal codebook, quantization error, seed sequence,
or algorithm endpoint for the reference measures, together with the solver
call that must reproduce it.  The ``reproduce`` CLI command and the
acceptance test suite both run this registry; it is the repository's primary
regression gate.

Tolerances.  Values known in closed form are checked to 1e-12 relative.
Values only known as printed decimals are stored as strings and checked to
half an ulp of their own print precision, floored at 5e-7 (a correctly
rounded six-decimal print cannot be pinned tighter than 5e-7, and a
five-decimal print cannot be pinned tighter than 5e-6).

One reference case failed independent verification: for the sevenths family
at weight 225/500, the published three-means set is not a centroid fixed
point and its published error does not match its own points.  Exact DP on a
100k-atom discretization, closed-form re-integration, and direct numeric
minimization all agree on a different optimum (whose middle point is not in
the gap).  Those rows carry the independently verified value in
``verified``; the gate checks the solver against the verified value and
flags the published one as a known discrepancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import allocsearch, closedform, measure
from .presets import preset_measure

REL_TOL_EXACT = 1e-12
ABS_TOL_DECIMAL_FLOOR = 5e-7
REL_TOL_VERIFIED = 1e-9

GROUPS = ("moments", "optimal-sets", "f-sequences", "sequences-a", "sequences-b", "algorithm")


def decimal_tolerance(printed: str) -> float:
    """Half an ulp of the printed decimal, floored at 5e-7."""
    if "." in printed:
        places = len(printed.split(".", 1)[1])
    else:
        places = 0
    return max(ABS_TOL_DECIMAL_FLOOR, 0.5 * 10.0 ** (-places))


@dataclass(frozen=True)
class GoldenRow:
    group: str
    name: str
    kind: str  # "exact" | "decimal" | "ints"
    expected: object
    compute: Callable[[], object]
    #: set only when the published expectation failed independent
    #: verification; holds the value confirmed by the DP oracle and direct
    #: minimization, which the regression gate checks instead
    verified: object = None
    note: str | None = None


@dataclass(frozen=True)
class GoldenResult:
    row: GoldenRow
    actual: object
    #: actual matches the published expectation
    matches_expected: bool
    #: actual matches the value the gate enforces (published, or the
    #: independently verified one for known-discrepancy rows)
    gate_passed: bool


# --------------------------------------------------------------------------
# Reference sequences (exact integers)
# --------------------------------------------------------------------------

SEED_FIFTH_FIRST_46 = (
    0, 1, 1, 1, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 6, 6, 6, 7, 7, 8, 8, 8, 9, 9,
    9, 10, 10, 11, 11, 11, 12, 12, 12, 13, 13, 14, 14, 14, 15, 15, 16, 16,
    16, 17, 17, 17,
)

SEED_THIRD_FIRST_40 = (
    1, 1, 2, 2, 3, 4, 4, 5, 5, 6, 6, 7, 8, 8, 9, 9, 10, 10, 11, 12, 12, 13,
    13, 14, 14, 15, 16, 16, 17, 17, 18, 18, 19, 20, 20, 21, 21, 22, 22, 23,
)

F_HUNDREDTH_FROM_3 = (
    1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 5,
    5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 8, 8, 8, 8, 8, 9, 9, 9,
    9, 9, 9, 10, 10, 10, 10, 10, 10, 11,
)  # n = 3..60

F_HUNDREDTH_4985_5011 = (
    886, 886, 886, 887, 887, 887, 887, 887, 887, 888, 888, 888, 888, 888,
    889, 889, 889, 889, 889, 889, 890, 890, 890, 890, 890, 890, 891,
)

F_TWO_FIFTHS_FROM_2 = (
    1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11,
    12, 12, 13, 13, 14, 14,
)  # n = 2..30

F_TWO_FIFTHS_4985_5011 = (
    2324, 2325, 2325, 2326, 2326, 2327, 2327, 2328, 2328, 2329, 2329, 2329,
    2330, 2330, 2331, 2331, 2332, 2332, 2333, 2333, 2334, 2334, 2335, 2335,
    2336, 2336, 2336,
)

F_THOUSANDTH_FROM_5 = (
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3,
    3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5,
    5, 5, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6,
)  # n = 5..70

F_THOUSANDTH_4985_5011 = (
    453, 453, 454, 454, 454, 454, 454, 454, 454, 454, 454, 454, 454, 455,
    455, 455, 455, 455, 455, 455, 455, 455, 455, 455, 456, 456, 456,
)

SEVENTHS_225_NOTE = (
    "published three-means reference for weight 225/500 could not be "
    "independently verified: it is not a centroid fixed point and its error "
    "does not match its own points; DP oracle, closed-form integration, and "
    "direct minimization agree on the verified value (run `mixquant "
    "oracle-check --preset gapped-sevenths-p 0.45`)"
)

# frozen to ten decimals from two agreeing routes: the continuous centroid
# fixed point and the exact DP on a 100k-atom discretization
SEVENTHS_225_VERIFIED_POINTS = (0.1847127088, 0.5541381265, 0.8513793755)
SEVENTHS_225_VERIFIED_ERROR = 0.0097344622


def _frac(num: int, den: int) -> float:
    return float(Fraction(num, den))


def _measures() -> dict:
    return {
        "fifth": preset_measure("connected-p", 0.2),
        "third": preset_measure("connected-p", 1.0 / 3.0),
        "hundredth": preset_measure("gapped-thirds-p", 0.01),
        "two_fifths": preset_measure("gapped-thirds-p", 0.4),
        "thousandth": preset_measure("gapped-thirds-p", 0.001),
        "sevenths_51": preset_measure("gapped-sevenths-p", 0.102),
        "sevenths_225": preset_measure("gapped-sevenths-p", 0.45),
    }


def golden_rows() -> list[GoldenRow]:
    mus = _measures()
    rows: list[GoldenRow] = []

    def moment(name, mu_key, fn, num, den):
        rows.append(GoldenRow("moments", name, "exact", _frac(num, den),
                              lambda mu=mus[mu_key], f=fn: f(mu)))

    moment("connected 1/5 mean", "fifth", measure.mean, 13, 10)
    moment("connected 1/5 one-mean error", "fifth", measure.variance, 73, 300)
    moment("connected 1/3 mean", "third", measure.mean, 7, 6)
    moment("connected 1/3 one-mean error", "third", measure.variance, 11, 36)
    moment("gapped 1/100 mean", "hundredth", measure.mean, 62, 75)
    moment("gapped 1/100 one-mean error", "hundredth", measure.variance, 461, 33750)
    moment("gapped 2/5 mean", "two_fifths", measure.mean, 17, 30)
    moment("gapped 2/5 one-mean error", "two_fifths", measure.variance, 313, 2700)
    moment("gapped 1/1000 mean", "thousandth", measure.mean, 1249, 1500)

    solve_cache: dict = {}

    def solved(mu_key, n):
        if (mu_key, n) not in solve_cache:
            solve_cache[(mu_key, n)] = allocsearch.solve_n_means(mus[mu_key], n)
        return solve_cache[(mu_key, n)]

    def opt(name, mu_key, n, points, pts_kind, error, err_kind, *,
            verified_points=None, verified_error=None, note=None):
        rows.append(GoldenRow("optimal-sets", f"{name} points", pts_kind, tuple(points),
                              lambda k=mu_key, nn=n: solved(k, nn).points,
                              verified=verified_points, note=note))
        rows.append(GoldenRow("optimal-sets", f"{name} error", err_kind, error,
                              lambda k=mu_key, nn=n: solved(k, nn).distortion,
                              verified=verified_error, note=note))

    opt("connected 1/5 two-means", "fifth", 2,
        (_frac(11, 16), _frac(25, 16)), "exact", _frac(317, 3840), "exact")
    opt("connected 1/5 three-means", "fifth", 3,
        ("0.400679", "1.202036", "1.734012"), "decimal", "0.0295695", "decimal")
    opt("connected 1/3 two-means", "third", 2,
        (0.5, 1.5), "exact", _frac(1, 12), "exact")
    opt("connected 1/3 three-means", "third", 3,
        ("0.380129", "1.14039", "1.71346"), "decimal", "0.0343006", "decimal")
    opt("gapped 1/100 two-means", "hundredth", 2,
        ("0.731517", "0.910506"), "decimal", "0.005682", "decimal")
    opt("gapped 1/100 three-means", "hundredth", 3,
        (_frac(1, 6), 0.75, _frac(11, 12)), "exact", _frac(103, 43200), "exact")
    opt("gapped 2/5 one-mean", "two_fifths", 1,
        (_frac(17, 30),), "exact", _frac(313, 2700), "exact")
    opt("gapped 2/5 two-means", "two_fifths", 2,
        (_frac(1, 6), _frac(5, 6)), "exact", _frac(1, 108), "exact")
    opt("gapped 2/5 three-means", "two_fifths", 3,
        (_frac(1, 6), 0.75, _frac(11, 12)), "exact", _frac(11, 2160), "exact")
    opt("gapped 2/5 four-means", "two_fifths", 4,
        (_frac(1, 12), 0.25, 0.75, _frac(11, 12)), "exact", _frac(1, 432), "exact")
    opt("gapped 1/1000 one-mean", "thousandth", 1,
        (_frac(1249, 1500),), "exact", "0.00970326", "decimal")
    opt("gapped 1/1000 two-means", "thousandth", 2,
        ("0.74824116", "0.91608039"), "decimal", "0.0026610135", "decimal")
    opt("gapped 1/1000 three-means", "thousandth", 3,
        ("0.719398", "0.831639", "0.94388"), "decimal", "0.00134412", "decimal")
    opt("gapped 1/1000 four-means", "thousandth", 4,
        ("0.704407", "0.788862", "0.873317", "0.957772"), "decimal", "0.00087869", "decimal")
    opt("gapped 1/1000 five-means", "thousandth", 5,
        (_frac(1, 6), _frac(17, 24), _frac(19, 24), 0.875, _frac(23, 24)), "exact",
        "0.000587384", "decimal")
    opt("sevenths 51/500 two-means", "sevenths_51", 2,
        ("0.488570", "0.829523"), "decimal", "0.0179722", "decimal")
    opt("sevenths 225/500 three-means", "sevenths_225", 3,
        ("0.174089", "0.522267", "0.840756"), "decimal", "0.00985931", "decimal",
        verified_points=SEVENTHS_225_VERIFIED_POINTS,
        verified_error=SEVENTHS_225_VERIFIED_ERROR,
        note=SEVENTHS_225_NOTE)

    rows.append(GoldenRow("sequences-a", "floor-law seed, weight 1/5, n=1..46", "ints",
                          SEED_FIFTH_FIRST_46,
                          lambda: tuple(closedform.left_seed_fifth(n) for n in range(1, 47))))
    rows.append(GoldenRow("sequences-b", "floor-law seed, weight 1/3, n=1..40", "ints",
                          SEED_THIRD_FIRST_40,
                          lambda: tuple(closedform.right_seed_third(n) for n in range(1, 41))))

    def f_window(name, mu_key, lo, hi, expected):
        rows.append(GoldenRow("f-sequences", name, "ints", expected,
                              lambda k=mu_key, a=lo, b=hi: tuple(
                                  closedform.f_of_n(mus[k], n) for n in range(a, b + 1))))

    f_window("left counts, gapped 1/100, n=3..60", "hundredth", 3, 60, F_HUNDREDTH_FROM_3)
    f_window("left counts, gapped 1/100, n=4985..5011", "hundredth", 4985, 5011, F_HUNDREDTH_4985_5011)
    f_window("left counts, gapped 2/5, n=2..30", "two_fifths", 2, 30, F_TWO_FIFTHS_FROM_2)
    f_window("left counts, gapped 2/5, n=4985..5011", "two_fifths", 4985, 5011, F_TWO_FIFTHS_4985_5011)
    f_window("left counts, gapped 1/1000, n=5..70", "thousandth", 5, 70, F_THOUSANDTH_FROM_5)
    f_window("left counts, gapped 1/1000, n=4985..5011", "thousandth", 4985, 5011, F_THOUSANDTH_4985_5011)

    def descent_k(name, mu_key, n, expected_k):
        rows.append(GoldenRow("algorithm", name, "ints", (expected_k,),
                              lambda k=mu_key, nn=n: (allocsearch.neighbor_descent(mus[k], nn).allocation.k,)))

    descent_k("descent left count, 1/5, n=30", "fifth", 30, 11)
    descent_k("descent left count, 1/5, n=51", "fifth", 51, 19)
    descent_k("descent left count, 1/5, n=1000", "fifth", 1000, 386)
    descent_k("descent left count, 1/3, n=21", "third", 21, 21 - 12)
    descent_k("descent left count, 1/3, n=100", "third", 100, 100 - 56)
    descent_k("descent left count, 1/3, n=500", "third", 500, 500 - 279)

    return rows


def compare_values(kind: str, expected, actual, *, rel_tol: float | None = None) -> bool:
    """Compare one row's actual value against an expectation of this kind."""
    if kind == "ints":
        return tuple(actual) == tuple(expected)
    expected_seq = expected if isinstance(expected, tuple) else (expected,)
    actual_seq = tuple(actual) if isinstance(expected, tuple) else (actual,)
    if len(actual_seq) != len(expected_seq):
        return False
    for got, want in zip(actual_seq, expected_seq):
        if kind == "exact":
            target = float(want)
            if abs(got - target) > REL_TOL_EXACT * max(1.0, abs(target)):
                return False
        elif isinstance(want, str):
            if abs(got - float(want)) > decimal_tolerance(want):
                return False
        else:
            if abs(got - float(want)) > max(rel_tol or REL_TOL_VERIFIED, abs(float(want)) * (rel_tol or REL_TOL_VERIFIED)):
                return False
    return True


def run_reproduce(only: str | None = None) -> list[GoldenResult]:
    """Evaluate the registry (optionally one group) and report row results."""
    if only is not None and only not in GROUPS:
        raise ValueError(f"unknown group {only!r}; known: {', '.join(GROUPS)}")
    results = []
    for row in golden_rows():
        if only is not None and row.group != only:
            continue
        actual = row.compute()
        matches = compare_values(row.kind, row.expected, actual)
        if row.verified is None:
            gate = matches
        else:
            gate = compare_values(row.kind, row.verified, actual)
        results.append(GoldenResult(row, actual, matches, gate))
    return results
