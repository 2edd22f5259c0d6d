"""Structural solver for two-piece mixtures.

For a two-piece measure and a split (k, m) of the codebook between the
pieces, the optimal configuration falls into one of a small number of
structural cases, distinguished by which Voronoi cell contains the junction
between the pieces:

* ``CROSS_FROM_RIGHT`` ("V1"): the first right-group point owns the junction;
  its cell reaches left across it.  The k left points are then an equally
  spaced optimal codebook of [lo, u] for the straddle boundary u, and the
  m-1 remaining right points are equally spaced past the straddler's right
  boundary.
* ``CROSS_FROM_LEFT`` ("V2"): mirror image; the last left-group point owns
  the junction.
* ``SEPARATED`` ("split"): only possible with a positive gap; the boundary
  between the groups falls inside the gap, no cell crosses mass, and the
  configuration is the closed-form union of per-piece codebooks.

Each crossing case reduces to a fixed point in the one or two free cell
boundaries around the straddler; everything else is a closed-form function
of those boundaries.  ``solve_case`` iterates that fixed point with the
case's inequality enforced by clamping, so when the case minimum sits on the
constraint boundary the iteration converges to the pinned configuration and
the result is flagged infeasible (its distortion is still the honest
measure-level distortion of the returned points).

``global_optimum`` drops all structural assumptions: it enumerates every
admissible placement of points across {left piece, gap, right piece},
relaxes each with plain midpoint/conditional-mean iteration, and returns the
best configuration found.  That is the ground truth for small n, where
codepoints may sit inside the gap or the whole codebook may collapse onto
one piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import closedform
from .closedform import Allocation
from .errors import (
    AllocationRangeError,
    ConvergenceError,
    EmptyCellError,
    GapError,
    InfeasibleError,
    ZeroMassError,
)
from .measure import MixedUniform, codebook_distortion, conditional_mean, interval_distortion, mean, variance

FEASIBILITY_TOL = 1e-12
CENTROID_TOL = 1e-10
# the movement cutoff is tighter than the 1e-13 the contracts require so the
# converged points carry an extra margin against the 1e-12 golden tolerances
MOVE_TOL = 1e-14
MAX_ITER = 10_000


class CaseTag(str, Enum):
    CROSS_FROM_RIGHT = "V1"
    CROSS_FROM_LEFT = "V2"
    SEPARATED = "split"
    FREE = "small-n"


@dataclass(frozen=True)
class CaseSolution:
    allocation: Allocation
    case_tag: CaseTag
    points: tuple[float, ...]
    distortion: float
    feasible: bool

    @property
    def n(self) -> int:
        return len(self.points)


def two_pieces(mu: MixedUniform) -> tuple:
    """The (left, right) segments of a two-piece measure."""
    if len(mu.segments) != 2:
        raise GapError(f"structural solver needs exactly two segments, got {len(mu.segments)}")
    return mu.segments


def gap_width(mu: MixedUniform) -> float:
    s1, s2 = two_pieces(mu)
    return s2.lo - s1.hi


def _check_alloc(alloc: Allocation, *, positive: bool = True) -> None:
    if positive and (alloc.k < 1 or alloc.m < 1):
        raise AllocationRangeError(f"structural cases need k >= 1 and m >= 1, got ({alloc.k}, {alloc.m})")


def _uniform_block(lo: float, hi: float, count: int) -> list[float]:
    width = hi - lo
    return [lo + (2 * j - 1) * width / (2 * count) for j in range(1, count + 1)]


def _strictly_increasing(pts: list[float]) -> bool:
    return all(b > a for a, b in zip(pts, pts[1:]))


def _solve_cross_from_right(mu: MixedUniform, alloc: Allocation) -> CaseSolution:
    """Case "V1": straddler is the first right-group point."""
    s1, s2 = two_pieces(mu)
    A, B, t1 = s1.lo, s1.hi, s1.density
    C, D, t2 = s2.lo, s2.hi, s2.density
    k, m = alloc.k, alloc.m

    def cm(lo: float, hi: float) -> float:
        # inline two-segment conditional mean; assumes lo < hi
        mass = 0.0
        mom = 0.0
        a = lo if lo > A else A
        b = hi if hi < B else B
        if b > a:
            mass += t1 * (b - a)
            mom += t1 * 0.5 * (b * b - a * a)
        a = lo if lo > C else C
        b = hi if hi < D else D
        if b > a:
            mass += t2 * (b - a)
            mom += t2 * 0.5 * (b * b - a * a)
        if mass <= 0.0:
            raise ZeroMassError(f"straddle cell [{lo}, {hi}] has no mass")
        return mom / mass

    u = B
    v = D if m == 1 else C + (D - C) / m
    collapsed = False
    moved = math.inf
    try:
        for _ in range(MAX_ITER):
            ak = A + (2 * k - 1) * (u - A) / (2 * k)
            s = cm(u, v)
            u_new = 0.5 * (ak + s)
            if u_new > B:
                u_new = B
            if m >= 2:
                b2 = v + (D - v) / (2 * (m - 1))
                v_new = 0.5 * (s + b2)
                if v_new < C:
                    v_new = C
            else:
                v_new = D
            if not (A < u_new < v_new <= D):
                collapsed = True
                break
            moved = max(abs(u_new - u), abs(v_new - v))
            u, v = u_new, v_new
            if moved < MOVE_TOL:
                break
        else:
            if moved > 1e-10:
                raise ConvergenceError(
                    f"V1 case ({k}, {m}) still moving {moved:.2e} after {MAX_ITER} iterations"
                )
    except ZeroMassError:
        collapsed = True

    if collapsed:
        pts = sorted(_uniform_block(A, B, k) + _uniform_block(C, D, m))
        return CaseSolution(alloc, CaseTag.CROSS_FROM_RIGHT, tuple(pts),
                            codebook_distortion(mu, pts), False)

    left = _uniform_block(A, u, k)
    s = cm(u, v)
    right = _uniform_block(v, D, m - 1) if m >= 2 else []
    pts = left + [s] + right

    natural_mid = 0.5 * (left[-1] + s)
    feasible = (
        natural_mid <= B + FEASIBILITY_TOL
        and s >= C - FEASIBILITY_TOL
        and _strictly_increasing(pts)
    )
    if m >= 2:
        v_nat = 0.5 * (s + right[0])
        feasible = feasible and v_nat >= C - FEASIBILITY_TOL

    clean = u <= B + FEASIBILITY_TOL and (m == 1 or v >= C - FEASIBILITY_TOL)
    if feasible and clean:
        dist = t1 * (u - A) ** 3 / (12.0 * k * k) + interval_distortion(mu, u, v, s)
        if m >= 2:
            dist += t2 * (D - v) ** 3 / (12.0 * (m - 1) ** 2)
    else:
        dist = codebook_distortion(mu, pts)
    return CaseSolution(alloc, CaseTag.CROSS_FROM_RIGHT, tuple(pts), dist, feasible)


def _solve_cross_from_left(mu: MixedUniform, alloc: Allocation) -> CaseSolution:
    """Case "V2": straddler is the last left-group point."""
    s1, s2 = two_pieces(mu)
    A, B, t1 = s1.lo, s1.hi, s1.density
    C, D, t2 = s2.lo, s2.hi, s2.density
    k, m = alloc.k, alloc.m

    def cm(lo: float, hi: float) -> float:
        mass = 0.0
        mom = 0.0
        a = lo if lo > A else A
        b = hi if hi < B else B
        if b > a:
            mass += t1 * (b - a)
            mom += t1 * 0.5 * (b * b - a * a)
        a = lo if lo > C else C
        b = hi if hi < D else D
        if b > a:
            mass += t2 * (b - a)
            mom += t2 * 0.5 * (b * b - a * a)
        if mass <= 0.0:
            raise ZeroMassError(f"straddle cell [{lo}, {hi}] has no mass")
        return mom / mass

    w = A if k == 1 else A + (B - A) * (k - 1) / k
    # start strictly right of the junction: the exact junction can be a
    # spurious pinned fixed point of the clamped map
    u = C + (D - C) / (2 * m)
    collapsed = False
    moved = math.inf
    try:
        for _ in range(MAX_ITER):
            s = cm(w, u)
            if s > B:
                s = B
            if k >= 2:
                ak1 = A + (2 * (k - 1) - 1) * (w - A) / (2 * (k - 1))
                w_new = 0.5 * (ak1 + s)
                if w_new > B:
                    w_new = B
            else:
                w_new = A
            b1 = u + (D - u) / (2 * m)
            u_new = 0.5 * (s + b1)
            if u_new < C:
                u_new = C
            if not (A <= w_new < u_new < D):
                collapsed = True
                break
            moved = max(abs(w_new - w), abs(u_new - u))
            w, u = w_new, u_new
            if moved < MOVE_TOL:
                break
        else:
            if moved > 1e-10:
                raise ConvergenceError(
                    f"V2 case ({k}, {m}) still moving {moved:.2e} after {MAX_ITER} iterations"
                )
    except ZeroMassError:
        collapsed = True

    if collapsed:
        pts = sorted(_uniform_block(A, B, k) + _uniform_block(C, D, m))
        return CaseSolution(alloc, CaseTag.CROSS_FROM_LEFT, tuple(pts),
                            codebook_distortion(mu, pts), False)

    s_nat = cm(w, u)
    s = min(s_nat, B)
    left = _uniform_block(A, w, k - 1) if k >= 2 else []
    right = _uniform_block(u, D, m)
    pts = left + [s] + right

    natural_mid = 0.5 * (s + right[0])
    feasible = (
        s_nat <= B + FEASIBILITY_TOL
        and natural_mid >= C - FEASIBILITY_TOL
        and _strictly_increasing(pts)
    )
    if k >= 2:
        w_nat = 0.5 * (left[-1] + s)
        feasible = feasible and w_nat <= B + FEASIBILITY_TOL

    clean = u >= C - FEASIBILITY_TOL and (k == 1 or w <= B + FEASIBILITY_TOL)
    if feasible and clean:
        dist = interval_distortion(mu, w, u, s) + t2 * (D - u) ** 3 / (12.0 * m * m)
        if k >= 2:
            dist += t1 * (w - A) ** 3 / (12.0 * (k - 1) ** 2)
    else:
        dist = codebook_distortion(mu, pts)
    return CaseSolution(alloc, CaseTag.CROSS_FROM_LEFT, tuple(pts), dist, feasible)


def _solve_separated(mu: MixedUniform, alloc: Allocation) -> CaseSolution:
    """Separated case: closed-form split, valid when the group boundary falls
    inside the gap."""
    s1, s2 = two_pieces(mu)
    res = closedform.split_quantizer(mu, alloc.n, alloc.k)
    mid = 0.5 * (res.points[alloc.k - 1] + res.points[alloc.k])
    feasible = s1.hi - FEASIBILITY_TOL <= mid <= s2.lo + FEASIBILITY_TOL
    return CaseSolution(alloc, CaseTag.SEPARATED, res.points, res.error, feasible)


def solve_case(mu: MixedUniform, alloc: Allocation, case_tag: CaseTag) -> CaseSolution:
    """Solve one structural case for the given split.

    Returns the case-constrained minimizer.  ``feasible`` is False when the
    converged configuration violates the case's junction inequality (the
    constrained minimum sits on the case boundary) or any structural
    condition; the distortion field is always the exact measure-level
    distortion of the returned points.
    """
    two_pieces(mu)
    if case_tag is CaseTag.CROSS_FROM_RIGHT:
        _check_alloc(alloc)
        return _solve_cross_from_right(mu, alloc)
    if case_tag is CaseTag.CROSS_FROM_LEFT:
        _check_alloc(alloc)
        return _solve_cross_from_left(mu, alloc)
    if case_tag is CaseTag.SEPARATED:
        _check_alloc(alloc)
        if gap_width(mu) <= 0:
            raise GapError("separated case needs a positive gap")
        return _solve_separated(mu, alloc)
    raise ValueError(f"solve_case cannot target {case_tag!r}")


def best_split(mu: MixedUniform, alloc: Allocation) -> CaseSolution:
    """Feasible case of minimum distortion for one split; ties prefer the
    right-crossing case.  Raises ``InfeasibleError`` when no case is feasible
    (legal for splits far from the optimum; the allocation search skips
    them)."""
    tags = [CaseTag.CROSS_FROM_RIGHT, CaseTag.CROSS_FROM_LEFT]
    if gap_width(mu) > 0:
        tags.append(CaseTag.SEPARATED)
    best: CaseSolution | None = None
    for tag in tags:
        try:
            sol = solve_case(mu, alloc, tag)
        except ConvergenceError:
            continue
        if sol.feasible and (best is None or sol.distortion < best.distortion):
            best = sol
    if best is None:
        raise InfeasibleError(f"no feasible case for allocation ({alloc.k}, {alloc.m})")
    return best


# ---------------------------------------------------------------------------
# Unrestricted search (ground truth for small n)
# ---------------------------------------------------------------------------

def _relax(mu: MixedUniform, init: list[float]) -> list[float]:
    """Plain midpoint/conditional-mean iteration from a given codebook.

    Raises ``EmptyCellError`` when a cell loses all mass and
    ``ConvergenceError`` at the iteration cap.
    """
    pts = sorted(init)
    lo = mu.support_lo
    hi = mu.support_hi
    n = len(pts)
    moved = math.inf
    for _ in range(MAX_ITER):
        new = []
        left = lo
        for i in range(n):
            right = 0.5 * (pts[i] + pts[i + 1]) if i + 1 < n else hi
            try:
                new.append(conditional_mean(mu, left, right))
            except (ZeroMassError, ValueError):
                raise EmptyCellError(f"cell [{left}, {right}] around {pts[i]} has no mass") from None
            left = right
        moved = max(abs(a - b) for a, b in zip(new, pts))
        pts = new
        if moved < MOVE_TOL:
            return pts
    if moved > 1e-10:
        raise ConvergenceError(f"relaxation still moving {moved:.2e} after {MAX_ITER} iterations")
    return pts


def _classify(mu: MixedUniform, pts: list[float]) -> tuple[int, int, int]:
    """Counts (left, gap, right) with endpoint membership resolved to the
    closed pieces."""
    s1, s2 = two_pieces(mu)
    k = sum(1 for p in pts if p <= s1.hi + FEASIBILITY_TOL)
    m = sum(1 for p in pts if p >= s2.lo - FEASIBILITY_TOL)
    return k, m, len(pts) - k - m


def _structural_tag(mu: MixedUniform, pts: list[float], k: int) -> CaseTag:
    s1, s2 = two_pieces(mu)
    if k == 0 or k == len(pts):
        return CaseTag.FREE
    mid = 0.5 * (pts[k - 1] + pts[k])
    if mid <= s1.hi + FEASIBILITY_TOL:
        return CaseTag.CROSS_FROM_RIGHT
    if mid >= s2.lo - FEASIBILITY_TOL:
        return CaseTag.CROSS_FROM_LEFT
    return CaseTag.SEPARATED


def global_optimum(mu: MixedUniform, n: int) -> CaseSolution:
    """Optimal n-point codebook with no structural assumptions.

    Enumerates every placement of points over {left piece, gap, right piece}
    (at most one point can sit strictly inside the gap: its cell needs mass
    from both sides, which a second gap point would cut off), relaxes each
    placement to its fixed point, adds the structural candidates for every
    split, and returns the best configuration by exact distortion.
    """
    s1, s2 = two_pieces(mu)
    if n < 1:
        raise AllocationRangeError(f"need n >= 1, got {n}")
    if n == 1:
        pts = [mean(mu)]
        k, m, _ = _classify(mu, pts)
        return CaseSolution(Allocation(k, m), CaseTag.FREE, tuple(pts), variance(mu), True)

    gapped = gap_width(mu) > 0
    candidates: list[tuple[float, list[float], CaseTag, Allocation]] = []

    for k in range(1, n):
        alloc = Allocation(k, n - k)
        for tag in ([CaseTag.CROSS_FROM_RIGHT, CaseTag.CROSS_FROM_LEFT]
                    + ([CaseTag.SEPARATED] if gapped else [])):
            try:
                sol = solve_case(mu, alloc, tag)
            except ConvergenceError:
                continue
            if sol.feasible:
                candidates.append((sol.distortion, list(sol.points), sol.case_tag, sol.allocation))

    inits: list[list[float]] = [
        list(closedform.uniform_quantizer(s1, n).points),
        list(closedform.uniform_quantizer(s2, n).points),
    ]
    if gapped:
        mid_gap = 0.5 * (s1.hi + s2.lo)
        for k1 in range(0, n):
            k2 = n - 1 - k1
            init = []
            if k1:
                init += list(closedform.uniform_quantizer(s1, k1).points)
            init.append(mid_gap)
            if k2:
                init += list(closedform.uniform_quantizer(s2, k2).points)
            inits.append(init)

    for init in inits:
        try:
            pts = _relax(mu, init)
        except (EmptyCellError, ConvergenceError):
            continue
        if not _strictly_increasing(pts):
            continue
        k, m, g = _classify(mu, pts)
        tag = CaseTag.FREE if (g > 0 or k == 0 or m == 0) else _structural_tag(mu, pts, k)
        candidates.append((codebook_distortion(mu, pts), pts, tag, Allocation(k, m)))

    if not candidates:
        raise InfeasibleError(f"no candidate configuration found for n={n}")
    dist, pts, tag, alloc = min(candidates, key=lambda c: c[0])
    return CaseSolution(alloc, tag, tuple(pts), dist, True)


def solve_small_n(mu: MixedUniform, n: int) -> CaseSolution:
    """Exhaustive small-n solve (n <= 4), including placements the structural
    solver excludes: points inside the gap and codebooks confined to one
    piece."""
    if not 1 <= n <= 4:
        raise AllocationRangeError(f"solve_small_n handles n <= 4, got {n}")
    return global_optimum(mu, n)


def split_threshold(mu: MixedUniform, n_max: int = 12) -> int | None:
    """Smallest N such that for every n in [N, n_max] the unrestricted
    optimum is the separated split configuration.  Returns None when even
    n_max is not separated.  This is measured data, not a constant: the
    threshold depends on the measure."""
    if gap_width(mu) <= 0:
        raise GapError("split threshold is defined for gapped supports only")
    ok: list[bool] = []
    for n in range(2, n_max + 1):
        sol = global_optimum(mu, n)
        k, m, g = _classify(mu, list(sol.points))
        separated = g == 0 and k >= 1 and m >= 1
        if separated:
            best_k = closedform.f_of_n(mu, n)
            split_err = closedform.split_error(mu, n, best_k)
            separated = abs(sol.distortion - split_err) <= 1e-10 * max(1.0, split_err)
        ok.append(separated)
    threshold: int | None = None
    for idx in range(len(ok) - 1, -1, -1):
        if not ok[idx]:
            break
        threshold = idx + 2
    return threshold
