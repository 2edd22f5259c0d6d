"""Search over codepoint allocations for a given codebook size n.

The best distortion F(k) over splits (k, n-k) is empirically unimodal in k,
so a seeded neighbor descent finds the optimum in a handful of steps; an
exhaustive scan is kept as the slow reference.  Splits with no feasible
structural case are treated as +inf (they cannot host the optimum), and the
search only fails if every split is infeasible, which cannot happen for a
valid two-piece measure with n >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import casesolver, closedform
from .casesolver import CaseSolution, CaseTag, global_optimum
from .closedform import Allocation
from .errors import AllocationRangeError, InfeasibleError, ScanCapError
from .measure import MixedUniform

DEFAULT_SCAN_CAP = 2000
#: splits below this codebook size on gapped supports go through the
#: unrestricted enumeration, which still catches gap points and one-sided
#: optima; past it the separated structure is trusted (spot-checked against
#: the oracle in the test suite)
SMALL_N_LIMIT = 10


@dataclass(frozen=True)
class SolveReport:
    n: int
    allocation: Allocation
    case_tag: CaseTag
    points: tuple[float, ...]
    distortion: float
    descent_steps: int
    seed_k: int


def _report(n: int, sol: CaseSolution, steps: int, seed_k: int) -> SolveReport:
    return SolveReport(
        n=n,
        allocation=sol.allocation,
        case_tag=sol.case_tag,
        points=sol.points,
        distortion=sol.distortion,
        descent_steps=steps,
        seed_k=seed_k,
    )


def _try_split(mu: MixedUniform, k: int, cache: dict) -> CaseSolution | None:
    if k not in cache:
        try:
            cache[k] = casesolver.best_split(mu, Allocation(k, cache["__n__"] - k))
        except InfeasibleError:
            cache[k] = None
    return cache[k]


def neighbor_descent(mu: MixedUniform, n: int) -> SolveReport:
    """Descend from the seeded split while the distortion strictly decreases.

    When both neighbors improve (never observed; it would contradict the
    unimodality of F), the larger decrease wins, ties toward smaller k.
    """
    if n < 2:
        raise AllocationRangeError(f"need n >= 2, got {n}")
    casesolver.two_pieces(mu)
    seed = closedform.seed_allocation(mu, n)
    cache: dict = {"__n__": n}
    k = seed
    cur = _try_split(mu, k, cache)
    # an infeasible seed slides to the nearest feasible split before descending
    if cur is None:
        for radius in range(1, n):
            for cand in (k - radius, k + radius):
                if 1 <= cand <= n - 1 and _try_split(mu, cand, cache) is not None:
                    k = cand
                    cur = cache[cand]
                    break
            if cur is not None:
                break
    if cur is None:
        raise InfeasibleError(f"no feasible allocation for n={n}")

    steps = 0
    while True:
        moves = []
        if k - 1 >= 1:
            down = _try_split(mu, k - 1, cache)
            if down is not None and down.distortion < cur.distortion:
                moves.append((down.distortion, k - 1, down))
        if k + 1 <= n - 1:
            up = _try_split(mu, k + 1, cache)
            if up is not None and up.distortion < cur.distortion:
                moves.append((up.distortion, k + 1, up))
        if not moves:
            break
        # larger decrease wins; exact ties go to the smaller k
        moves.sort(key=lambda c: (c[0], c[1]))
        _, k, cur = moves[0]
        steps += 1
    return _report(n, cur, steps, seed)


def argmin_allocation(mu: MixedUniform, n: int, scan_cap: int = DEFAULT_SCAN_CAP) -> SolveReport:
    """Exhaustive scan over every split k in [1, n-1]; ties toward smaller k.

    Gapped supports use the closed-form split distortion; connected supports
    solve the structural cases per split, hence the scan cap.
    """
    if n < 2:
        raise AllocationRangeError(f"need n >= 2, got {n}")
    if n > scan_cap:
        raise ScanCapError(f"n={n} exceeds the scan cap {scan_cap}")
    if casesolver.gap_width(mu) > 0:
        k = closedform.f_of_n(mu, n)
        sol = casesolver.solve_case(mu, Allocation(k, n - k), CaseTag.SEPARATED)
        return _report(n, sol, 0, k)
    best: CaseSolution | None = None
    best_k = 1
    for k in range(1, n):
        try:
            sol = casesolver.best_split(mu, Allocation(k, n - k))
        except InfeasibleError:
            continue
        if best is None or sol.distortion < best.distortion:
            best, best_k = sol, k
    if best is None:
        raise InfeasibleError(f"no feasible allocation for n={n}")
    return _report(n, best, 0, best_k)


def solve_n_means(mu: MixedUniform, n: int, *, small_n_limit: int = SMALL_N_LIMIT) -> SolveReport:
    """Front-door solver: optimal n-point codebook for a two-piece measure.

    n = 1 is the mean; gapped supports with n <= small_n_limit go through the
    unrestricted enumeration (gap points and one-sided codebooks are live
    possibilities there); everything else uses the seeded descent.
    """
    casesolver.two_pieces(mu)
    if n < 1:
        raise AllocationRangeError(f"need n >= 1, got {n}")
    if n == 1:
        sol = global_optimum(mu, 1)
        return _report(1, sol, 0, sol.allocation.k)
    if casesolver.gap_width(mu) > 0 and n <= small_n_limit:
        sol = global_optimum(mu, n)
        return _report(n, sol, 0, sol.allocation.k)
    return neighbor_descent(mu, n)
