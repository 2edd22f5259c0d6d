"""Closed-form quantizers and allocation formulas for two-piece measures.

For a single uniform piece the optimal n-point codebook is the equally spaced
set a + (2j-1)(b-a)/(2n), j = 1..n, with distortion (b-a)^3 t / (12 n^2)
where t is the piece's density under the full measure.  For two pieces
separated by a positive gap (and n large enough that no codepoint sits in the
gap), the optimal codebook is the union of the per-piece optimal codebooks,
so the only remaining question is how many points each piece gets.  This
module provides that split machinery: the per-piece formula, the union
formula, the integer allocation minimizer, and fast seed guesses for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AllocationRangeError, GapError
from .measure import MixedUniform, Segment


@dataclass(frozen=True)
class Allocation:
    """Split of n codepoints between the two pieces: k on/left of the
    junction, m strictly right of it.  Zero counts are legal only for
    solutions found by unrestricted search (all points on one side, or a
    point inside the gap, which belongs to neither piece); the structural
    solvers require k >= 1 and m >= 1."""

    k: int
    m: int

    def __post_init__(self) -> None:
        if self.k < 0 or self.m < 0:
            raise AllocationRangeError(f"bad allocation ({self.k}, {self.m})")

    @property
    def n(self) -> int:
        return self.k + self.m


@dataclass(frozen=True)
class UniformQuantizerResult:
    points: tuple[float, ...]
    error: float


@dataclass(frozen=True)
class SplitResult:
    allocation: Allocation
    points: tuple[float, ...]
    error: float


def uniform_quantizer(seg: Segment, n: int) -> UniformQuantizerResult:
    """Optimal n-point codebook of one uniform piece under the full measure.

    Points are the n conditional means of equal-width cells; the error is
    (hi-lo)^3 * density / (12 n^2).
    """
    if n < 1:
        raise AllocationRangeError(f"need n >= 1, got {n}")
    width = seg.length
    pts = tuple(seg.lo + (2 * j - 1) * width / (2 * n) for j in range(1, n + 1))
    err = width ** 3 * seg.density / (12.0 * n * n)
    return UniformQuantizerResult(pts, err)


def _two_gapped_segments(mu: MixedUniform) -> tuple[Segment, Segment]:
    if len(mu.segments) != 2:
        raise GapError(f"need exactly two segments, got {len(mu.segments)}")
    s1, s2 = mu.segments
    if not s2.lo > s1.hi:
        raise GapError("segments touch; the split formula needs a positive gap")
    return s1, s2


def split_error(mu: MixedUniform, n: int, k: int) -> float:
    """Distortion of the k / (n-k) split codebook, without materializing it.

    Equals w1*L1^2/(12 k^2) + w2*L2^2/(12 (n-k)^2).
    """
    s1, s2 = _two_gapped_segments(mu)
    if not 1 <= k <= n - 1:
        raise AllocationRangeError(f"k must lie in [1, {n - 1}], got {k}")
    m = n - k
    return (
        s1.weight * s1.length ** 2 / (12.0 * k * k)
        + s2.weight * s2.length ** 2 / (12.0 * m * m)
    )


def split_quantizer(mu: MixedUniform, n: int, k: int) -> SplitResult:
    """Union of the per-piece optimal codebooks with k and n-k points.

    Only claimed optimal for separated supports with n past the measure's
    split threshold; see ``casesolver.split_threshold`` for discovering that
    threshold empirically.
    """
    s1, s2 = _two_gapped_segments(mu)
    if not 1 <= k <= n - 1:
        raise AllocationRangeError(f"k must lie in [1, {n - 1}], got {k}")
    left = uniform_quantizer(s1, k)
    right = uniform_quantizer(s2, n - k)
    return SplitResult(
        allocation=Allocation(k, n - k),
        points=left.points + right.points,
        error=left.error + right.error,
    )


def f_of_n(mu: MixedUniform, n: int) -> int:
    """The left-piece count minimizing the split distortion for given n.

    Scans every k in [1, n-1]; ties break toward smaller k (the minimizer is
    unique up to floating-point ties because the sequence is strictly convex
    in k).
    """
    _two_gapped_segments(mu)
    if n < 2:
        raise AllocationRangeError(f"need n >= 2, got {n}")
    best_k = 1
    best = split_error(mu, n, 1)
    for k in range(2, n):
        v = split_error(mu, n, k)
        if v < best:
            best = v
            best_k = k
    return best_k


# ---------------------------------------------------------------------------
# Seeds for the allocation search
# ---------------------------------------------------------------------------

def left_seed_fifth(n: int) -> int:
    """Floor-law seed floor(8(n+1)/21) for the left count of the unit-pair
    measure with left weight 1/5."""
    return (8 * (n + 1)) // 21


def right_seed_third(n: int) -> int:
    """Floor-law seed floor(4(n+1)/7) for the right count of the unit-pair
    measure with left weight 1/3."""
    return (4 * (n + 1)) // 7


def _matches(value: float, target: float, tol: float = 1e-12) -> bool:
    return abs(value - target) <= tol


def _is_unit_pair(mu: MixedUniform) -> bool:
    if len(mu.segments) != 2:
        return False
    s1, s2 = mu.segments
    return (
        _matches(s1.lo, 0.0)
        and _matches(s1.hi, 1.0)
        and _matches(s2.lo, 1.0)
        and _matches(s2.hi, 2.0)
    )


def high_resolution_seed(mu: MixedUniform, n: int) -> int:
    """k minimizing the high-resolution proxy w1*L1^2/k^2 + w2*L2^2/(n-k)^2
    over real k, rounded and clamped to [1, n-1].

    The real minimizer is n * r / (1 + r) with
    r = (w1 L1^2)^(1/3) / (w2 L2^2)^(1/3), i.e. each piece receives points in
    proportion to the cube root of its weighted squared length.
    """
    if len(mu.segments) != 2:
        raise GapError(f"need exactly two segments, got {len(mu.segments)}")
    s1, s2 = mu.segments
    r = ((s1.weight * s1.length ** 2) / (s2.weight * s2.length ** 2)) ** (1.0 / 3.0)
    k = round(n * r / (1.0 + r))
    return min(max(int(k), 1), n - 1)


def seed_allocation(mu: MixedUniform, n: int) -> int:
    """Starting left count for the neighbor descent.

    The two unit-pair reference measures keep their exact floor-law seeds so
    the published sequences reproduce verbatim; every other measure uses the
    high-resolution estimate.
    """
    if n < 2:
        raise AllocationRangeError(f"need n >= 2, got {n}")
    if _is_unit_pair(mu):
        w = mu.segments[0].weight
        if _matches(w, 0.2):
            return min(max(left_seed_fifth(n), 1), n - 1)
        if _matches(w, 1.0 / 3.0):
            return min(max(n - right_seed_third(n), 1), n - 1)
    return high_resolution_seed(mu, n)
