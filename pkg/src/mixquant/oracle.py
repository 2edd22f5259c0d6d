"""Independent ground truth for every solver result.

Two tools live here.  The dynamic program computes the *exact* optimal
n-point quantizer of a discrete measure: in one dimension optimal clusters
are contiguous in sorted order, each cluster's cost is O(1) from weighted
prefix sums, and the optimal split point is monotone in the right endpoint,
which licenses a divide-and-conquer evaluation of each DP layer.  Feeding it
a midpoint-rule discretization of a mixed uniform measure gives a surrogate
whose optimum converges to the continuous one at O(M^-2) in the atom count.

The Lloyd iteration on the continuous measure is the opposite: cheap, exact
in its fixed-point conditions, but only a local-optimum candidate.  It is
never used as ground truth, only as a candidate generator and a fixed-point
validator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, EmptyCellError, ZeroMassError
from .measure import MixedUniform, codebook_distortion, conditional_mean

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Atoms with weights; positions strictly increasing, weights positive,
    total mass one within 1e-9."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)
        if pos.ndim != 1 or w.shape != pos.shape or pos.size == 0:
            raise ValueError("positions and weights must be equal-length 1-D arrays")
        if not np.all(np.diff(pos) > 0):
            raise ValueError("positions must be strictly increasing")
        if not np.all(w > 0):
            raise ValueError("weights must be positive")
        total = float(w.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights sum to {total}, expected 1 within 1e-9")

    @property
    def size(self) -> int:
        return int(self.positions.size)


@dataclass(frozen=True)
class OracleResult:
    points: tuple[float, ...]
    error: float
    iterations: int


def discretize(mu: MixedUniform, m_atoms: int) -> DiscreteMeasure:
    """Midpoint-rule atoms: each segment gets round(M * weight) atoms (at
    least one) at sub-interval midpoints, all carrying equal shares of the
    segment weight."""
    if m_atoms < 10:
        raise ValueError(f"need at least 10 atoms, got {m_atoms}")
    positions = []
    weights = []
    for seg in mu.segments:
        count = max(1, round(m_atoms * seg.weight))
        step = seg.length / count
        positions.append(seg.lo + step * (np.arange(count) + 0.5))
        weights.append(np.full(count, seg.weight / count))
    pos = np.concatenate(positions)
    w = np.concatenate(weights)
    w = w / w.sum()
    return DiscreteMeasure(pos, w)


# ---------------------------------------------------------------------------
# Exact DP on a discrete measure
# ---------------------------------------------------------------------------

@njit(cache=True)
def _dac_layers(W, WX, WX2, n):  # pragma: no cover - exercised via wrapper
    """All DP layers 1..n; returns the final layer values and split table.

    D_j(i) = min_{s in [j-1, i]} D_{j-1}(s-1) + cost(s, i) with cost from the
    prefix arrays; the inner argmin is filled by divide and conquer over i,
    shrinking the candidate range via the monotonicity of the split point.
    """
    A = W.shape[0] - 1
    prev = np.empty(A)
    cur = np.empty(A)
    split = np.zeros((n + 1, A), np.int64)
    for i in range(A):
        sw = W[i + 1] - W[0]
        sx = WX[i + 1] - WX[0]
        sxx = WX2[i + 1] - WX2[0]
        c = sxx - sx * sx / sw
        prev[i] = c if c > 0.0 else 0.0
    stack = np.empty((512, 4), np.int64)
    for j in range(2, n + 1):
        for i in range(0, min(j - 1, A)):
            cur[i] = 0.0
            split[j, i] = i
        top = 0
        stack[0, 0] = j - 1
        stack[0, 1] = A - 1
        stack[0, 2] = j - 1
        stack[0, 3] = A - 1
        top = 1
        while top > 0:
            top -= 1
            ilo = stack[top, 0]
            ihi = stack[top, 1]
            slo = stack[top, 2]
            shi = stack[top, 3]
            if ilo > ihi:
                continue
            mid = (ilo + ihi) // 2
            hi_s = mid if mid < shi else shi
            best = np.inf
            argbest = slo
            for s in range(slo, hi_s + 1):
                sw = W[mid + 1] - W[s]
                sx = WX[mid + 1] - WX[s]
                sxx = WX2[mid + 1] - WX2[s]
                c = sxx - sx * sx / sw
                if c < 0.0:
                    c = 0.0
                v = prev[s - 1] + c
                if v < best:
                    best = v
                    argbest = s
            cur[mid] = best
            split[j, mid] = argbest
            stack[top, 0] = ilo
            stack[top, 1] = mid - 1
            stack[top, 2] = slo
            stack[top, 3] = argbest
            top += 1
            stack[top, 0] = mid + 1
            stack[top, 1] = ihi
            stack[top, 2] = argbest
            stack[top, 3] = shi
            top += 1
        for i in range(A):
            prev[i] = cur[i]
    return prev, split


def _reference_layers(W, WX, WX2, n):
    """Plain O(n A^2) DP, vectorized per right endpoint.  Reference
    implementation for differential testing of the divide-and-conquer path;
    identical tie-breaking (first minimum wins)."""
    A = W.shape[0] - 1
    cur = WX2[1:] - WX2[0] - (WX[1:] - WX[0]) ** 2 / (W[1:] - W[0])
    np.maximum(cur, 0.0, out=cur)
    split = np.zeros((n + 1, A), dtype=np.int64)
    for j in range(2, n + 1):
        prev = cur
        cur = np.zeros(A)
        split[j, : j - 1] = np.arange(min(j - 1, A))
        for i in range(j - 1, A):
            s = np.arange(j - 1, i + 1)
            sw = W[i + 1] - W[s]
            sx = WX[i + 1] - WX[s]
            sxx = WX2[i + 1] - WX2[s]
            costs = np.maximum(sxx - sx * sx / sw, 0.0)
            vals = prev[s - 1] + costs
            a = int(np.argmin(vals))
            cur[i] = vals[a]
            split[j, i] = j - 1 + a
    return cur, split


def dp_optimal_quantizer(dm: DiscreteMeasure, n: int, method: str = "dac") -> OracleResult:
    """Exact global optimum of the discrete measure with at most n points.

    ``method="dac"`` is the default divide-and-conquer evaluation;
    ``method="reference"`` is the plain quadratic DP kept for differential
    testing.  Both produce identical results.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    A = dm.size
    pos = dm.positions
    w = dm.weights
    if n >= A:
        return OracleResult(tuple(float(x) for x in pos), 0.0, 0)
    W = np.zeros(A + 1)
    WX = np.zeros(A + 1)
    WX2 = np.zeros(A + 1)
    np.cumsum(w, out=W[1:])
    np.cumsum(w * pos, out=WX[1:])
    np.cumsum(w * pos * pos, out=WX2[1:])
    if method == "dac":
        if _HAVE_NUMBA:
            last, split = _dac_layers(W, WX, WX2, n)
        else:
            last, split = _reference_layers(W, WX, WX2, n)
    elif method == "reference":
        last, split = _reference_layers(W, WX, WX2, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    error = float(last[A - 1])
    points = []
    end = A - 1
    for j in range(n, 1, -1):
        s = int(split[j, end])
        points.append(float((WX[end + 1] - WX[s]) / (W[end + 1] - W[s])))
        end = s - 1
    points.append(float((WX[end + 1] - WX[0]) / (W[end + 1] - W[0])))
    points.reverse()
    return OracleResult(tuple(points), error, 0)


# ---------------------------------------------------------------------------
# Lloyd iteration on the continuous measure
# ---------------------------------------------------------------------------

def lloyd(
    mu: MixedUniform,
    init: list[float] | tuple[float, ...],
    tol: float = 1e-13,
    max_iter: int = 10_000,
) -> OracleResult:
    """Midpoint/conditional-mean alternation from a starting codebook.

    Returns a fixed point satisfying the necessary optimality conditions; it
    may be a local optimum only, so callers must never treat it as ground
    truth.  Raises ``EmptyCellError`` when an iteration produces a massless
    cell (bad initialization) and ``ConvergenceError`` at the cap.
    """
    pts = sorted(float(x) for x in init)
    if len(pts) != len(set(pts)):
        raise ValueError("initial points must be distinct")
    if pts[0] < mu.support_lo or pts[-1] > mu.support_hi:
        raise ValueError("initial points must lie inside the support hull")
    lo, hi = mu.support_lo, mu.support_hi
    n = len(pts)
    moved = math.inf
    for it in range(1, max_iter + 1):
        new = []
        left = lo
        for i in range(n):
            right = 0.5 * (pts[i] + pts[i + 1]) if i + 1 < n else hi
            try:
                new.append(conditional_mean(mu, left, right))
            except (ZeroMassError, ValueError):
                raise EmptyCellError(
                    f"cell [{left}, {right}] around point {pts[i]} carries no mass"
                ) from None
            left = right
        moved = max(abs(a - b) for a, b in zip(new, pts))
        pts = new
        if moved < tol:
            return OracleResult(tuple(pts), codebook_distortion(mu, pts), it)
    if moved > 1e-10:
        raise ConvergenceError(f"lloyd still moving {moved:.2e} after {max_iter} iterations")
    return OracleResult(tuple(pts), codebook_distortion(mu, pts), max_iter)
