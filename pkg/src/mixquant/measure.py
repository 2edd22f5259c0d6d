"""Mixed uniform measures on unions of closed line segments.

A :class:`MixedUniform` is a probability measure with constant density on each
of finitely many closed intervals with pairwise disjoint interiors.  Touching
endpoints are allowed and the pieces are deliberately *not* merged, so a
connected support such as [0,1] u [1,2] keeps its two-piece structure.

All moment and distortion integrals are evaluated in closed form (polynomial
antiderivatives per overlapped segment); there is no quadrature in this
module.  Every function is pure and every value immutable, so instances are
safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateSegmentError,
    OverlapError,
    WeightSumError,
    ZeroMassError,
)

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Segment:
    """One uniform piece: the interval [lo, hi] carrying ``weight`` total mass.

    The density under the full measure is ``weight / (hi - lo)``.
    """

    lo: float
    hi: float
    weight: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DegenerateSegmentError(f"segment endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DegenerateSegmentError(f"segment needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (0.0 < self.weight <= 1.0 and math.isfinite(self.weight)):
            raise DegenerateSegmentError(f"segment weight must lie in (0, 1], got {self.weight}")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def density(self) -> float:
        """Constant density of the full measure on this segment."""
        return self.weight / (self.hi - self.lo)


@dataclass(frozen=True)
class MixedUniform:
    """A weighted union of uniform segments, sorted left to right.

    Invariants (enforced at construction): segments are sorted by ``lo``,
    interiors are pairwise disjoint, and the weights sum to one within
    ``WEIGHT_SUM_TOL``.
    """

    segments: tuple[Segment, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise DegenerateSegmentError("a measure needs at least one segment")
        ordered = tuple(sorted(self.segments, key=lambda s: (s.lo, s.hi)))
        object.__setattr__(self, "segments", ordered)
        for a, b in zip(ordered, ordered[1:]):
            if b.lo < a.hi - 0.0:
                raise OverlapError(
                    f"segment interiors overlap: [{a.lo}, {a.hi}] and [{b.lo}, {b.hi}]"
                )
        total = math.fsum(s.weight for s in ordered)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumError(f"segment weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")

    @property
    def support_lo(self) -> float:
        return self.segments[0].lo

    @property
    def support_hi(self) -> float:
        return self.segments[-1].hi

    def mass(self, lo: float, hi: float) -> float:
        """Probability of [lo, hi]."""
        total = 0.0
        for s in self.segments:
            a = lo if lo > s.lo else s.lo
            b = hi if hi < s.hi else s.hi
            if b > a:
                total += s.density * (b - a)
        return total


def make_mixed_uniform(
    segments: Iterable[tuple[float, float, float]] | Iterable[Segment],
    *,
    normalize: bool = False,
) -> MixedUniform:
    """Build a validated :class:`MixedUniform` from ``(lo, hi, weight)`` triples.

    With ``normalize=True`` the weights are rescaled to sum to one; by default
    inputs are taken literally and a wrong total raises ``WeightSumError``.
    """
    triples = [(s.lo, s.hi, s.weight) if isinstance(s, Segment) else tuple(s) for s in segments]
    if normalize:
        total = math.fsum(w for _, _, w in triples)
        if total <= 0:
            raise WeightSumError("cannot normalize weights with non-positive total")
        triples = [(lo, hi, w / total) for lo, hi, w in triples]
    return MixedUniform(tuple(Segment(*t) for t in triples))


def mean(mu: MixedUniform) -> float:
    """First moment: sum of weight * midpoint over segments."""
    return math.fsum(s.weight * 0.5 * (s.lo + s.hi) for s in mu.segments)


def second_moment(mu: MixedUniform) -> float:
    return math.fsum(s.weight * (s.lo * s.lo + s.lo * s.hi + s.hi * s.hi) / 3.0 for s in mu.segments)


def variance(mu: MixedUniform) -> float:
    """Central second moment.  Equals the one-point quantization error."""
    m = mean(mu)
    return second_moment(mu) - m * m


def conditional_mean(mu: MixedUniform, lo: float, hi: float) -> float:
    """E(X | X in [lo, hi]) in closed form.

    Raises ``ZeroMassError`` when [lo, hi] carries no mass; a Voronoi cell
    with zero mass cannot occur in an optimal configuration, so callers treat
    this as a structural signal rather than a numeric accident.
    """
    if not lo < hi:
        raise ValueError(f"conditional_mean needs lo < hi, got [{lo}, {hi}]")
    m = 0.0
    m1 = 0.0
    for s in mu.segments:
        a = lo if lo > s.lo else s.lo
        b = hi if hi < s.hi else s.hi
        if b > a:
            t = s.density
            m += t * (b - a)
            m1 += t * 0.5 * (b * b - a * a)
    if m <= 0.0:
        raise ZeroMassError(f"interval [{lo}, {hi}] carries no mass")
    return m1 / m


def interval_distortion(mu: MixedUniform, lo: float, hi: float, c: float) -> float:
    """Integral of (x - c)^2 over [lo, hi] against the measure.

    Exact cubic closed form per overlapped segment; returns 0.0 when the
    interval carries no mass.
    """
    if lo > hi:
        raise ValueError(f"interval_distortion needs lo <= hi, got [{lo}, {hi}]")
    total = 0.0
    for s in mu.segments:
        a = lo if lo > s.lo else s.lo
        b = hi if hi < s.hi else s.hi
        if b > a:
            da = a - c
            db = b - c
            total += s.density * (db * db * db - da * da * da) / 3.0
    return total


def codebook_distortion(mu: MixedUniform, points: Sequence[float]) -> float:
    """Distortion of an arbitrary codebook under the measure.

    Cells are the Voronoi intervals induced by midpoints of adjacent points,
    widened to the support hull at the ends.  This is the measure-level
    re-integration used to score every solver result, independent of any
    iteration state.
    """
    pts = sorted(points)
    if not pts:
        raise ValueError("codebook must contain at least one point")
    if len(pts) > 32:
        return _codebook_distortion_vec(mu, pts)
    lo = min(mu.support_lo, pts[0])
    hi = max(mu.support_hi, pts[-1])
    total = 0.0
    left = lo
    for i, p in enumerate(pts):
        right = 0.5 * (p + pts[i + 1]) if i + 1 < len(pts) else hi
        total += interval_distortion(mu, left, right, p)
        left = right
    return total


def _codebook_distortion_vec(mu: MixedUniform, pts: list[float]) -> float:
    p = np.asarray(pts)
    bounds = np.empty(p.size + 1)
    bounds[0] = min(mu.support_lo, pts[0])
    bounds[-1] = max(mu.support_hi, pts[-1])
    bounds[1:-1] = 0.5 * (p[1:] + p[:-1])
    total = 0.0
    for s in mu.segments:
        a = np.maximum(bounds[:-1], s.lo)
        b = np.minimum(bounds[1:], s.hi)
        da = a - p
        db = b - p
        total += s.density * float(np.sum(np.where(b > a, db**3 - da**3, 0.0))) / 3.0
    return total


def translated(mu: MixedUniform, shift: float) -> MixedUniform:
    """The measure with every segment shifted by ``shift``."""
    return MixedUniform(tuple(Segment(s.lo + shift, s.hi + shift, s.weight) for s in mu.segments))


def scaled(mu: MixedUniform, scale: float, shift: float = 0.0) -> MixedUniform:
    """Image of the measure under x -> scale * x + shift with scale > 0."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    return MixedUniform(
        tuple(Segment(scale * s.lo + shift, scale * s.hi + shift, s.weight) for s in mu.segments)
    )


# ---------------------------------------------------------------------------
# Distribution spec files
#
# JSON schema (exact field names):
#   {"segments": [{"lo": 0.0, "hi": 0.5, "weight": 0.25}, ...]}
# ---------------------------------------------------------------------------

def from_spec_dict(spec: dict) -> MixedUniform:
    try:
        raw = spec["segments"]
    except (KeyError, TypeError):
        raise WeightSumError("distribution spec must be an object with a 'segments' list") from None
    if not isinstance(raw, list) or not raw:
        raise WeightSumError("'segments' must be a non-empty list")
    triples = []
    for entry in raw:
        try:
            triples.append((float(entry["lo"]), float(entry["hi"]), float(entry["weight"])))
        except (KeyError, TypeError, ValueError):
            raise DegenerateSegmentError(f"bad segment entry {entry!r}: need numeric lo/hi/weight") from None
    return make_mixed_uniform(triples)


def to_spec_dict(mu: MixedUniform) -> dict:
    return {"segments": [{"lo": s.lo, "hi": s.hi, "weight": s.weight} for s in mu.segments]}


def load_spec(path: str | Path) -> MixedUniform:
    """Read a distribution spec file (JSON) and validate it."""
    with open(path, "r", encoding="utf-8") as fh:
        return from_spec_dict(json.load(fh))


def dump_spec(mu: MixedUniform, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_spec_dict(mu), fh, indent=2)
        fh.write("\n")
