"""Exception hierarchy for mixquant.

Input-contract violations double as ValueError so callers that only know the
standard library still catch them.
"""


class MixQuantError(Exception):
    """Base class for every mixquant-specific error."""


class DegenerateSegmentError(MixQuantError, ValueError):
    """A segment has lo >= hi or a non-finite endpoint."""


class OverlapError(MixQuantError, ValueError):
    """Two segment interiors intersect."""


class WeightSumError(MixQuantError, ValueError):
    """Segment weights do not sum to one within tolerance."""


class ZeroMassError(MixQuantError, ValueError):
    """A queried interval carries no probability mass."""


class GapError(MixQuantError, ValueError):
    """The operation needs two segments separated by a positive gap."""


class AllocationRangeError(MixQuantError, ValueError):
    """A codepoint split (k, m) is outside the admissible range."""


class InfeasibleError(MixQuantError):
    """No structural case admits a valid configuration."""


class ConvergenceError(MixQuantError):
    """Fixed-point iteration hit its cap while still moving."""


class EmptyCellError(MixQuantError):
    """An iteration produced a Voronoi cell with zero mass."""


class ScanCapError(MixQuantError, ValueError):
    """Requested exhaustive scan exceeds the configured cap."""
