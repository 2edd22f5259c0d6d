"""Named measure families used by the CLI and the regression suite.

Each family is parameterized by the left-piece weight p in (0, 1):

* ``connected-p``: unit intervals [0,1] and [1,2], touching at 1.
* ``gapped-thirds-p``: [0, 1/3] and [2/3, 1], gap of width 1/3.
* ``gapped-sevenths-p``: [0, 7/15] and [8/15, 1], gap of width 1/15.
"""

from __future__ import annotations

from .measure import MixedUniform, make_mixed_uniform


def _connected(p: float) -> MixedUniform:
    return make_mixed_uniform([(0.0, 1.0, p), (1.0, 2.0, 1.0 - p)])


def _gapped_thirds(p: float) -> MixedUniform:
    return make_mixed_uniform([(0.0, 1.0 / 3.0, p), (2.0 / 3.0, 1.0, 1.0 - p)])


def _gapped_sevenths(p: float) -> MixedUniform:
    return make_mixed_uniform([(0.0, 7.0 / 15.0, p), (8.0 / 15.0, 1.0, 1.0 - p)])


PRESET_FAMILIES = {
    "connected-p": _connected,
    "gapped-thirds-p": _gapped_thirds,
    "gapped-sevenths-p": _gapped_sevenths,
}


def preset_measure(family: str, p: float) -> MixedUniform:
    try:
        builder = PRESET_FAMILIES[family]
    except KeyError:
        known = ", ".join(sorted(PRESET_FAMILIES))
        raise ValueError(f"unknown preset family {family!r}; known: {known}") from None
    if not 0.0 < p < 1.0:
        raise ValueError(f"preset weight must lie strictly in (0, 1), got {p}")
    return builder(float(p))
