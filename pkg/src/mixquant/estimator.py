"""Scikit-learn style front end.

``OptimalMeansQuantizer`` wraps the analytic solvers behind the familiar
fit/transform/predict surface so the quantizer composes with pipelines and
model-selection tooling.  Two fitting modes:

* ``measure`` given: ``fit`` solves the analytic problem for that mixed
  uniform measure (any ``X`` passed is ignored, accepted only for pipeline
  compatibility).
* ``measure=None``: ``fit(X)`` runs the exact dynamic-programming 1-D
  k-means on the samples themselves.

After fitting, ``predict`` maps samples to cell indices and ``transform``
to the codepoint values.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import allocsearch, oracle
from .measure import MixedUniform, from_spec_dict, load_spec


def check_samples(X, name: str = "X") -> np.ndarray:
    """Validate samples as a finite 1-D float array; accepts (n,) or (n, 1)."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D or a single column, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


def _as_measure(measure) -> MixedUniform:
    if isinstance(measure, MixedUniform):
        return measure
    if isinstance(measure, dict):
        return from_spec_dict(measure)
    if isinstance(measure, (str, bytes)) or hasattr(measure, "__fspath__"):
        return load_spec(measure)
    raise TypeError(f"cannot interpret {type(measure).__name__} as a measure")


class OptimalMeansQuantizer(BaseEstimator, TransformerMixin):
    """Optimal scalar quantizer with ``n_codes`` codepoints.

    Parameters
    ----------
    n_codes : int, default=2
        Number of codepoints.
    measure : MixedUniform, dict, or path, optional
        Two-piece mixed uniform measure to quantize.  When omitted, ``fit``
        expects samples and solves the exact empirical problem instead.

    Attributes
    ----------
    codepoints_ : ndarray of shape (n_codes,)
        Sorted optimal codepoints.
    boundaries_ : ndarray of shape (n_codes - 1,)
        Cell boundaries (midpoints of adjacent codepoints).
    distortion_ : float
        Expected squared distance to the nearest codepoint.
    report_ : SolveReport or None
        Full solver report in measure mode, None in sample mode.
    """

    def __init__(self, n_codes: int = 2, measure=None):
        self.n_codes = n_codes
        self.measure = measure

    def fit(self, X=None, y=None):
        if not isinstance(self.n_codes, (int, np.integer)) or self.n_codes < 1:
            raise ValueError(f"n_codes must be a positive integer, got {self.n_codes!r}")
        if self.measure is not None:
            mu = _as_measure(self.measure)
            report = allocsearch.solve_n_means(mu, int(self.n_codes))
            self.codepoints_ = np.asarray(report.points)
            self.distortion_ = report.distortion
            self.report_ = report
        else:
            if X is None:
                raise ValueError("fit needs samples when no measure is configured")
            samples = np.sort(check_samples(X))
            positions, counts = np.unique(samples, return_counts=True)
            dm = oracle.DiscreteMeasure(positions, counts / counts.sum())
            res = oracle.dp_optimal_quantizer(dm, int(self.n_codes))
            self.codepoints_ = np.asarray(res.points)
            self.distortion_ = res.error
            self.report_ = None
        self.boundaries_ = 0.5 * (self.codepoints_[1:] + self.codepoints_[:-1])
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "codepoints_"):
            raise NotFittedError("this OptimalMeansQuantizer instance is not fitted yet")

    def predict(self, X) -> np.ndarray:
        """Index of the nearest codepoint for each sample."""
        self._check_fitted()
        arr = check_samples(X)
        return np.searchsorted(self.boundaries_, arr, side="right")

    def transform(self, X) -> np.ndarray:
        """Quantized values: each sample replaced by its nearest codepoint."""
        self._check_fitted()
        arr = np.asarray(X, dtype=float)
        codes = self.codepoints_[self.predict(X)]
        return codes.reshape(arr.shape)
