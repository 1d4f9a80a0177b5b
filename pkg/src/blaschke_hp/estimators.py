"""scikit-learn style wrappers and shared input validation.

``BlaschkeFunctionals`` turns a list of zero lists into a feature matrix of
functionals, and ``ScalingExponentRegressor`` fits a power law, so sweeps
can be written as ordinary pipelines.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .core import ZeroList
from .exceptions import ParameterError
from .lab import FUNCTIONALS, fit_slope, single_functional
from .norms import QuadratureConfig


def validate_p(p, *, lo: float = 0.0, hi: float = 1.0) -> float:
    p = float(p)
    if not lo < p < hi:
        raise ParameterError(f"p must lie in ({lo:g}, {hi:g}), got {p!r}")
    return p


def validate_alpha(alpha) -> float:
    alpha = float(alpha)
    if not (alpha > 1.0 and math.isfinite(alpha)):
        raise ParameterError(f"alpha must be > 1, got {alpha!r}")
    return alpha


def validate_c(c) -> float:
    c = float(c)
    if not 0.0 < c < 1.0:
        raise ParameterError(f"c must lie in (0, 1), got {c!r}")
    return c


def as_zero_list(x) -> ZeroList:
    """Accept a ZeroList, its JSON dict form, or a sequence of complex points."""
    if isinstance(x, ZeroList):
        return x
    if isinstance(x, dict):
        return ZeroList.from_dict(x)
    pts = np.asarray(x, dtype=complex).ravel()
    return ZeroList.from_points(pts) if pts.size else ZeroList.empty()


def check_zero_lists(X) -> list[ZeroList]:
    if isinstance(X, (ZeroList, dict)):
        raise ParameterError("expected a list of zero lists, got a single one")
    out = [as_zero_list(x) for x in X]
    if not out:
        raise ParameterError("empty input")
    return out


class BlaschkeFunctionals(TransformerMixin, BaseEstimator):
    """Map zero lists to rows of functional values.

    Parameters
    ----------
    functionals : sequence of str
        Names from :data:`blaschke_hp.lab.FUNCTIONALS`.
    p, alpha, c : float
        Exponent, Stolz aperture and sublevel height.
    config : QuadratureConfig, optional
        Defaults to a degree-dependent configuration per sample.
    """

    def __init__(self, functionals: Sequence[str] = ("hp_norm", "sublevel_Ic", "cone_norm"),
                 p: float = 0.75, alpha: float = 2.0, c: float = 0.5,
                 config: Optional[QuadratureConfig] = None):
        self.functionals = functionals
        self.p = p
        self.alpha = alpha
        self.c = c
        self.config = config

    def fit(self, X, y=None):
        validate_p(self.p)
        validate_alpha(self.alpha)
        validate_c(self.c)
        unknown = [f for f in self.functionals if f not in FUNCTIONALS]
        if unknown:
            raise ParameterError(f"unknown functionals {unknown}")
        check_zero_lists(X)
        self.feature_names_out_ = np.asarray(list(self.functionals), dtype=object)
        self.n_features_out_ = len(self.functionals)
        return self

    def transform(self, X):
        check_is_fitted(self, "feature_names_out_")
        rows = []
        for zl in check_zero_lists(X):
            rows.append([single_functional(zl, f, self.p, self.alpha, self.c, self.config)
                         for f in self.functionals])
        return np.asarray(rows, dtype=float)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_


class ScalingExponentRegressor(RegressorMixin, BaseEstimator):
    """Power law ``y = A x^k`` fitted by least squares in log-log coordinates.

    Attributes
    ----------
    coef_ : float
        The exponent ``k``.
    intercept_ : float
        ``log A``.
    """

    def __init__(self, min_points: int = 5, min_decades: float = 2.0):
        self.min_points = min_points
        self.min_decades = min_decades

    @staticmethod
    def _x(X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ParameterError("X must have a single column")
            X = X[:, 0]
        return X

    def fit(self, X, y):
        x = self._x(X)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape:
            raise ParameterError("X and y have different lengths")
        self.coef_ = fit_slope(x, y, min_points=self.min_points, min_decades=self.min_decades)
        self.intercept_ = float(np.mean(np.log(y)) - self.coef_ * np.mean(np.log(x)))
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        x = self._x(X)
        return np.exp(self.intercept_) * x ** self.coef_
