"""scikit-learn style estimator facade over the interval lasso."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin

from .interval import Interval
from .lasso import LassoDataset, fit as lasso_fit, hypothesis, tuning_parameter
from .solver import SolverConfig, harmonic, shifted

__all__ = ["IntervalLassoRegressor"]


def _as_interval_matrix(X, name: str) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2d, got shape {X.shape}")
    if X.shape[1] < 2 or X.shape[1] % 2 != 0:
        raise ValueError(
            f"{name} must have an even number of columns (lo/hi pairs), got {X.shape[1]}"
        )
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite values")
    lows = X[:, 0::2]
    highs = X[:, 1::2]
    if np.any(lows > highs):
        raise ValueError(f"{name} has a lower endpoint above its upper endpoint")
    return X


class IntervalLassoRegressor(BaseEstimator, RegressorMixin):
    """l1-penalized regression on interval-valued data.

    Rows of X pack each interval feature as adjacent (lo, hi) columns, so an
    l-feature problem has 2l columns; y has two columns (response lo, hi).
    The penalty itself is an interval [l_lo, l_hi]. Training runs the
    dominance-archive subgradient solver and keeps the efficient iterate
    with the best scalarized error under weight ``w``.

    Parameters mirror the reference configuration for the bundled demo
    dataset: a shifted step schedule 7 / (k + 100000) for 10000 iterations.
    """

    def __init__(
        self,
        l_lo: float = 0.03,
        l_hi: float = 0.06,
        w: float = 0.0,
        schedule: str = "shifted",
        step_c: float = 7.0,
        step_s: float = 100000.0,
        iters: int = 10000,
        init=None,
    ):
        self.l_lo = l_lo
        self.l_hi = l_hi
        self.w = w
        self.schedule = schedule
        self.step_c = step_c
        self.step_s = step_s
        self.iters = iters
        self.init = init

    def _schedule(self):
        if self.schedule == "harmonic":
            return harmonic(self.step_c)
        if self.schedule == "shifted":
            return shifted(self.step_c, self.step_s)
        raise ValueError(
            f"schedule must be 'harmonic' or 'shifted', got {self.schedule!r}"
        )

    def fit(self, X, y):
        X = _as_interval_matrix(X, "X")
        y = np.asarray(y, dtype=float)
        if y.ndim != 2 or y.shape[1] != 2:
            raise ValueError(f"y must have shape (n_samples, 2), got {y.shape}")
        if not np.all(np.isfinite(y)):
            raise ValueError("y contains non-finite values")
        if np.any(y[:, 0] > y[:, 1]):
            raise ValueError("y has a lower endpoint above its upper endpoint")
        if X.shape[0] != y.shape[0]:
            raise ValueError(
                f"X and y disagree on sample count: {X.shape[0]} vs {y.shape[0]}"
            )
        n_features = X.shape[1] // 2
        samples = []
        for row, (lo, hi) in zip(X, y):
            features = tuple(
                Interval(row[2 * i], row[2 * i + 1]) for i in range(n_features)
            )
            samples.append((features, Interval(lo, hi)))
        dataset = LassoDataset(samples)

        if self.init is None:
            x0 = (0.0,) * n_features
        else:
            x0 = tuple(float(v) for v in self.init)
            if len(x0) != n_features:
                raise ValueError(
                    f"init has length {len(x0)}, expected {n_features}"
                )
        if not isinstance(self.iters, numbers.Integral) or self.iters < 0:
            raise ValueError(f"iters must be a nonnegative integer, got {self.iters!r}")

        config = SolverConfig(
            w=float(self.w),
            max_iter=int(self.iters),
            x0=x0,
            schedule=self._schedule(),
        )
        penalty = tuning_parameter(float(self.l_lo), float(self.l_hi))
        result = lasso_fit(dataset, penalty, config)

        self.coef_ = np.asarray(result.beta_hat, dtype=float)
        self.efficient_set_ = [np.asarray(p, dtype=float) for p in result.efficient_set]
        self.nondominated_set_ = [
            np.array([v.lo, v.hi], dtype=float) for v in result.nondominated_set
        ]
        self.n_features_in_ = 2 * n_features
        self.fit_result_ = result
        return self

    def predict(self, X):
        if not hasattr(self, "coef_"):
            raise AttributeError("this IntervalLassoRegressor is not fitted yet")
        X = _as_interval_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} columns, estimator was fitted with {self.n_features_in_}"
            )
        n_features = X.shape[1] // 2
        beta = tuple(float(b) for b in self.coef_)
        out = np.empty((X.shape[0], 2), dtype=float)
        for k, row in enumerate(X):
            features = tuple(
                Interval(row[2 * i], row[2 * i + 1]) for i in range(n_features)
            )
            pred = hypothesis(features, beta)
            out[k, 0] = pred.lo
            out[k, 1] = pred.hi
        return out
