"""Estimator-style wrappers around the scale and policy layers.

``fit`` takes a :class:`RiskModel` in place of a design matrix; ``transform``
and ``predict`` take surplus levels.  Hyper-parameters are plain constructor
arguments so ``get_params``/``set_params``/``clone`` behave as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .approx import ApproxKind, fit_exponential_model
from .claims import RiskModel
from .errors import ValidationError
from .policy import Method, PolicyParams, optimize, value_function
from .scale import build_scale_basis, de_finetti_barrier

__all__ = ["DividendOptimizer", "ScaleFunction"]


def _check_model(model) -> RiskModel:
    if not isinstance(model, RiskModel):
        raise ValidationError(f"expected a RiskModel, got {type(model).__name__}")
    return model


def _check_levels(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim > 1:
        raise ValidationError(f"expected a 1-d array of surplus levels, got shape {arr.shape}")
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("surplus levels must be finite")
    return arr


class ScaleFunction(TransformerMixin, BaseEstimator):
    """q-scale function of a risk model, optionally of an exponential surrogate.

    Parameters
    ----------
    q : float
        Discount rate (> 0).
    approximation : {None, "naive", "renyi", "de-vylder"}
        Replace the claims by an exponential surrogate before building.
    x_max : float or None
        Search horizon for the de Finetti barrier (default ``5 / Phi_q``).
    """

    columns = ("W", "dW", "d2W", "Z", "C")

    def __init__(self, q=0.1, approximation=None, x_max=None):
        self.q = q
        self.approximation = approximation
        self.x_max = x_max

    def fit(self, X, y=None):
        model = _check_model(X)
        if self.approximation is not None:
            model = fit_exponential_model(model, ApproxKind(self.approximation))
        self.model_ = model
        self.basis_ = build_scale_basis(model, float(self.q))
        self.phi_ = self.basis_.phi
        self.roots_ = np.array(self.basis_.roots)
        self.coefficients_ = np.array(self.basis_.coefficients)
        self.b_definetti_ = de_finetti_barrier(self.basis_, self.x_max)
        return self

    def transform(self, X):
        """Columns ``W, W', W'', Z, C`` at the surplus levels ``X``."""
        check_is_fitted(self, "basis_")
        x = _check_levels(X)
        B = self.basis_
        return np.column_stack([B.W(x), B.W(x, 1), B.W(x, 2), B.Z(x), B.C(x)])


class DividendOptimizer(BaseEstimator):
    """Optimal ``(-a, 0, b)`` dividend and capital-injection policy.

    Parameters
    ----------
    q, k, P : float
        Discount rate, proportional injection cost and bankruptcy penalty.
    method : {"auto", "exact-exponential", "matrix", "expo-pure", "expo-ci"}
        Optimizer; ``"auto"`` uses the exact path for the claim law.
    """

    def __init__(self, q=0.1, k=1.5, P=0.0, method="auto"):
        self.q = q
        self.k = k
        self.P = P
        self.method = method

    def fit(self, X, y=None):
        model = _check_model(X)
        if self.method != "auto":
            Method(self.method)
        self.params_ = PolicyParams(float(self.q), float(self.k), float(self.P))
        sol = optimize(model, self.params_, self.method)
        self.solution_ = sol
        self.a_star_ = sol.a_star
        self.b_star_ = sol.b_star
        self.J0_ = sol.J0
        self.regime_ = sol.regime
        return self

    def predict(self, X):
        """Value of the fitted policy at surplus levels ``X``."""
        check_is_fitted(self, "solution_")
        x = _check_levels(X)
        sol = self.solution_
        return value_function(sol, sol.ingredients, self.params_, x)
