"""Policy optimizers for general claim laws.

* :func:`optimize_matrix` uses the exact matrix-exponential ingredients.
* :func:`expo_ci` keeps the exact scale function but evaluates injections and
  bankruptcy with the product-form ingredients ``Fbar(a) C(x)``.
* :func:`expo_pure` replaces the claims by an exponential law with the same
  mean and runs the closed-form optimizer on that surrogate.
"""

from __future__ import annotations

from ..approx import ApproxKind, fit_exponential_model
from ..claims import Exponential, RiskModel
from ..scale import build_scale_basis
from .exponential import optimize_exponential
from .ingredients import MatrixIngredients, PolicyIngredients
from .profile import optimize_profile
from .types import Method, PolicyParams, PolicySolution, check_params

__all__ = ["expo_ci", "expo_pure", "optimize", "optimize_matrix"]


def _search_cap(ingredients: PolicyIngredients) -> float:
    return ingredients.basis.x_max


def optimize_matrix(model: RiskModel, params: PolicyParams, n_grid: int = 400) -> PolicySolution:
    check_params(model, params)
    ing = MatrixIngredients(build_scale_basis(model, params.q))
    return optimize_profile(ing, params, _search_cap(ing), Method.MATRIX_EXACT, n_grid=n_grid)


def expo_ci(model: RiskModel, params: PolicyParams, n_grid: int = 400) -> PolicySolution:
    check_params(model, params)
    ing = PolicyIngredients(build_scale_basis(model, params.q))
    return optimize_profile(ing, params, _search_cap(ing), Method.EXPO_CI, n_grid=n_grid)


def expo_pure(model: RiskModel, params: PolicyParams) -> PolicySolution:
    check_params(model, params)
    surrogate = fit_exponential_model(model, ApproxKind.NAIVE)
    return optimize_exponential(surrogate, params, method=Method.EXPO_PURE)


def optimize(model: RiskModel, params: PolicyParams, method: Method | str = "auto") -> PolicySolution:
    """Dispatch by method name; ``"auto"`` picks the exact path for the claim law."""
    if method == "auto":
        method = Method.EXACT_EXPONENTIAL if isinstance(model.claims, Exponential) else Method.MATRIX_EXACT
    method = Method(method)
    if method is Method.EXACT_EXPONENTIAL:
        return optimize_exponential(model, params)
    if method is Method.MATRIX_EXACT:
        return optimize_matrix(model, params)
    if method is Method.EXPO_PURE:
        return expo_pure(model, params)
    return expo_ci(model, params)
