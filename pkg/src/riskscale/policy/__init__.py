"""Valuation and optimization of (-a, 0, b) dividend and capital-injection policies."""

from .exponential import (
    KCriticalUndefined,
    a_of_b,
    a_of_b_zero,
    delta_kp,
    eta,
    eta_at,
    j_at_zero,
    k_critical,
    optimize_exponential,
    penalty_lower_bound,
    slg_limit,
    solve_P_of_b,
)
from .ingredients import MatrixIngredients, PolicyIngredients, j0_matrix, j0_value, matrix_ingredients
from .methods import expo_ci, expo_pure, optimize, optimize_matrix
from .profile import a_of_b_numeric, optimize_profile
from .types import Candidate, Method, PolicyParams, PolicySolution, Regime, check_params

__all__ = [
    "Candidate",
    "KCriticalUndefined",
    "MatrixIngredients",
    "Method",
    "PolicyIngredients",
    "PolicyParams",
    "PolicySolution",
    "Regime",
    "a_of_b",
    "a_of_b_numeric",
    "a_of_b_zero",
    "check_params",
    "delta_kp",
    "eta",
    "eta_at",
    "expo_ci",
    "expo_pure",
    "j0_matrix",
    "j0_value",
    "j_at_zero",
    "k_critical",
    "matrix_ingredients",
    "optimize",
    "optimize_exponential",
    "optimize_matrix",
    "optimize_profile",
    "penalty_lower_bound",
    "slg_limit",
    "solve_P_of_b",
]

from .value import evaluate_policy, hjb_residual, value_function  # noqa: E402

__all__ += ["evaluate_policy", "hjb_residual", "value_function"]
