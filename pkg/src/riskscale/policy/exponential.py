"""Closed-form machinery for exponential claims.

With claim rate ``mu`` and the curves ``gamma = 1/C'``, ``theta = W_q/C'``
and ``j = gamma'/(q theta')`` of :class:`PolicyIngredients`:

* the smooth-fit equation ``J0(a, b) = k a - P`` is solved by the Lambert
  function, ``mu a(b) = -h + L0(e^h / (q theta))`` with
  ``h = 1/(q theta) - (mu/k)(gamma/(q theta) + P)``;
* critical barriers are the roots of
  ``eta(b) = gamma/theta - q j - (k/(mu theta)) F((j + P)/k)`` on ``(0, b_bar]``,
  where ``F`` is the claim cdf ``1 - e^{-mu y}`` continued to all real ``y``;
* at such a root ``a* = (j(b*) + P)/k``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..claims import Exponential, RiskModel
from ..errors import InfeasibleError, UnsupportedError
from ..lambertw import lambert_w0, lambert_w0_exp
from ..scale import b_bar, build_scale_basis
from .ingredients import PolicyIngredients, j0_value
from .types import Candidate, Method, PolicyParams, PolicySolution, Regime, check_params

__all__ = [
    "KCriticalUndefined",
    "a_of_b",
    "a_of_b_zero",
    "delta_kp",
    "eta",
    "eta_at",
    "j_at_zero",
    "k_critical",
    "optimize_exponential",
    "penalty_lower_bound",
    "slg_limit",
    "solve_P_of_b",
]

_ETA_SCAN = 2000


class KCriticalUndefined(InfeasibleError):
    """``k_c`` does not exist for this penalty; ``p_lower`` is the threshold it must exceed."""

    def __init__(self, message: str, p_lower: float):
        super().__init__(message)
        self.p_lower = p_lower


def _rate(ingredients_or_model) -> float:
    model = getattr(ingredients_or_model, "model", ingredients_or_model)
    if not isinstance(model.claims, Exponential):
        raise UnsupportedError("closed-form policy formulas require exponential claims")
    return model.claims.rate


def a_of_b(ingredients: PolicyIngredients, params: PolicyParams, b: float) -> float:
    """Injection depth solving the smooth-fit equation at barrier ``b``."""
    mu = _rate(ingredients)
    qth = params.q * ingredients.theta(b)
    h = 1.0 / qth - (mu / params.k) * (ingredients.gamma(b) / qth + params.P)
    a = (-h + lambert_w0_exp(h - math.log(qth))) / mu
    if not a > 0:
        raise InfeasibleError(f"smooth-fit depth a({b!r}) = {a!r} is not positive")
    return a


def a_of_b_zero(model: RiskModel, params: PolicyParams) -> float:
    """Closed form of ``a(0)``: ``mu a = -g + L0((lam/q) e^g)``, ``g = lam/q - mu c~/(k q)``."""
    mu, lam, q = _rate(model), model.lam, params.q
    g = lam / q - mu * params.effective_premium(model) / (params.k * q)
    return (-g + lambert_w0_exp(g + math.log(lam / q))) / mu


def eta_at(ingredients: PolicyIngredients, params: PolicyParams, b: float, a: float) -> float:
    """``gamma/theta - (k/(mu theta)) F(a) - q (k a - P)``; zero on the smooth-fit curve."""
    mu = _rate(ingredients)
    th = ingredients.theta(b)
    F = -math.expm1(-mu * a)
    return ingredients.gamma(b) / th - params.k / (mu * th) * F - params.q * (params.k * a - params.P)


def eta(ingredients: PolicyIngredients, params: PolicyParams, b: float) -> float:
    """Barrier optimality function; its roots on ``(0, b_bar]`` are critical barriers."""
    return eta_at(ingredients, params, b, ingredients.s(b, params))


def j_at_zero(model: RiskModel, q: float) -> float:
    """``j(0) = (c mu - (q + lam)) / (mu q)``."""
    mu = _rate(model)
    return (model.c * mu - (q + model.lam)) / (mu * q)


def delta_kp(model: RiskModel, params: PolicyParams) -> float:
    """Sign indicator at ``b = 0``; negative exactly when ``k > k_c``."""
    mu, lam, q, k = _rate(model), model.lam, params.q, params.k
    ct = params.effective_premium(model)
    return (lam + q - lam * k * -math.expm1(-(ct * mu - lam - q) / (q * k))) / mu


def penalty_lower_bound(model: RiskModel, q: float) -> float:
    """``P_l = (( lam + q)^2 / (mu lam) - c) / q``; ``k_c`` exists iff ``P > P_l``."""
    mu, lam = _rate(model), model.lam
    return ((lam + q) ** 2 / (mu * lam) - model.c) / q


def k_critical(model: RiskModel, q: float, P: float) -> float:
    """Critical injection cost ``k_c`` separating the two regimes at ``b = 0``."""
    mu, lam = _rate(model), model.lam
    ct = model.c + q * P
    f = lam / (q + lam) * (ct * mu - (lam + q)) / q
    if not f > 1:
        raise KCriticalUndefined(
            f"k_c undefined: f={f:.6g} <= 1 (needs P > {penalty_lower_bound(model, q):.6g})",
            penalty_lower_bound(model, q),
        )
    return (q + lam) / lam * f / (f + lambert_w0(-f * math.exp(-f)))


def solve_P_of_b(ingredients: PolicyIngredients, params: PolicyParams, b: float) -> float:
    """Penalty for which ``b`` is a root of ``eta`` (``params.P`` is ignored)."""
    mu, k, q = _rate(ingredients), params.k, params.q
    j = ingredients.j(b)
    arg = 1.0 + (q * ingredients.theta(b) * j - ingredients.gamma(b)) / (k / mu)
    if not arg > 0:
        raise InfeasibleError(f"no penalty makes b={b!r} critical (log argument {arg:.3e})")
    return -(k / mu) * math.log(arg) - j


def slg_limit(ingredients: PolicyIngredients, params: PolicyParams, b: float) -> float:
    """Large-penalty limit ``(1 - k C'(b)/mu) / (q W_q(b))`` of ``J0(a(b), b)``."""
    mu = _rate(ingredients)
    basis = ingredients.basis
    return (1.0 - params.k * basis.C(b, 1) / mu) / (params.q * basis.W(b))


def _eta_roots(ingredients: PolicyIngredients, params: PolicyParams, upper: float) -> list[float]:
    def f(b):
        return eta(ingredients, params, b)

    grid = np.linspace(0.0, upper, _ETA_SCAN + 1)[1:]
    vals = np.array([f(b) for b in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-15, maxiter=500))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def optimize_exponential(
    model: RiskModel,
    params: PolicyParams,
    ingredients: PolicyIngredients | None = None,
    method: Method = Method.EXACT_EXPONENTIAL,
) -> PolicySolution:
    """Best ``(-a, 0, b)`` policy among ``b = 0`` and every root of ``eta``."""
    _rate(model)
    check_params(model, params)
    if ingredients is None:
        ingredients = PolicyIngredients(build_scale_basis(model, params.q))
    a0 = a_of_b_zero(model, params)
    candidates = [Candidate(a0, 0.0, j0_value(ingredients, params, a0, 0.0))]
    bb = b_bar(ingredients.basis)
    if bb is not None and bb > 0:
        for b in _eta_roots(ingredients, params, bb):
            a = a_of_b(ingredients, params, b)
            candidates.append(Candidate(a, b, j0_value(ingredients, params, a, b)))
    best = max(candidates, key=lambda c: c.J0)
    regime = Regime.POSITIVE_BARRIER if best.b > 0 else Regime.ZERO_BARRIER
    diagnostics = {
        "b_bar": bb,
        "smooth_fit_residual": abs(best.J0 - (params.k * best.a - params.P)),
    }
    if best.b > 0:
        diagnostics["eta"] = eta(ingredients, params, best.b)
    return PolicySolution(
        a_star=best.a,
        b_star=best.b,
        J0=best.J0,
        regime=regime,
        candidates=tuple(candidates),
        method=method,
        params=params,
        ingredients=ingredients,
        diagnostics=diagnostics,
    )
