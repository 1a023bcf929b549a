"""Numerical optimizer over ``(a, b)`` for any ingredient flavour.

For fixed ``b`` the derivative of ``J0(a, b)`` in ``a`` has the sign of
``J0 - (k a - P)`` (the claim density enters only through a positive factor),
so each ``b`` has a unique best ``a(b)``: the root of the smooth-fit equation
``J0(a, b) = k a - P``, or ``a = 0`` when ``J0(0, b) <= -P``.  The search over
``(a, b)`` therefore reduces to maximizing the profile ``J0(a(b), b)`` over
``b``.  Critical barriers are the sign changes of the ``b``-derivative on a
grid, each refined by bracketed root finding.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..errors import InfeasibleError
from .ingredients import PolicyIngredients
from .types import Candidate, Method, PolicyParams, PolicySolution, Regime

__all__ = ["a_of_b_numeric", "optimize_profile"]

_MAX_DOUBLINGS = 200


def a_of_b_numeric(ingredients: PolicyIngredients, params: PolicyParams, b: float) -> tuple[float, float]:
    """``(a(b), J0(a(b), b))`` for the given barrier."""
    j0 = ingredients.j0_curve(params, b)
    k, P = params.k, params.P

    def g(a):
        return j0(a) - (k * a - P)

    g0 = g(0.0)
    if g0 <= 0:
        return 0.0, j0(0.0)
    hi = max(1.0, ingredients.claims.mean)
    for _ in range(_MAX_DOUBLINGS):
        if g(hi) < 0:
            break
        hi *= 2.0
    else:
        raise InfeasibleError(f"smooth-fit equation has no root for b={b!r}")
    a = brentq(g, 0.0, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    return a, k * a - P


def optimize_profile(
    ingredients: PolicyIngredients,
    params: PolicyParams,
    b_cap: float,
    method: Method,
    n_grid: int = 400,
) -> PolicySolution:
    """Maximize ``J0`` over ``a >= 0`` and ``b in [0, b_cap]``."""

    def stationarity(b):
        a, J = a_of_b_numeric(ingredients, params, b)
        return ingredients.b_stationarity(params, a, b, J)

    a0, J00 = a_of_b_numeric(ingredients, params, 0.0)
    candidates = [Candidate(a0, 0.0, J00)]
    if b_cap > 0:
        grid = np.linspace(0.0, b_cap, n_grid + 1)
        h = np.array([stationarity(b) for b in grid])
        # J0 increases while h < 0 and decreases once h > 0
        for i in range(n_grid):
            if h[i] < 0 <= h[i + 1]:
                if h[i + 1] == 0.0:
                    b = float(grid[i + 1])
                else:
                    b = brentq(stationarity, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-15, maxiter=500)
                a, J = a_of_b_numeric(ingredients, params, b)
                candidates.append(Candidate(a, b, J))
        if h[-1] < 0:
            a, J = a_of_b_numeric(ingredients, params, b_cap)
            candidates.append(Candidate(a, float(b_cap), J))
    best = max(candidates, key=lambda c: c.J0)
    regime = Regime.POSITIVE_BARRIER if best.b > 0 else Regime.ZERO_BARRIER
    diagnostics = {"b_cap": float(b_cap), "n_grid": n_grid}
    if best.a > 0:
        diagnostics["smooth_fit_residual"] = abs(best.J0 - (params.k * best.a - params.P))
    if best.b > 0 and math.isfinite(best.b):
        diagnostics["b_stationarity"] = ingredients.b_stationarity(params, best.a, best.b, best.J0)
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
