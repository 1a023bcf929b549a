"""Value function of a (-a, 0, b) policy and an HJB-residual check.

The value on the real line is

* ``V(b) + (x - b)`` above the barrier,
* ``G_a(x) + J0 S_a(x)`` on ``[0, b]``,
* ``k x + J0`` on ``[-a, 0)`` (capital is injected to return to zero),
* ``-P`` below ``-a`` (bankruptcy).
"""

from __future__ import annotations

import numpy as np

from ..claims import Exponential
from ..errors import UnsupportedError
from .ingredients import PolicyIngredients
from .types import Candidate, Method, PolicyParams, PolicySolution, Regime

__all__ = ["evaluate_policy", "hjb_residual", "value_function"]


def evaluate_policy(
    ingredients: PolicyIngredients,
    params: PolicyParams,
    a: float,
    b: float,
    method: Method = Method.EXACT_EXPONENTIAL,
) -> PolicySolution:
    """Solution record for an arbitrary (not necessarily optimal) ``(a, b)``."""
    J0 = ingredients.j0(params, a, b)
    return PolicySolution(
        a_star=float(a),
        b_star=float(b),
        J0=J0,
        regime=Regime.POSITIVE_BARRIER if b > 0 else Regime.ZERO_BARRIER,
        candidates=(Candidate(float(a), float(b), J0),),
        method=method,
        params=params,
        ingredients=ingredients,
    )


def _band_coefficient(solution: PolicySolution, ingredients: PolicyIngredients, params: PolicyParams):
    E, K = ingredients.tail(solution.a_star, params)
    return K + solution.J0 * E


def value_function(solution: PolicySolution, ingredients: PolicyIngredients, params: PolicyParams, x):
    """Evaluate the policy value at ``x`` (scalar or array)."""
    a, b, J0 = solution.a_star, solution.b_star, solution.J0
    basis = ingredients.basis
    alpha = _band_coefficient(solution, ingredients, params)

    def band(z):
        return float(ingredients.row(z) @ alpha) + J0 * basis.Z(z)

    vb = band(b)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xs)
    for i, v in enumerate(xs):
        if v > b:
            out[i] = vb + (v - b)
        elif v >= 0:
            out[i] = band(v)
        elif v >= -a:
            out[i] = params.k * v + J0
        else:
            out[i] = -params.P
    return float(out[0]) if np.ndim(x) == 0 else out


def _exp_sum(solution: PolicySolution, ingredients: PolicyIngredients, params: PolicyParams):
    # V(z) = K0 + sum_j K_j e^{gamma_j z} on [0, b] in product form
    basis = ingredients.basis
    alpha = float(_band_coefficient(solution, ingredients, params)[0])
    J0, q, c = solution.J0, basis.q, basis.model.c
    g, A = basis.roots, basis.coefficients
    K0 = ((J0 - alpha) * (1.0 - q * np.sum(A / g))).real
    Kj = alpha * c * A + (J0 - alpha) * q * A / g
    return K0, Kj, g


def hjb_residual(
    model,
    params: PolicyParams,
    solution: PolicySolution,
    step: float = 1e-3,
    exclude_steps: int = 2,
    return_grid: bool = False,
):
    """Largest violation of the HJB variational inequality on a grid.

    On ``x >= 0`` the residual is ``|max{H V, 1 - V', V' - k}|`` with the
    Hamiltonian ``H V = c V' + lam int V(x-y) f(y) dy - (q + lam) V``; on
    ``x < 0`` it is ``|max{V' - k, -P - V}|``.  The grid covers
    ``[-a-1, b+2]`` with spacing ``step``; points within ``exclude_steps``
    grid steps of the kinks ``-a``, ``0``, ``b`` are skipped.  Only exponential
    claims are supported because the convolution is evaluated in closed form.
    """
    if not isinstance(model.claims, Exponential):
        raise UnsupportedError("hjb_residual supports exponential claims only")
    ing = solution.ingredients
    if ing is None or type(ing) is not PolicyIngredients:
        from ..scale import build_scale_basis

        ing = PolicyIngredients(build_scale_basis(model, params.q))
    mu, lam, c, q, k, P = model.claims.rate, model.lam, model.c, params.q, params.k, params.P
    a, b, J0 = solution.a_star, solution.b_star, solution.J0
    K0, Kj, g = _exp_sum(solution, ing, params)

    n = int(round((a + b + 3.0) / step))
    xs = -a - 1.0 + step * np.arange(n + 1)
    keep = np.ones(xs.size, dtype=bool)
    for kink in (-a, 0.0, b):
        keep &= np.abs(xs - kink) > exclude_steps * step * (1 + 1e-9)
    xs = xs[keep]

    m_a = float(model.claims.mean_function(a))
    vb = K0 + float(np.sum(Kj * np.exp(g * b)).real)
    res = np.empty_like(xs)
    for i, x in enumerate(xs):
        if x < 0:
            if x >= -a:
                v, dv = k * x + J0, k
            else:
                v, dv = -P, 0.0
            res[i] = abs(max(dv - k, -P - v))
            continue
        tail = np.exp(-mu * x) * (J0 * -np.expm1(-mu * a) - k * m_a) - P * np.exp(-mu * (x + a))
        if x <= b:
            e = np.exp(g * x)
            v = K0 + float(np.sum(Kj * e).real)
            dv = float(np.sum(Kj * g * e).real)
            conv = K0 * -np.expm1(-mu * x) + float(np.sum(Kj * mu * (e - np.exp(-mu * x)) / (g + mu)).real)
        else:
            d = x - b
            ed = np.exp(-mu * d)
            v, dv = vb + d, 1.0
            conv = vb * (1 - ed) + d - (1 - ed) / mu + K0 * (ed - np.exp(-mu * x))
            conv += float(
                np.sum(Kj * mu * np.exp(g * x) * (np.exp(-(g + mu) * d) - np.exp(-(g + mu) * x)) / (g + mu)).real
            )
        H = c * dv + lam * (conv + tail) - (q + lam) * v
        res[i] = abs(max(H, 1.0 - dv, dv - k))
    worst = float(res.max()) if res.size else 0.0
    if return_grid:
        return worst, xs, res
    return worst
