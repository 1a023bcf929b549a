"""Building blocks of the (-a, 0, b) value function.

On ``[0, b]`` the value of a ``(-a, 0, b)`` policy is

    V(x) = G_a(x) + J0 S_a(x),    S_a = Z_q + C_a,

where ``C_a(x) = lam int_0^x W_q(x-y) Fbar(a+y) dy`` and ``G_a`` collects the
injection cost ``k`` and the penalty ``P``.  Both flavours below write these as
a row ``r(x)`` contracted with vectors that depend on ``a`` only:

    C_a(x) = r(x) . E(a),    G_a(x) = r(x) . K(a).

* :class:`PolicyIngredients` (product form): ``r = [C(x)]``,
  ``E = [Fbar(a)]``, ``K = [k m(a) + P Fbar(a)]``.  Exact for exponential
  claims; for other laws this is the "correct ingredients" surrogate.
* :class:`MatrixIngredients`: ``r = vecC(x) = lam beta int_0^x W_q(x-y) e^{yB} dy``,
  ``E = e^{aB} 1``, ``K = (k M(a) + P e^{aB}) 1``.  Exact for
  matrix-exponential claims.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad_vec

from ..errors import DegeneratePolicyError
from ..scale import ScaleBasis
from .types import PolicyParams

__all__ = [
    "MatrixIngredients",
    "PolicyIngredients",
    "j0_matrix",
    "j0_value",
    "matrix_ingredients",
]

_RESONANCE_TOL = 1e-8


class PolicyIngredients:
    """Product-form ingredients built on a scale basis."""

    def __init__(self, basis: ScaleBasis):
        self.basis = basis
        self.model = basis.model
        self.claims = basis.model.claims
        self.q = basis.q

    # curves of b ---------------------------------------------------------
    def gamma(self, b):
        return 1.0 / self.basis.C(b, 1)

    def theta(self, b):
        return self.basis.W(b) / self.basis.C(b, 1)

    def j(self, b):
        """``gamma'(b) / (q theta'(b))``."""
        B = self.basis
        c1, c2 = B.C(b, 1), B.C(b, 2)
        return -c2 / (self.q * (B.W(b, 1) * c1 - B.W(b) * c2))

    def s(self, b, params: PolicyParams):
        return (self.j(b) + params.P) / params.k

    # row / tail representation ------------------------------------------
    def row(self, x: float, nu: int = 0) -> np.ndarray:
        return np.array([self.basis.C(float(x), nu)])

    def survival_vector(self, a: float) -> np.ndarray:
        return np.array([float(self.claims.survival(float(a)))])

    def tail(self, a: float, params: PolicyParams) -> tuple[np.ndarray, np.ndarray]:
        E = self.survival_vector(a)
        m = float(self.claims.mean_function(float(a)))
        return E, params.k * m + params.P * E

    def C_a(self, a, x, nu: int = 0) -> float:
        return float(self.row(x, nu) @ self.survival_vector(a))

    def G_a(self, a, x, params: PolicyParams, nu: int = 0) -> float:
        return float(self.row(x, nu) @ self.tail(a, params)[1])

    def S_a(self, a, x, nu: int = 0) -> float:
        return self.basis.Z(float(x), nu) + self.C_a(a, x, nu)

    # value at zero ---------------------------------------------------------
    def j0_curve(self, params: PolicyParams, b: float):
        """Return ``a -> J0(a, b)`` with the ``b``-dependent pieces cached."""
        r1 = self.row(b, 1)
        qw = self.q * self.basis.W(float(b))

        def j0(a: float) -> float:
            E, K = self.tail(a, params)
            den = qw + float(r1 @ E)
            if not den > 0:
                raise DegeneratePolicyError(f"J0 denominator {den:.3e} <= 0 at a={a!r}, b={b!r}")
            return (1.0 - float(r1 @ K)) / den

        return j0

    def j0(self, params: PolicyParams, a: float, b: float) -> float:
        return self.j0_curve(params, b)(a)

    def b_stationarity(self, params: PolicyParams, a: float, b: float, J0: float) -> float:
        """Quantity proportional to ``-dJ0/db``; zero at a critical barrier."""
        E, K = self.tail(a, params)
        return float(self.row(b, 2) @ (K + J0 * E)) + J0 * self.q * self.basis.W(float(b), 1)


class MatrixIngredients(PolicyIngredients):
    """Exact ingredients for matrix-exponential claims."""

    def __init__(self, basis: ScaleBasis):
        super().__init__(basis)
        beta, B = self.claims.to_matrix_form()
        n = B.shape[0]
        self._beta, self._B, self._one = beta, B, np.ones(n)
        eig = np.linalg.eigvals(B)
        gam, A = basis.roots, basis.coefficients
        self._resonant = np.array(
            [np.min(np.abs(eig - g)) < _RESONANCE_TOL * max(1.0, abs(g)) for g in gam]
        )
        R = [
            None if res else np.linalg.inv(B - g * np.eye(n))
            for g, res in zip(gam, self._resonant)
        ]
        self._Rsum = sum((a * r for a, r, res in zip(A, R, self._resonant) if not res), np.zeros((n, n), complex))
        self._betaR = [None if r is None else beta @ r for r in R]

    def _resonant_term(self, g: complex, x: float, nu: int) -> np.ndarray:
        # int_0^x e^{g(x-y)} beta e^{yB} dy and its x-derivatives
        def integrand(y):
            v = np.exp(g * (x - y)) * (self._beta @ self.claims.expm_B(y))
            return np.concatenate([v.real, v.imag])

        n = self._B.shape[0]
        if x > 0:
            vals, _ = quad_vec(integrand, 0.0, x, epsabs=1e-13, epsrel=1e-12)
        else:
            vals = np.zeros(2 * n)
        out = (vals[:n] + 1j * vals[n:]) * g**nu
        head = self._beta @ self.claims.expm_B(x)
        for i in range(nu):
            out = out + g ** (nu - 1 - i) * (head @ np.linalg.matrix_power(self._B, i))
        return out

    def vec_C(self, x: float, nu: int = 0) -> np.ndarray:
        """``lam beta int_0^x W_q(x-y) e^{yB} dy`` (row vector) and derivatives."""
        x = float(x)
        lam = self.model.lam
        head = self._beta @ self.claims.expm_B(x) @ np.linalg.matrix_power(self._B, nu)
        out = head @ self._Rsum
        for g, A, bR, res in zip(self.basis.roots, self.basis.coefficients, self._betaR, self._resonant):
            if res:
                out = out + A * self._resonant_term(g, x, nu)
            else:
                out = out - A * g**nu * np.exp(g * x) * bR
        return lam * out.real

    def row(self, x: float, nu: int = 0) -> np.ndarray:
        return self.vec_C(x, nu)

    def mean_matrix(self, a: float) -> np.ndarray:
        return self.claims.mean_matrix(float(a))

    def survival_vector(self, a: float) -> np.ndarray:
        return self.claims.expm_B(float(a)) @ self._one

    def tail(self, a: float, params: PolicyParams) -> tuple[np.ndarray, np.ndarray]:
        E = self.survival_vector(a)
        return E, params.k * (self.mean_matrix(a) @ self._one) + params.P * E


def j0_value(ingredients: PolicyIngredients, params: PolicyParams, a: float, b: float) -> float:
    """Product-form value at zero of the ``(-a, 0, b)`` policy.

    ``(1 - C'(b) (k m(a) + P Fbar(a))) / (Fbar(a) C'(b) + q W_q(b))``.
    """
    if isinstance(ingredients, MatrixIngredients):
        ingredients = PolicyIngredients(ingredients.basis)
    return ingredients.j0(params, a, b)


def matrix_ingredients(basis: ScaleBasis, params: PolicyParams, a: float, x: float, nu: int = 0):
    """``(C_a(x), G_a(x), S_a(x))`` from the matrix-exponential closed forms."""
    ing = MatrixIngredients(basis)
    E, K = ing.tail(a, params)
    r = ing.vec_C(x, nu)
    ca = float(r @ E)
    return ca, float(r @ K), basis.Z(float(x), nu) + ca


def j0_matrix(ingredients: MatrixIngredients, params: PolicyParams, a: float, b: float) -> float:
    """``(1 - vecC'(b)(k M(a) + P e^{aB}) 1) / (q W_q(b) + vecC'(b) e^{aB} 1)``."""
    return ingredients.j0(params, a, b)
