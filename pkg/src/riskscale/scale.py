"""q-scale functions of Cramér-Lundberg processes with rational claim transforms.

With ``f_hat = N / D`` the function ``kappa(s) - q`` equals ``P(s) / D(s)`` for
the polynomial ``P(s) = (sigma s^2 + c s - lam - q) D(s) + lam N(s)``.  Its roots
``gamma_j`` are simple in all cases handled here, so partial fractions give

    W_q(x) = sum_j A_j exp(gamma_j x),    A_j = D(gamma_j) / P'(gamma_j).

Complex roots come in exact conjugate pairs; sums are formed in complex
arithmetic and the (vanishing) imaginary part is dropped.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .claims import Exponential, RiskModel
from .errors import MultiplicityError, NumericalError, UnsupportedError, ValidationError

__all__ = [
    "ScaleBasis",
    "b_bar",
    "build_scale_basis",
    "cl_roots",
    "de_finetti_barrier",
    "initial_values",
    "laplace_exponent",
    "XMAX_ENV",
]

XMAX_ENV = "RISKSCALE_XMAX"
_NEWTON_STEPS = 3
_REAL_TOL = 1e-10
_MULT_TOL = 1e-8


def laplace_exponent(model: RiskModel, s):
    """``kappa(s) = sigma s^2 + c s - lam (1 - f_hat(s))``."""
    fhat = model.claims.laplace_transform(s)
    return model.diffusion * s * s + model.c * s - model.lam * (1.0 - fhat)


def _cl_polynomial(model: RiskModel, q: float) -> tuple[np.ndarray, np.ndarray]:
    num, den = model.claims.transform_polynomials()
    lead = np.array([model.diffusion, model.c, -model.lam - q])
    if model.diffusion == 0.0:
        lead = lead[1:]
    poly = np.polyadd(np.polymul(lead, den), model.lam * num)
    return poly, den


def _symmetrize(roots: np.ndarray, scale: float) -> np.ndarray:
    """Snap near-real roots onto the axis and force exact conjugate pairs."""
    roots = np.asarray(roots, dtype=complex).copy()
    real_mask = np.abs(roots.imag) <= _REAL_TOL * scale
    roots[real_mask] = roots[real_mask].real
    upper = [r for r in roots[~real_mask] if r.imag > 0]
    lower = [r for r in roots[~real_mask] if r.imag < 0]
    if len(upper) != len(lower):
        raise NumericalError("complex roots of a real polynomial do not pair up")
    paired = []
    for r in upper:
        j = int(np.argmin([abs(r - np.conj(v)) for v in lower]))
        v = lower.pop(j)
        mid = 0.5 * (r + np.conj(v))
        paired.extend([mid, np.conj(mid)])
    out = np.concatenate([roots[real_mask], np.array(paired, dtype=complex)])
    order = np.lexsort((out.imag, out.real))
    return out[order]


def cl_roots(model: RiskModel, q: float) -> np.ndarray:
    """All roots of ``kappa(s) = q``, sorted by increasing real part.

    Companion-matrix eigenvalues polished by Newton steps on the numerator
    polynomial.  Raises :class:`MultiplicityError` when two roots coincide.
    """
    if not q > 0:
        raise ValidationError(f"discount rate q must be positive, got {q!r}")
    poly, den = _cl_polynomial(model, q)
    dpoly = np.polyder(poly)
    roots = np.roots(poly).astype(complex)
    for _ in range(_NEWTON_STEPS):
        d = np.polyval(dpoly, roots)
        step = np.where(d != 0, np.polyval(poly, roots) / np.where(d != 0, d, 1.0), 0.0)
        roots = roots - step
    scale = max(1.0, float(np.max(np.abs(roots))))
    roots = _symmetrize(roots, scale)
    n = roots.size
    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < _MULT_TOL * scale:
                raise MultiplicityError(
                    f"repeated root near {roots[i]:.6g} of kappa(s)=q; perturb q by about 1e-9"
                )
    resid = np.abs(np.polyval(poly, roots) / np.polyval(den, roots))
    if np.any(resid > 1e-9 * (1.0 + abs(q))):
        raise NumericalError(f"root residual {resid.max():.3e} exceeds tolerance")
    top = roots[np.argmax(roots.real)]
    if abs(top.imag) > 0 or top.real <= 0:
        raise NumericalError("dominant root of kappa(s)=q is not real and positive")
    return roots


@dataclass(frozen=True, eq=False)
class ScaleBasis:
    """Exponential-sum representation of ``W_q``.

    ``W``, ``Z`` and ``C`` accept ``nu`` for the derivative order.
    """

    model: RiskModel
    q: float
    roots: np.ndarray
    coefficients: np.ndarray

    @property
    def phi(self) -> float:
        """Dominant root ``Phi_q`` (right inverse of ``kappa`` at ``q``)."""
        return float(self.roots[np.argmax(self.roots.real)].real)

    @property
    def rho_minus(self) -> float | None:
        """Most negative real root, or None when every negative root is complex."""
        real = self.roots[self.roots.imag == 0].real
        real = real[real < 0]
        return float(real.min()) if real.size else None

    @property
    def x_max(self) -> float:
        """Search horizon for barriers: ``5 / Phi_q`` unless overridden by env."""
        env = os.environ.get(XMAX_ENV)
        if env:
            return float(env)
        return 5.0 / self.phi

    def _sum(self, weights, x):
        xx = np.asarray(x, dtype=float)
        vals = np.exp(np.multiply.outer(xx, self.roots)) @ weights
        vals = vals.real
        return float(vals) if xx.ndim == 0 else vals

    def W(self, x, nu: int = 0):
        return self._sum(self.coefficients * self.roots**nu, x)

    def Z(self, x, nu: int = 0):
        if nu > 0:
            return self.q * self.W(x, nu - 1)
        xx = np.asarray(x, dtype=float)
        w = self.coefficients / self.roots
        vals = 1.0 + self.q * (np.exp(np.multiply.outer(xx, self.roots)) - 1.0) @ w
        vals = vals.real
        return float(vals) if xx.ndim == 0 else vals

    def C(self, x, nu: int = 0):
        """Expected scale after a jump ``c W - Z + sigma W'`` and derivatives."""
        m = self.model
        out = m.c * self.W(x, nu) - self.Z(x, nu)
        if m.diffusion:
            out = out + m.diffusion * self.W(x, nu + 1)
        return out

    def kappa(self, s):
        return laplace_exponent(self.model, s)


def build_scale_basis(model: RiskModel, q: float) -> ScaleBasis:
    poly, den = _cl_polynomial(model, q)
    roots = cl_roots(model, q)
    coeffs = np.polyval(den, roots) / np.polyval(np.polyder(poly), roots)
    # enforce exact conjugacy of the coefficients as well
    coeffs = np.where(roots.imag == 0, coeffs.real + 0j, coeffs)
    for i, r in enumerate(roots):
        if r.imag > 0:
            j = int(np.argmin(np.abs(roots - np.conj(r))))
            mid = 0.5 * (coeffs[i] + np.conj(coeffs[j]))
            coeffs[i], coeffs[j] = mid, np.conj(mid)
    roots.flags.writeable = False
    coeffs.flags.writeable = False
    return ScaleBasis(model=model, q=float(q), roots=roots, coefficients=coeffs)


def initial_values(model: RiskModel, q: float) -> tuple[float, float, float]:
    """Closed-form ``(W(0), W'(0), W''(0))`` for the pure-jump case."""
    if model.diffusion != 0.0:
        raise UnsupportedError("closed-form initial values require diffusion = 0")
    c, lam = model.c, model.lam
    f0 = model.claims.density_at_zero
    return 1.0 / c, (q + lam) / c**2, ((lam + q) ** 2 - c * lam * f0) / c**3


def _grid_size(basis: ScaleBasis, x_max: float) -> int:
    freq = float(np.max(np.abs(basis.roots.imag)))
    return max(2000, int(math.ceil(40.0 * x_max * freq / (2.0 * math.pi))) + 1)


def _sign_change_roots(fun, x_max: float, n: int) -> list[tuple[float, float]]:
    """Roots of ``fun`` on ``[0, x_max]`` as ``(x, slope_sign)`` pairs."""
    xs = np.linspace(0.0, x_max, n)
    vals = fun(xs)
    out = []
    for i in range(n - 1):
        lo, hi = vals[i], vals[i + 1]
        if lo == 0.0 and i > 0:
            out.append((float(xs[i]), math.copysign(1.0, hi - vals[i - 1])))
        elif lo * hi < 0:
            root = brentq(fun, xs[i], xs[i + 1], xtol=1e-13, rtol=4 * np.finfo(float).eps)
            out.append((root, math.copysign(1.0, hi - lo)))
    return out


def _is_plain_exponential(model: RiskModel) -> bool:
    return isinstance(model.claims, Exponential) and model.diffusion == 0.0


def de_finetti_barrier(basis: ScaleBasis, x_max: float | None = None) -> float:
    """Last global minimizer of ``W_q'`` on ``[0, x_max]``.

    Exponential claims use the closed form; other laws locate the sign
    changes of ``W_q''`` on a grid fine enough to resolve oscillating terms.
    """
    model = basis.model
    if _is_plain_exponential(model):
        mu, q, lam, c = model.claims.rate, basis.q, model.lam, model.c
        if (q + lam) ** 2 - c * lam * mu >= 0:
            return 0.0
        g1 = basis.phi
        g2 = float(basis.roots[np.argmin(basis.roots.real)].real)
        return math.log(g2 * g2 * (mu + g2) / (g1 * g1 * (mu + g1))) / (g1 - g2)
    x_max = basis.x_max if x_max is None else float(x_max)
    crossings = _sign_change_roots(lambda x: basis.W(x, 2), x_max, _grid_size(basis, x_max))
    candidates = [0.0] + [x for x, slope in crossings if slope > 0]
    values = [basis.W(x, 1) for x in candidates]
    best = min(values)
    tol = 1e-14 * max(1.0, abs(best))
    return max(x for x, v in zip(candidates, values) if v <= best + tol)


def b_bar(basis: ScaleBasis, x_max: float | None = None) -> float | None:
    """Minimizer of ``C'``, i.e. the root of ``C''(x) = 0``.

    Returns 0.0 when ``C''(0) >= 0`` and None when no root lies in the search
    range.
    """
    if basis.C(0.0, 2) >= 0:
        return 0.0
    x_max = basis.x_max if x_max is None else float(x_max)
    crossings = _sign_change_roots(lambda x: basis.C(x, 2), x_max, _grid_size(basis, x_max))
    ups = [x for x, slope in crossings if slope > 0]
    return ups[0] if ups else None
