"""Exponential surrogates of a risk model and their ruin probabilities.

Each surrogate replaces the claim law by an exponential one whose rate is the
reciprocal of a normalized moment ``m_i / (i m_{i-1})``:

* ``NAIVE``      rate ``1/m1``, same ``lam`` and ``c``;
* ``RENYI``      rate ``1/hm2``, ``lam_R = lam m1 / hm2``, same ``c``
  (keeps ``rho`` and the loading);
* ``DE_VYLDER``  rate ``1/hm3``, ``lam~ = lam 9 m2^3 / (2 m3^2)`` and
  ``c~ = c - lam m1 + lam~ hm3`` (matches the first three cumulants).
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .claims import Exponential, RiskModel
from .errors import InvalidApproximationError, UnsupportedError

__all__ = ["ApproxKind", "fit_exponential_model", "ruin_probability"]


class ApproxKind(enum.Enum):
    NAIVE = "naive"
    RENYI = "renyi"
    DE_VYLDER = "de-vylder"


def fit_exponential_model(model: RiskModel, kind: ApproxKind | str) -> RiskModel:
    """Risk model with exponential claims approximating ``model``."""
    kind = ApproxKind(kind)
    if model.diffusion != 0.0:
        raise UnsupportedError("exponential surrogates are defined for diffusion = 0")
    claims, lam, c = model.claims, model.lam, model.c
    m1 = claims.moment(1)
    if kind is ApproxKind.NAIVE:
        rate, lam_new, c_new = 1.0 / m1, lam, c
    elif kind is ApproxKind.RENYI:
        hm2 = claims.normalized_moment(2)
        rate, lam_new, c_new = 1.0 / hm2, lam * m1 / hm2, c
    else:
        m2, m3 = claims.moment(2), claims.moment(3)
        hm3 = m3 / (3.0 * m2)
        lam_new = lam * 9.0 * m2**3 / (2.0 * m3**2)
        rate, c_new = 1.0 / hm3, c - lam * m1 + lam_new * hm3
    if not (rate > 0 and lam_new > 0 and c_new > 0 and math.isfinite(rate)):
        raise InvalidApproximationError(
            f"{kind.value} surrogate has rate={rate!r}, lam={lam_new!r}, c={c_new!r}"
        )
    return RiskModel(c=c_new, lam=lam_new, claims=Exponential(rate))


def ruin_probability(model: RiskModel, x, kind: ApproxKind | str | None = None):
    """Ruin probability ``Psi(x) = exp(-x theta r / (1 + theta)) / (1 + theta)``.

    With ``kind=None`` the formula is applied to ``model`` itself, which must
    then have exponential claims (the formula is exact there).  Otherwise the
    model is first replaced by the requested surrogate.
    """
    if kind is None:
        if not isinstance(model.claims, Exponential) or model.diffusion != 0.0:
            raise UnsupportedError("exact ruin formula needs exponential claims and no diffusion")
        surrogate = model
    else:
        surrogate = fit_exponential_model(model, kind)
    theta = surrogate.loading
    if theta <= 0:
        raise InvalidApproximationError(f"no ruin formula: surrogate loading {theta:.6g} <= 0")
    r = surrogate.claims.rate
    xx = np.asarray(x, dtype=float)
    vals = np.exp(-xx * theta * r / (1.0 + theta)) / (1.0 + theta)
    return float(vals) if xx.ndim == 0 else vals
