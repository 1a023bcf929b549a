"""Real branches of the Lambert-W function.

``lambert_w0`` is the principal branch (values in ``[-1, inf)``) and
``lambert_wm1`` the lower branch (values in ``(-inf, -1]``).  Both start from a
series or asymptotic guess and are polished by Halley iteration; for large
arguments the iteration runs on the logarithmic form ``w + log(w) = log(z)``
to avoid overflowing ``exp(w)``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "LambertBranch",
    "lambert_w",
    "lambert_w0",
    "lambert_w0_exp",
    "lambert_wm1",
]

_INV_E = math.exp(-1.0)
_BRANCH_SLACK = 1e-15
_MAX_ITER = 60


class LambertBranch(enum.Enum):
    PRINCIPAL = 0
    LOWER = -1


def _branch_point_series(z: float, sign: float) -> float:
    # w = -1 + sign*p - p^2/3 + sign*11/72 p^3, p = sqrt(2(ez+1))
    p = math.sqrt(max(2.0 * (math.e * z + 1.0), 0.0))
    return -1.0 + sign * p - p * p / 3.0 + sign * 11.0 / 72.0 * p**3


def _halley(w: float, z: float) -> float:
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        dw = f / denom
        w -= dw
        if abs(dw) <= 4e-16 * (1.0 + abs(w)):
            break
    return w


def _newton_log_form(w: float, log_abs_z: float, negative: bool) -> float:
    # Solves w + log(|w|) = log(|z|); g'(w) = 1 + 1/w.
    for _ in range(_MAX_ITER):
        g = w + math.log(-w if negative else w) - log_abs_z
        dw = g / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= 4e-16 * (1.0 + abs(w)):
            break
    return w


def _w0_scalar(z: float) -> float:
    if math.isnan(z):
        return math.nan
    if z < -_INV_E:
        if z < -_INV_E - _BRANCH_SLACK:
            raise DomainError(f"lambert_w0 is undefined for z={z!r} < -1/e")
        z = -_INV_E
    if z == -_INV_E:
        return -1.0
    if z == 0.0:
        return 0.0
    if math.isinf(z):
        return math.inf
    if z < -0.32:
        w = _branch_point_series(z, +1.0)
        return _halley(w, z)
    if z > 20.0:
        lz = math.log(z)
        w = lz - math.log(lz)
        return _newton_log_form(w, lz, negative=False)
    l1 = math.log1p(z)
    w = l1 * (1.0 - math.log1p(l1) / (2.0 + l1))
    return _halley(w, z)


def _wm1_scalar(z: float) -> float:
    if math.isnan(z):
        return math.nan
    if z < -_INV_E:
        if z < -_INV_E - _BRANCH_SLACK:
            raise DomainError(f"lambert_wm1 is undefined for z={z!r} < -1/e")
        z = -_INV_E
    if z >= 0.0:
        raise DomainError(f"lambert_wm1 requires -1/e <= z < 0, got z={z!r}")
    if z == -_INV_E:
        return -1.0
    if z < -0.25:
        w = _branch_point_series(z, -1.0)
        return _halley(w, z)
    l1 = math.log(-z)
    l2 = math.log(-l1)
    w = l1 - l2 + l2 / l1
    if z > -1e-3:
        return _newton_log_form(w, l1, negative=True)
    return _halley(w, z)


def lambert_w0(z):
    """Principal branch ``L0`` of the inverse of ``w -> w*exp(w)``.

    Accepts a scalar or an array.  Arguments up to ``1e-15`` below ``-1/e`` are
    clamped to the branch point; anything lower raises :class:`DomainError`.
    """
    if np.ndim(z) == 0:
        return _w0_scalar(float(z))
    arr = np.asarray(z, dtype=float)
    return np.array([_w0_scalar(v) for v in arr.ravel()]).reshape(arr.shape)


def lambert_wm1(z):
    """Lower real branch ``L-1``, defined on ``[-1/e, 0)`` with values ``<= -1``."""
    if np.ndim(z) == 0:
        return _wm1_scalar(float(z))
    arr = np.asarray(z, dtype=float)
    return np.array([_wm1_scalar(v) for v in arr.ravel()]).reshape(arr.shape)


def lambert_w(z, branch: LambertBranch | int = LambertBranch.PRINCIPAL):
    branch = LambertBranch(branch)
    if branch is LambertBranch.PRINCIPAL:
        return lambert_w0(z)
    return lambert_wm1(z)


def lambert_w0_exp(t: float) -> float:
    """Return ``L0(exp(t))`` without forming ``exp(t)``.

    Useful when the argument of ``L0`` is written as an exponential whose
    exponent may be far beyond the floating point range.
    """
    t = float(t)
    if t < 3.0:
        return _w0_scalar(math.exp(t))
    w = t - math.log(t)
    return _newton_log_form(w, t, negative=False)
