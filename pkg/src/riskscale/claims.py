"""Claim-size laws with rational Laplace transforms and the risk model.

Every law can be written in matrix-exponential form ``(beta, B)`` with survival
function ``beta @ expm(x B) @ 1``.  Exponential and hyperexponential laws keep
closed forms for speed; the generic matrix-exponential class evaluates through
an eigendecomposition of ``B`` (or :func:`scipy.linalg.expm` when ``B`` is badly
conditioned).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import PoleError, ValidationError

__all__ = [
    "ClaimDistribution",
    "Exponential",
    "Hyperexponential",
    "MatrixExponential",
    "RiskModel",
    "oscillating_density",
]


def _as_float_array(x):
    return np.asarray(x, dtype=float)


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return float(np.asarray(values).reshape(()))
    return values


def faddeev_leverrier(B):
    """Characteristic polynomial and adjugate coefficients of ``s I - B``.

    Returns ``(char, adj)`` where ``char`` holds the coefficients of
    ``det(s I - B)`` (highest degree first, leading 1) and ``adj[k]`` is the
    matrix coefficient of ``s**(n-1-k)`` in ``adj(s I - B)``.
    """
    B = np.asarray(B, dtype=float)
    n = B.shape[0]
    char = np.zeros(n + 1)
    char[0] = 1.0
    adj = np.zeros((n, n, n))
    M = np.eye(n)
    for k in range(1, n + 1):
        adj[k - 1] = M
        BM = B @ M
        char[k] = -np.trace(BM) / k
        M = BM + char[k] * np.eye(n)
    return char, adj


class ClaimDistribution:
    """Base class: generic matrix-exponential evaluation from ``matrix_form``.

    Subclasses must implement :meth:`to_matrix_form`; the rest may be
    overridden by closed forms.
    """

    def to_matrix_form(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    # cached matrix pieces -------------------------------------------------
    def _matrix(self):
        cache = self.__dict__.get("_mcache")
        if cache is None:
            beta, B = self.to_matrix_form()
            n = B.shape[0]
            one = np.ones(n)
            eig, V = np.linalg.eig(B)
            use_eig = np.linalg.cond(V) < 1e8
            Vinv = np.linalg.inv(V) if use_eig else None
            cache = {
                "beta": beta,
                "B": B,
                "one": one,
                "Binv": np.linalg.inv(B),
                "eig": eig,
                "V": V,
                "Vinv": Vinv,
                "use_eig": use_eig,
            }
            object.__setattr__(self, "_mcache", cache)
        return cache

    @property
    def order(self) -> int:
        return self._matrix()["B"].shape[0]

    def expm_B(self, x):
        """``expm(x B)`` for scalar ``x`` or a stack of matrices for an array."""
        m = self._matrix()
        xs = np.atleast_1d(_as_float_array(x))
        if m["use_eig"]:
            ex = np.exp(np.multiply.outer(xs, m["eig"]))
            out = np.einsum("ij,xj,jk->xik", m["V"], ex, m["Vinv"]).real
        else:
            out = np.stack([expm(v * m["B"]) for v in xs])
        return out[0] if np.ndim(x) == 0 else out

    def survival(self, x):
        m = self._matrix()
        E = np.atleast_3d(self.expm_B(np.atleast_1d(x)))
        vals = np.einsum("i,xij,j->x", m["beta"], E, m["one"])
        return _scalar_or_array(vals, x)

    def density(self, x):
        m = self._matrix()
        exit_vec = -m["B"] @ m["one"]
        E = self.expm_B(np.atleast_1d(x))
        vals = np.einsum("i,xij,j->x", m["beta"], E, exit_vec)
        return _scalar_or_array(vals, x)

    def cdf(self, x):
        return 1.0 - self.survival(x)

    def laplace_transform(self, s):
        """``beta (s I - B)^{-1} (-B) 1``; raises :class:`PoleError` at a pole."""
        m = self._matrix()
        n = self.order
        ss = np.atleast_1d(np.asarray(s, dtype=complex))
        if np.any(np.abs(ss[:, None] - m["eig"][None, :]) < 1e-12):
            raise PoleError(f"Laplace transform evaluated at a pole: s={s!r}")
        exit_vec = -m["B"] @ m["one"]
        vals = np.array(
            [m["beta"] @ np.linalg.solve(v * np.eye(n) - m["B"], exit_vec) for v in ss]
        )
        if np.ndim(s) == 0:
            v = complex(vals[0])
            return v.real if isinstance(s, (int, float)) else v
        return vals

    def moment(self, i: int) -> float:
        if int(i) != i or i < 1:
            raise ValidationError(f"moment order must be a positive integer, got {i!r}")
        m = self._matrix()
        minus_inv = -m["Binv"]
        return float(math.factorial(i) * m["beta"] @ np.linalg.matrix_power(minus_inv, int(i)) @ m["one"])

    def normalized_moment(self, i: int) -> float:
        """``m_i / (i m_{i-1})`` with ``m_0 = 1``."""
        if int(i) != i or i < 1:
            raise ValidationError(f"moment order must be a positive integer, got {i!r}")
        if i == 1:
            return self.moment(1)
        return self.moment(i) / (i * self.moment(i - 1))

    @property
    def mean(self) -> float:
        return self.moment(1)

    def mean_matrix(self, a: float) -> np.ndarray:
        """``M(a) = -B^{-1} - e^{aB}(aI - B^{-1})`` so that ``m(a) = beta M(a) 1``."""
        m = self._matrix()
        n = self.order
        return -m["Binv"] - self.expm_B(float(a)) @ (a * np.eye(n) - m["Binv"])

    def mean_function(self, a):
        """Truncated mean ``int_0^a y f(y) dy``."""
        m = self._matrix()
        aa = np.atleast_1d(_as_float_array(a))
        if np.any(aa < 0):
            raise ValidationError("mean_function requires a >= 0")
        vals = np.array([m["beta"] @ self.mean_matrix(v) @ m["one"] for v in aa])
        return _scalar_or_array(vals, a)

    def transform_polynomials(self) -> tuple[np.ndarray, np.ndarray]:
        """Numerator and denominator of ``f_hat(s) = N(s) / D(s)``.

        Coefficients are ordered highest degree first (``numpy.polyval``
        convention); ``D`` is monic of degree equal to the order.
        """
        m = self._matrix()
        char, adj = faddeev_leverrier(m["B"])
        exit_vec = -m["B"] @ m["one"]
        num = np.array([m["beta"] @ C @ exit_vec for C in adj])
        return num, char

    @property
    def density_at_zero(self) -> float:
        return float(self.density(0.0))


@dataclass(frozen=True)
class Exponential(ClaimDistribution):
    rate: float

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise ValidationError(f"exponential rate must be positive, got {self.rate!r}")

    def to_matrix_form(self):
        return np.array([1.0]), np.array([[-float(self.rate)]])

    def survival(self, x):
        return np.exp(-self.rate * _as_float_array(x)) if np.ndim(x) else math.exp(-self.rate * x)

    def density(self, x):
        return self.rate * self.survival(x)

    def laplace_transform(self, s):
        if abs(s + self.rate) < 1e-12:
            raise PoleError(f"Laplace transform evaluated at the pole s={s!r}")
        return self.rate / (self.rate + s)

    def moment(self, i: int) -> float:
        if int(i) != i or i < 1:
            raise ValidationError(f"moment order must be a positive integer, got {i!r}")
        return math.factorial(int(i)) / self.rate**i

    def mean_function(self, a):
        mu = self.rate
        aa = _as_float_array(a)
        if np.any(aa < 0):
            raise ValidationError("mean_function requires a >= 0")
        e = np.exp(-mu * aa)
        vals = -np.expm1(-mu * aa) / mu - aa * e
        return _scalar_or_array(vals, a)

    def transform_polynomials(self):
        return np.array([float(self.rate)]), np.array([1.0, float(self.rate)])


@dataclass(frozen=True)
class Hyperexponential(ClaimDistribution):
    """Mixture of exponentials ``f(x) = sum_j p_j mu_j exp(-mu_j x)``.

    Duplicate rates are merged by summing their weights.
    """

    weights: tuple
    rates: tuple

    def __post_init__(self):
        w = np.atleast_1d(_as_float_array(self.weights))
        r = np.atleast_1d(_as_float_array(self.rates))
        if w.shape != r.shape or w.ndim != 1 or w.size == 0:
            raise ValidationError("weights and rates must be 1-d sequences of equal length")
        if np.any(w <= 0) or np.any(r <= 0):
            raise ValidationError("hyperexponential weights and rates must be positive")
        if abs(w.sum() - 1.0) > 1e-10:
            raise ValidationError(f"hyperexponential weights must sum to 1, got {w.sum()!r}")
        merged: dict[float, float] = {}
        for wi, ri in zip(w, r):
            merged[float(ri)] = merged.get(float(ri), 0.0) + float(wi)
        rates = tuple(sorted(merged))
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "weights", tuple(merged[v] for v in rates))

    @classmethod
    def from_density_coefficients(cls, coefficients, rates) -> "Hyperexponential":
        """Build from ``f(x) = sum_j k_j exp(-mu_j x)``, normalizing the ``k_j``."""
        k = _as_float_array(coefficients)
        mu = _as_float_array(rates)
        mass = k / mu
        return cls(tuple(mass / mass.sum()), tuple(mu))

    @property
    def _w(self):
        return np.asarray(self.weights)

    @property
    def _mu(self):
        return np.asarray(self.rates)

    def to_matrix_form(self):
        return self._w.copy(), np.diag(-self._mu)

    def survival(self, x):
        xx = _as_float_array(x)
        vals = np.exp(-np.multiply.outer(xx, self._mu)) @ self._w
        return _scalar_or_array(vals, x)

    def density(self, x):
        xx = _as_float_array(x)
        vals = np.exp(-np.multiply.outer(xx, self._mu)) @ (self._w * self._mu)
        return _scalar_or_array(vals, x)

    def laplace_transform(self, s):
        ss = np.asarray(s)
        if np.any(np.abs(np.subtract.outer(ss, -self._mu)) < 1e-12):
            raise PoleError(f"Laplace transform evaluated at a pole: s={s!r}")
        vals = (self._w * self._mu / np.add.outer(ss, self._mu)).sum(axis=-1)
        return vals[()] if ss.ndim == 0 else vals

    def moment(self, i: int) -> float:
        if int(i) != i or i < 1:
            raise ValidationError(f"moment order must be a positive integer, got {i!r}")
        return float(math.factorial(int(i)) * np.sum(self._w * self._mu ** (-float(i))))

    def mean_function(self, a):
        aa = _as_float_array(a)
        if np.any(aa < 0):
            raise ValidationError("mean_function requires a >= 0")
        ma = np.multiply.outer(aa, self._mu)
        vals = (-np.expm1(-ma) / self._mu - np.multiply.outer(aa, np.ones_like(self._mu)) * np.exp(-ma)) @ self._w
        return _scalar_or_array(vals, a)

    def transform_polynomials(self):
        mu = self._mu
        den = np.poly(-mu)
        num = np.zeros(len(mu))
        for j in range(len(mu)):
            num = np.polyadd(num, self._w[j] * mu[j] * np.poly(-np.delete(mu, j)))
        return num, den


@dataclass(frozen=True)
class MatrixExponential(ClaimDistribution):
    """General law with survival ``beta e^{xB} 1``.

    Construction checks that ``beta`` sums to one, that every eigenvalue of
    ``B`` has negative real part, and that the density is nonnegative on a
    grid of ``grid_points`` points over ``[0, grid_span * mean]``.  Pass
    ``grid_points=0`` to skip the density check.
    """

    beta: np.ndarray
    B: np.ndarray
    grid_points: int = field(default=10_000, compare=False)
    grid_span: float = field(default=50.0, compare=False)

    def __post_init__(self):
        beta = np.atleast_1d(_as_float_array(self.beta)).copy()
        B = np.atleast_2d(_as_float_array(self.B)).copy()
        n = beta.size
        if B.shape != (n, n):
            raise ValidationError(f"B must be {n}x{n} to match beta, got {B.shape}")
        if abs(beta.sum() - 1.0) > 1e-10:
            raise ValidationError(f"beta must sum to 1 so that survival(0)=1, got {beta.sum()!r}")
        eig = np.linalg.eigvals(B)
        if np.any(eig.real >= 0):
            raise ValidationError("every eigenvalue of B must have negative real part")
        beta.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "B", B)
        if self.grid_points:
            xs = np.linspace(0.0, self.grid_span * self.mean, int(self.grid_points))
            dens = self.density(xs)
            if dens.min() < -1e-10 * max(1.0, np.abs(dens).max()):
                raise ValidationError(
                    f"density is negative (min {dens.min():.3e}) on the validation grid"
                )

    def __eq__(self, other):
        if not isinstance(other, MatrixExponential):
            return NotImplemented
        return np.array_equal(self.beta, other.beta) and np.array_equal(self.B, other.B)

    def __hash__(self):
        return hash((self.beta.tobytes(), self.B.tobytes()))

    def to_matrix_form(self):
        return np.array(self.beta), np.array(self.B)


def oscillating_density(decay: float = 1.0, phase: float = 2.0, frequency: float = 20.0) -> MatrixExponential:
    """Law with density ``u e^{-a x} (1 + cos(w x + phi))`` as a 3-phase ME law.

    ``u`` is the normalizing constant.  The representation uses the generator
    ``diag(-a, [[-a, w], [-w, -a]])`` so that ``e^{xB}`` carries the
    ``cos``/``sin`` modes explicitly.
    """
    a, phi, om = float(decay), float(phase), float(frequency)
    u = a * (a * a + om * om) / (a * a + om * om + a * a * math.cos(phi) - a * om * math.sin(phi))
    # survival = e^{-ax} (s0 + s1 cos wx + s2 sin wx)
    z = complex(math.cos(phi), math.sin(phi)) / complex(a, -om)
    s0, s1, s2 = u / a, u * z.real, -u * z.imag
    beta = np.array([s0, (s1 + s2) / 2.0, (s1 - s2) / 2.0])
    B = np.array([[-a, 0.0, 0.0], [0.0, -a, om], [0.0, -om, -a]])
    return MatrixExponential(beta, B)


@dataclass(frozen=True)
class RiskModel:
    """Cramér-Lundberg surplus ``x + c t - sum of claims (+ Brownian part)``.

    ``diffusion`` stores sigma**2 / 2, so the Laplace exponent reads
    ``diffusion s^2 + c s - lam (1 - f_hat(s))``.
    """

    c: float
    lam: float
    claims: ClaimDistribution
    diffusion: float = 0.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValidationError(f"premium rate c must be positive, got {self.c!r}")
        if not self.lam > 0:
            raise ValidationError(f"claim intensity lam must be positive, got {self.lam!r}")
        if self.diffusion < 0:
            raise ValidationError("diffusion coefficient must be nonnegative")
        if self.loading <= 0:
            warnings.warn(
                f"nonpositive safety loading theta={self.loading:.6g}; ruin is certain",
                RuntimeWarning,
                stacklevel=3,
            )

    @classmethod
    def from_loading(cls, claims: ClaimDistribution, lam: float, loading: float, diffusion: float = 0.0):
        return cls(c=lam * claims.mean * (1.0 + loading), lam=lam, claims=claims, diffusion=diffusion)

    @property
    def loading(self) -> float:
        """Safety loading ``theta = (c - lam m1) / (lam m1)``."""
        m1 = self.claims.mean
        return (self.c - self.lam * m1) / (self.lam * m1)

    @property
    def rho(self) -> float:
        return self.lam * self.claims.mean / self.c

    @property
    def drift(self) -> float:
        """Expected surplus growth per unit time ``c - lam m1``."""
        return self.c - self.lam * self.claims.mean
