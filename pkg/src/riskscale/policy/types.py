"""Parameter and result records for (-a, 0, b) policies."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from ..claims import RiskModel
from ..errors import UnsupportedError, ValidationError

__all__ = ["Candidate", "Method", "PolicyParams", "PolicySolution", "Regime", "check_params"]


class Regime(enum.Enum):
    POSITIVE_BARRIER = "positive-barrier"
    ZERO_BARRIER = "zero-barrier"


class Method(enum.Enum):
    EXACT_EXPONENTIAL = "exact-exponential"
    MATRIX_EXACT = "matrix"
    EXPO_PURE = "expo-pure"
    EXPO_CI = "expo-ci"


@dataclass(frozen=True)
class PolicyParams:
    """Discount rate ``q``, proportional injection cost ``k`` and bankruptcy penalty ``P``."""

    q: float
    k: float
    P: float = 0.0

    def __post_init__(self):
        if not (self.q > 0 and math.isfinite(self.q)):
            raise ValidationError(f"discount rate q must be positive, got {self.q!r}")
        if not self.k >= 1:
            raise ValidationError(f"injection cost k must be >= 1, got {self.k!r}")
        if not math.isfinite(self.P):
            raise ValidationError("penalty P must be finite")

    def effective_premium(self, model: RiskModel) -> float:
        """``c + q P``: premium augmented by the penalty's interest."""
        return model.c + self.q * self.P


def check_params(model: RiskModel, params: PolicyParams) -> None:
    """Preconditions shared by every policy computation."""
    if model.diffusion != 0.0:
        raise UnsupportedError("policy computations require diffusion = 0")
    if not params.P > -model.c / params.q:
        raise ValidationError(
            f"penalty P={params.P!r} must exceed -c/q={-model.c / params.q:.6g}"
        )


class Candidate(NamedTuple):
    a: float
    b: float
    J0: float


@dataclass(frozen=True)
class PolicySolution:
    """Optimal ``(a*, b*)``, value at zero and every candidate that was compared."""

    a_star: float
    b_star: float
    J0: float
    regime: Regime
    candidates: tuple[Candidate, ...]
    method: Method
    params: PolicyParams
    ingredients: Any = field(default=None, repr=False, compare=False)
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def smooth_fit_residual(self) -> float:
        return abs(self.J0 - (self.params.k * self.a_star - self.params.P))
