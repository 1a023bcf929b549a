"""Scale functions, exponential surrogates and dividend/capital-injection policies
for Cramér-Lundberg risk processes with rational-transform claims."""

from .approx import ApproxKind, fit_exponential_model, ruin_probability
from .claims import (
    ClaimDistribution,
    Exponential,
    Hyperexponential,
    MatrixExponential,
    RiskModel,
    oscillating_density,
)
from .config import ModelConfig, load_config
from .errors import (
    DegeneratePolicyError,
    DomainError,
    InfeasibleError,
    InvalidApproximationError,
    MultiplicityError,
    NumericalError,
    PoleError,
    RiskScaleError,
    UnsupportedError,
    ValidationError,
)
from .estimators import DividendOptimizer, ScaleFunction
from .lambertw import LambertBranch, lambert_w, lambert_w0, lambert_w0_exp, lambert_wm1
from .policy import Method, PolicyParams, PolicySolution, Regime, optimize
from .scale import (
    ScaleBasis,
    b_bar,
    build_scale_basis,
    cl_roots,
    de_finetti_barrier,
    initial_values,
    laplace_exponent,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxKind",
    "ClaimDistribution",
    "DegeneratePolicyError",
    "DividendOptimizer",
    "DomainError",
    "Exponential",
    "Hyperexponential",
    "InfeasibleError",
    "InvalidApproximationError",
    "LambertBranch",
    "MatrixExponential",
    "Method",
    "ModelConfig",
    "MultiplicityError",
    "NumericalError",
    "PoleError",
    "PolicyParams",
    "PolicySolution",
    "Regime",
    "RiskModel",
    "RiskScaleError",
    "ScaleBasis",
    "ScaleFunction",
    "UnsupportedError",
    "ValidationError",
    "b_bar",
    "build_scale_basis",
    "cl_roots",
    "de_finetti_barrier",
    "fit_exponential_model",
    "initial_values",
    "lambert_w",
    "lambert_w0",
    "lambert_w0_exp",
    "lambert_wm1",
    "laplace_exponent",
    "load_config",
    "optimize",
    "oscillating_density",
    "ruin_probability",
]
