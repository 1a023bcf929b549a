"""Exception hierarchy.

Validation problems derive from :class:`ValueError` so callers that only know
the standard library still catch them; numerical failures derive from
:class:`ArithmeticError`.
"""


class RiskScaleError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(RiskScaleError, ValueError):
    """Input parameters violate a documented precondition."""


class DomainError(ValidationError):
    """Argument outside the domain of a function (e.g. Lambert-W below -1/e)."""


class UnsupportedError(ValidationError):
    """The requested computation is not implemented for this model."""


class InvalidApproximationError(ValidationError):
    """An exponential surrogate has a nonpositive rate or premium."""


class NumericalError(RiskScaleError, ArithmeticError):
    """A numerical procedure could not deliver its accuracy contract."""


class PoleError(NumericalError):
    """Evaluation point coincides with a pole of a claim transform."""


class MultiplicityError(NumericalError):
    """Repeated roots in the Cramér-Lundberg equation.

    The exponential-sum representation assumes simple roots; perturbing the
    discount rate by about 1e-9 usually separates them.
    """


class DegeneratePolicyError(NumericalError):
    """The value formula of a policy has a nonpositive denominator."""


class InfeasibleError(NumericalError):
    """No parameter value satisfies the requested optimality equation."""
