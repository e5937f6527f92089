"""Exception hierarchy.

Validation errors signal a rejected input (CLI exit code 2); numerical
errors signal a computation that could not meet its accuracy contract
(CLI exit code 3).
"""


class SpinChannelError(Exception):
    pass


class ValidationError(SpinChannelError, ValueError):
    pass


class NumericalError(SpinChannelError, ArithmeticError):
    pass


class InvalidParams(ValidationError):
    """A design-request parameter violates a family precondition."""


class InvalidRange(ValidationError):
    """A time or sample-count argument is out of range."""


class DuplicateEigenvalue(ValidationError):
    """Parameter choices produce a repeated target eigenvalue."""


class AsymmetricInput(ValidationError):
    """A coupling sequence expected to be mirror symmetric is not."""


class NotAntisymmetric(ValidationError):
    """A target spectrum is not symmetric under E -> -E."""


class InvalidState(ValidationError):
    """A density matrix violates Hermiticity, positivity or unit trace."""


class ConvergenceFailure(NumericalError):
    """The eigensolver could not meet its residual/orthogonality bounds."""


class ReconstructionFailure(NumericalError):
    """Coupling reconstruction broke down (inadmissible or near-degenerate
    target spectrum)."""
