"""Exception hierarchy for the toolkit.

Every numerical failure mode is a distinct class so that check suites can
resample on PoleHit while letting genuine misconfigurations propagate.
"""


class WkitError(Exception):
    """Base class for all toolkit errors."""


class ModulusOutOfRange(WkitError):
    """A q-series modulus does not satisfy |p| < 1 (with margin)."""


class TruncationBudgetExceeded(WkitError):
    """A series/product hit max_terms before meeting the tail bound."""


class ZeroArgument(WkitError):
    """An argument that must be nonzero was zero."""


class NonconvergentTau(WkitError):
    """Theta series requested with Im(tau) too small or negative."""


class PoleHit(WkitError):
    """Evaluation point collides with a pole or zero denominator."""


class OutsideConvergenceAnnulus(WkitError):
    """Mode-expansion argument lies outside |q| < |x| < 1/|q|."""


class BranchDomainViolation(WkitError):
    """Abelianity branch parameters violate the branch's stated domain."""


class NoSolution(WkitError):
    """Surface condition has no solution for the requested (m, n, c)."""


class SingularLax(WkitError):
    """A Lax factor is numerically singular (condition number too large)."""


class LabelMismatch(WkitError):
    """Tensor operands have incompatible space labels."""


class DimensionGuardExceeded(WkitError):
    """A dense product would exceed the configured dimension guard."""


class ConfigError(WkitError):
    """Run configuration failed schema validation."""
