"""Exception types shared across the package."""


class ThermomiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPrior(ThermomiError, ValueError):
    """An input distribution violates its construction contract."""


class NonPositiveProbability(InvalidPrior):
    """A discrete atom carries a probability outside (0, 1]."""


class DuplicateAtom(InvalidPrior):
    """Two discrete atoms share the same value."""


class TooFewAtoms(InvalidPrior):
    """A discrete prior needs at least two distinct atoms."""


class NotNormalized(InvalidPrior):
    """Atom probabilities are too far from summing to one to repair."""


class NonPositiveVariance(InvalidPrior):
    """A Gaussian prior needs a strictly positive, finite variance."""


class AtomNotFound(ThermomiError, LookupError):
    """A point mass was requested at a value that is not an atom."""


class BetaZero(ThermomiError, ValueError):
    """The requested quantity is undefined at zero inverse temperature."""


class NonFiniteIntegrand(ThermomiError, ArithmeticError):
    """An integrand returned NaN or infinity inside the integration window."""


class NonFiniteValue(ThermomiError, ArithmeticError):
    """A finite-difference stencil evaluated to NaN or infinity."""


class ToleranceNotReached(ThermomiError, RuntimeError):
    """Adaptive refinement hit its depth limit above the error target."""


class NonEquiprobablePrior(ThermomiError, ValueError):
    """The classical entropy route requires a uniform discrete prior."""


class NonEquiprobablePriorWarning(UserWarning):
    """The classical route was asked to run where it is known to be wrong."""


class ConfigError(ThermomiError, ValueError):
    """A run configuration field failed validation."""
