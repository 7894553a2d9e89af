"""Exception and warning types shared across the package."""


class RingError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(RingError, ValueError):
    """A parameter is outside its documented domain."""


class CutoffInsufficientError(InvalidParameterError):
    """The angular-momentum cutoff cannot represent the requested state."""


class StepSizeError(RingError):
    """A split step would advance some phase by more than the stability bound."""


class ConvergenceError(RingError):
    """An iterative solve exhausted its step budget before converging."""


class RevivalNotFoundError(RingError):
    """No revival maximum above the detection floor inside the search window."""


class IndeterminateImbalanceError(RingError):
    """Both readout wedges hold negligible population; the imbalance is undefined."""


class CentroidUndefinedError(RingError):
    """The angular density has no usable first circular moment."""


class NotApplicableError(RingError):
    """The requested quantity does not exist for this scenario (e.g. zero charge)."""


class ConfigError(RingError):
    """A scenario configuration is incomplete, unknown, or inconsistent."""


class PerturbationValidityWarning(UserWarning):
    """A perturbative formula is being evaluated outside its trust region."""


class AttractiveCouplingWarning(UserWarning):
    """The mean-field coupling is attractive; collapse physics is not modelled."""
