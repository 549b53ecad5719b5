# twistloop/errors.py


class TwistLoopError(Exception):
    """Base class for every error raised by the toolkit."""


class ScalarError(TwistLoopError):
    """Bad scalar arithmetic: mismatched order r, division by zero, non-unit inverse."""


class UnsupportedCaseError(TwistLoopError):
    """Requested root-system type, rank or automorphism order is not supported."""


class RootError(TwistLoopError):
    """A vector is not a root, or a folded vector is not in pi(Delta)."""


class SignAdjustmentError(TwistLoopError):
    """The k_alpha sign normalization could not be reached."""


class OmegaError(TwistLoopError):
    """An (a', n) pair outside the real affine root set."""


class PayloadError(TwistLoopError):
    """A generator payload does not match its root type or violates its invariant."""


class ModelError(TwistLoopError):
    """A matrix model was asked for something it cannot represent."""


class DecompositionError(TwistLoopError):
    """SU3 reduction hit a violated precondition or overran its iteration cap."""


class ConfigError(TwistLoopError):
    """Configuration file or CLI overrides failed validation."""
